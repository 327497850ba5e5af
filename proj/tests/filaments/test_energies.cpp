#include <doctest.h>

#include <cmath>
#include <vector>

#include "astroinfer/filaments/model.hpp"

using namespace astroinfer;
using namespace astroinfer::filaments;

namespace {

Segment along_x(double cx, double half = 0.5) { return Segment::along({cx, 5.0, 5.0}, {1, 0, 0}, half, 0.2); }
MarkedConfiguration config(std::vector<Segment> s) { return {Box{{0, 0, 0}, {10, 10, 10}}, std::move(s)}; }

InteractionParams interaction(const FilamentParams &p = {}) { return InteractionParams::from(p.theta(), p); }

} // namespace

TEST_CASE("chain energy with rewards (-1, 0.5, 1.5)") {
  FilamentParams p;
  p.w0 = -1.0;
  p.w1 = 0.5;
  p.w2 = 1.5;
  const auto c = config({along_x(4.0), along_x(5.0), along_x(6.0)});
  CHECK(interaction_energy(c, interaction(p)) == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(interaction_energy(config({along_x(5.0)}), interaction(p)) == doctest::Approx(1.0));
  CHECK(interaction_energy(config({}), interaction(p)) == 0.0);
}

TEST_CASE("hard-core violations give +inf") {
  const auto p = interaction();
  // Centers closer than the hard-core distance.
  const auto close = config({along_x(5.0), Segment::along({5.1, 5.0, 5.1}, {0, 0, 1}, 0.5, 0.2)});
  CHECK(is_hard_core(interaction_energy(close, p)));
  // Touching at an endpoint but at a right angle.
  const auto bent = config({along_x(4.5), Segment::along({5.0, 5.5, 5.0}, {0, 1, 0}, 0.5, 0.2)});
  CHECK(is_hard_core(interaction_energy(bent, p)));
  // Crossing cylinders without an endpoint contact.
  const auto crossing = config({along_x(5.0, 1.0), Segment::along({5.4, 5.5, 5.0}, {0, 1, 0}, 1.0, 0.2)});
  CHECK(is_hard_core(interaction_energy(crossing, p)));
  // Parallel neighbours closer than two radii.
  const auto parallel = config({along_x(5.0), Segment::along({5.3, 5.3, 5.0}, {1, 0, 0}, 0.5, 0.2)});
  CHECK(is_hard_core(interaction_energy(parallel, p)));

  FilamentParams relaxed;
  relaxed.forbid_misaligned_contacts = false;
  relaxed.forbid_overlap = false;
  CHECK(interaction_energy(bent, interaction(relaxed)) == doctest::Approx(2.0));
  CHECK(is_hard_core(interaction_energy(close, interaction(relaxed))));
}

TEST_CASE("axis distance") {
  CHECK(axis_distance(along_x(5.0), along_x(5.0)) == 0.0);
  CHECK(axis_distance(along_x(3.0), along_x(6.0)) == doctest::Approx(2.0));
  const auto up = Segment::along({5.0, 6.0, 5.0}, {0, 0, 1}, 0.5, 0.2);
  CHECK(axis_distance(along_x(5.0), up) == doctest::Approx(1.0));
  const auto skew = Segment::along({5.0, 5.0, 6.0}, {0, 1, 0}, 0.5, 0.2);
  CHECK(axis_distance(along_x(5.0), skew) == doctest::Approx(1.0));
  CHECK(axis_distance(skew, along_x(5.0)) == doctest::Approx(1.0));
  const auto shifted = Segment::along({5.0, 5.0, 5.3}, {1, 0, 0}, 0.5, 0.2);
  CHECK(axis_distance(along_x(5.0), shifted) == doctest::Approx(0.3));
}

TEST_CASE("data energy of a segment over a planted line with an empty shell") {
  GalaxyCatalog cat{{}, Box{{0, 0, 0}, {10, 10, 10}}};
  for (int k = 0; k < 20; ++k) cat.positions.push_back({4.55 + 0.045 * k, 5.0, 5.0});
  const auto s = along_x(5.0);
  const auto counts = count_galaxies(s, cat);
  CHECK(counts.inner == 20);
  CHECK(counts.outer == 20);
  const DataParams p{0.0, 1.0, 2.0};
  CHECK(segment_data_energy(counts, p) == doctest::Approx(-std::log(21.0)).epsilon(1e-14));
  CHECK(data_energy(config({s}), cat, p) == doctest::Approx(-std::log(21.0)).epsilon(1e-14));
}

TEST_CASE("an empty cylinder pays the penalty only") {
  const GalaxyCatalog cat{{}, Box{{0, 0, 0}, {10, 10, 10}}};
  const DataParams p{0.0, 1.5, 2.0};
  CHECK(segment_data_energy(count_galaxies(along_x(5.0), cat), p) == 2.0);
}

TEST_CASE("a segment no denser than its shell is penalized") {
  GalaxyCatalog cat{{}, Box{{0, 0, 0}, {10, 10, 10}}};
  cat.positions = {{5.0, 5.1, 5.0}, {5.0, 5.3, 5.0}, {5.2, 5.0, 5.35}};
  const auto c = count_galaxies(along_x(5.0), cat);
  CHECK(c.inner == 1);
  CHECK(c.outer == 3);
  CHECK(segment_data_energy(c, DataParams{0.0, 1.5, 2.0}) == doctest::Approx(2.0 - std::log(2.0)));
  CHECK(segment_data_energy(c, DataParams{0.0, 0.4, 2.0}) == doctest::Approx(-std::log(2.0)));
  CHECK(segment_data_energy(c, DataParams{2.0, 0.4, 2.0}) == doctest::Approx(std::log(1.5)));
}

TEST_CASE("energies are invariant under relabeling and joint translation") {
  GalaxyCatalog cat{{}, Box{{0, 0, 0}, {10, 10, 10}}};
  Rng rng(5);
  for (int k = 0; k < 300; ++k) cat.positions.push_back({rng.uniform(3, 7), rng.uniform(3, 7), rng.uniform(3, 7)});
  const auto c = config({along_x(4.0), along_x(5.0), along_x(6.0), Segment::along({5, 7, 5}, {0, 1, 1}, 0.7, 0.2)});
  const auto p = interaction();
  const DataParams dp{1.0, 1.5, 2.0};
  const double ui = interaction_energy(c, p);
  const double ud = data_energy(c, cat, dp);

  auto reversed = c;
  std::reverse(reversed.segments.begin(), reversed.segments.end());
  CHECK(interaction_energy(reversed, p) == doctest::Approx(ui).epsilon(1e-14));
  CHECK(data_energy(reversed, cat, dp) == doctest::Approx(ud).epsilon(1e-14));

  const Vec3 shift{0.5, -0.25, 1.0};
  auto moved = c;
  for (auto &s : moved.segments) s.center = s.center + shift;
  auto moved_cat = cat;
  for (auto &q : moved_cat.positions) q = q + shift;
  CHECK(interaction_energy(moved, p) == doctest::Approx(ui).epsilon(1e-12));
  CHECK(data_energy(moved, moved_cat, dp) == doctest::Approx(ud).epsilon(1e-12));
}

TEST_CASE("total energy through the generic model") {
  FilamentParams fp;
  fp.mu = 0.0;
  const auto model = make_energy_model(fp);
  const GalaxyCatalog cat{{}, Box{{0, 0, 0}, {10, 10, 10}}};
  const auto theta = fp.theta();
  const auto c = config({along_x(4.0), along_x(5.0), along_x(6.0)});
  CHECK(total_energy(c, theta, cat, model) == doctest::Approx(-2.5 + 3 * fp.penalty));

  auto bad = c;
  bad.segments[0].half_length = -1.0;
  CHECK_THROWS_AS((void)total_energy(bad, theta, cat, model), InvalidInput);
  auto outside = c;
  outside.segments[0].center = {11.0, 5.0, 5.0};
  CHECK_THROWS_AS((void)total_energy(outside, theta, cat, model), InvalidInput);
}

TEST_CASE("parameter validation") {
  FilamentParams p;
  CHECK_NOTHROW(p.validate());
  p.radius = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {};
  p.half_length_max = 0.1;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {};
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {};
  CHECK(p.epsilon() == 0.25);
  CHECK(p.hard_core() == 0.25);
}

TEST_CASE("birth proposals stay in the window and the mark ranges") {
  const FilamentParams fp;
  const Box w{{0, 0, 0}, {2, 3, 4}};
  const auto prop = make_proposals(fp, w);
  CHECK(prop.reference_mass == doctest::Approx(fp.intensity * 24.0));
  Rng rng(9);
  double mean_cos = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const Segment s = prop.birth(rng);
    REQUIRE(w.contains(s.center));
    REQUIRE(s.half_length >= fp.half_length_min);
    REQUIRE(s.half_length <= fp.half_length_max);
    mean_cos += s.direction()[2];
    const auto moved = prop.change(s, rng);
    if (moved) {
      REQUIRE(w.contains(moved->center));
      REQUIRE(moved->half_length >= fp.half_length_min);
      REQUIRE(moved->half_length <= fp.half_length_max);
    }
  }
  // Isotropic axes: E[cos polar] = 0 with SD 1/sqrt(3 n).
  CHECK(std::abs(mean_cos / 20000) < 4.0 / std::sqrt(3.0 * 20000));
}
