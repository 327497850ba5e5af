#include <doctest.h>

#include <cmath>
#include <numbers>

#include "astroinfer/filaments/detect.hpp"

using namespace astroinfer;
using namespace astroinfer::filaments;

namespace {

const Box kWindow{{0, 0, 0}, {10, 10, 10}};

void add_line(GalaxyCatalog &cat, const Vec3 &a, const Vec3 &b, int n, double jitter, Rng &rng) {
  for (int k = 0; k < n; ++k) {
    Vec3 p = a + ((k + 0.5) / n) * (b - a);
    for (double &x : p) x += jitter * rng.normal();
    cat.positions.push_back(p);
  }
}

void add_noise(GalaxyCatalog &cat, int n, Rng &rng) {
  for (int k = 0; k < n; ++k)
    cat.positions.push_back({rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)});
}

FilamentParams detection_params() {
  FilamentParams p;
  p.radius = 0.15;
  p.mu = 2.0;
  p.balance = 0.5;
  return p;
}

double worst_angle(const MarkedConfiguration &c, const Vec3 &axis) {
  double worst = 0.0;
  for (const auto &s : c.segments) worst = std::max(worst, axis_angle(s.direction(), axis));
  return worst * 180.0 / std::numbers::pi;
}

} // namespace

TEST_CASE("planted two-segment filament is recovered") {
  Rng data(101);
  GalaxyCatalog cat{{}, kWindow};
  // Length 3.6: exactly two segments of the longest mark fit end to end.
  const Vec3 a{3.2, 5.0, 5.0}, b{6.8, 5.0, 5.0};
  add_line(cat, a, b, 50, 0.02, data);
  add_noise(cat, 50, data);
  Rng rng(7);
  const auto d = detect(cat, detection_params(), AnnealingSchedule{2.0, 0.97, 10000, 0.01}, MoveMix{}, rng);
  CHECK(d.stats.n_total == 2);
  CHECK(d.stats.n_one_connected == 2);
  CHECK(d.stats.n_two_connected == 0);
  CHECK(worst_angle(d.best, b - a) < 10.0);
  CHECK(d.energy < 0.0);
  CHECK(d.energy == doctest::Approx(total_energy(d.best, detection_params().theta(), cat,
                                                 make_energy_model(detection_params()))));
}

TEST_CASE("pure noise gives an empty or near-empty configuration") {
  Rng data(102);
  GalaxyCatalog cat{{}, kWindow};
  add_noise(cat, 200, data);
  Rng rng(8);
  const auto d = detect(cat, detection_params(), AnnealingSchedule{2.0, 0.95, 2000, 0.01}, MoveMix{}, rng);
  CHECK(d.stats.n_total <= 2);
}

TEST_CASE("planted cross gives several segments with a 2-connected one") {
  Rng data(103);
  GalaxyCatalog cat{{}, kWindow};
  add_line(cat, {1.5, 5.0, 5.0}, {8.5, 5.0, 5.0}, 80, 0.02, data);
  add_line(cat, {5.0, 1.5, 5.0}, {5.0, 8.5, 5.0}, 80, 0.02, data);
  add_noise(cat, 100, data);
  Rng rng(9);
  const auto d = detect(cat, detection_params(), AnnealingSchedule{2.0, 0.97, 10000, 0.01}, MoveMix{}, rng);
  CHECK(d.stats.n_total >= 4);
  CHECK(d.stats.n_two_connected >= 1);
}

TEST_CASE("detection is reproducible for a fixed seed") {
  Rng data(104);
  GalaxyCatalog cat{{}, kWindow};
  add_line(cat, {3, 3, 3}, {6, 6, 6}, 40, 0.02, data);
  add_noise(cat, 40, data);
  const AnnealingSchedule s{1.0, 0.8, 500, 0.05};
  Rng r1(11), r2(11), r3(12);
  const auto d1 = detect(cat, detection_params(), s, MoveMix{}, r1, {10});
  const auto d2 = detect(cat, detection_params(), s, MoveMix{}, r2, {10});
  const auto d3 = detect(cat, detection_params(), s, MoveMix{}, r3, {10});
  CHECK(d1.best == d2.best);
  CHECK(d1.run.chain == d2.run.chain);
  CHECK_FALSE(d1.run.chain == d3.run.chain);
}

TEST_CASE("detect rejects a catalog with points outside the window") {
  GalaxyCatalog cat{{{11.0, 0.0, 0.0}}, kWindow};
  Rng rng(1);
  CHECK_THROWS_AS((void)detect(cat, FilamentParams{}, AnnealingSchedule{}, MoveMix{}, rng), InvalidInput);
}
