#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/core/rng.hpp"

using namespace astroinfer;

namespace {

// Toy pattern: a list of objects each carrying its own energy; the
// interaction energy is their sum, the data energy a per-object constant
// times the count plus an offset stored in the data set.
struct Toy {
  std::vector<double> object_energies;
};
struct ToyData {
  double offset = 0.0;
};

EnergyModel<Toy, ToyData> toy_model() {
  EnergyModel<Toy, ToyData> m;
  m.interaction = [](const Toy &x, const ParameterVector &theta) {
    double u = 0.0;
    for (double e : x.object_energies) u += theta.at("scale") * e;
    return u;
  };
  m.data = [](const Toy &x, const ParameterVector &, const ToyData &d) {
    return x.object_energies.empty() ? 0.0 : d.offset;
  };
  m.validate = [](const Toy &x) {
    for (double e : x.object_energies)
      if (std::isnan(e)) throw InvalidInput("NaN object");
  };
  return m;
}

ParameterVector unit_scale() { return ParameterVector({"scale"}, {1.0}, {{0.0, 10.0}}); }

} // namespace

TEST_CASE("total_energy of the empty configuration is zero") {
  CHECK(total_energy(Toy{}, unit_scale(), ToyData{0.0}, toy_model()) == 0.0);
}

TEST_CASE("total_energy sums interaction and data terms") {
  // 1.0 + 2.0 + 0.5 + 0.25 by hand.
  CHECK(total_energy(Toy{{1.0, 2.0, 0.5}}, unit_scale(), ToyData{0.25}, toy_model()) ==
        doctest::Approx(3.75).epsilon(1e-15));
}

TEST_CASE("hard-core interaction short-circuits to +inf") {
  auto m = toy_model();
  bool data_called = false;
  m.interaction = [](const Toy &, const ParameterVector &) { return kHardCore; };
  m.data = [&](const Toy &, const ParameterVector &, const ToyData &) {
    data_called = true;
    return 1.0;
  };
  CHECK(is_hard_core(total_energy(Toy{{1.0}}, unit_scale(), ToyData{}, m)));
  CHECK_FALSE(data_called);
}

TEST_CASE("invalid states and parameters are rejected") {
  CHECK_THROWS_AS(total_energy(Toy{{std::nan("")}}, unit_scale(), ToyData{}, toy_model()),
                  InvalidInput);
  auto m = toy_model();
  m.data = [](const Toy &, const ParameterVector &, const ToyData &) { return std::nan(""); };
  CHECK_THROWS_AS(total_energy(Toy{{1.0}}, unit_scale(), ToyData{}, m), NumericalError);
}

TEST_CASE("annealing_target scales by inverse temperature") {
  auto m = toy_model();
  const Toy x{{1.0, 2.0, 0.5}};
  CHECK(annealing_target(x, unit_scale(), ToyData{0.25}, m, 1.0) == doctest::Approx(3.75));
  CHECK(annealing_target(x, unit_scale(), ToyData{0.25}, m, 0.5) == doctest::Approx(7.5));

  m.log_prior = [](const ParameterVector &) { return -1.0; };
  const Toy y{{2.0}};
  // (2.0 + 1.0) / 2
  CHECK(annealing_target(y, unit_scale(), ToyData{0.0}, m, 2.0) == doctest::Approx(1.5));

  CHECK_THROWS_AS(annealing_target(x, unit_scale(), ToyData{}, m, 0.0), InvalidInput);
  CHECK_THROWS_AS(annealing_target(x, unit_scale(), ToyData{}, m, -1.0), InvalidInput);
}

TEST_CASE("energy differences are log density ratios of the explicit toy density") {
  // Explicit unnormalized density of the toy model: prod_k exp(-s e_k) * exp(-offset).
  auto density = [](const Toy &x, double s, double offset) {
    double p = x.object_energies.empty() ? 1.0 : std::exp(-offset);
    for (double e : x.object_energies) p *= std::exp(-s * e);
    return p;
  };
  Rng rng(11);
  const auto m = toy_model();
  for (int trial = 0; trial < 200; ++trial) {
    Toy a, b;
    for (auto n = rng.below(6); n > 0; --n) a.object_energies.push_back(rng.uniform(-2.0, 2.0));
    for (auto n = rng.below(6); n > 0; --n) b.object_energies.push_back(rng.uniform(-2.0, 2.0));
    const double s = rng.uniform(0.1, 3.0);
    const ToyData d{rng.uniform(-1.0, 1.0)};
    const auto theta = ParameterVector({"scale"}, {s}, {{0.0, 10.0}});
    const double du = total_energy(a, theta, d, m) - total_energy(b, theta, d, m);
    CHECK(du == doctest::Approx(std::log(density(b, s, d.offset) / density(a, s, d.offset))).epsilon(1e-9));
  }
}

TEST_CASE("annealing target preserves the argmin over states and decreases with temperature") {
  const auto m = toy_model();
  std::vector<Toy> states = {Toy{{0.5}}, Toy{{1.5, 0.2}}, Toy{{0.1, 0.1, 0.1}}, Toy{{3.0}}};
  for (double t : {0.1, 0.5, 1.0, 4.0}) {
    std::vector<double> values;
    for (const auto &s : states) values.push_back(annealing_target(s, unit_scale(), ToyData{0.1}, m, t));
    CHECK(std::min_element(values.begin(), values.end()) - values.begin() == 2);
  }
  const Toy x{{1.0}};
  double previous = std::numeric_limits<double>::infinity();
  for (double t : {0.1, 0.2, 0.5, 1.0, 2.0, 8.0}) {
    const double v = annealing_target(x, unit_scale(), ToyData{0.0}, m, t);
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("total_energy is invariant under permutation of objects") {
  Rng rng(5);
  const auto m = toy_model();
  for (int trial = 0; trial < 50; ++trial) {
    Toy x;
    for (int k = 0; k < 6; ++k) x.object_energies.push_back(rng.uniform(-1.0, 1.0));
    const double u = total_energy(x, unit_scale(), ToyData{0.3}, m);
    std::sort(x.object_energies.begin(), x.object_energies.end());
    do {
      CHECK(total_energy(x, unit_scale(), ToyData{0.3}, m) == doctest::Approx(u).epsilon(1e-14));
    } while (std::next_permutation(x.object_energies.begin(), x.object_energies.begin() + 3));
  }
}

TEST_CASE("annealing schedule levels") {
  AnnealingSchedule s{1.0, 0.5, 10, 1.0};
  CHECK(s.levels() == 1);
  s.final_temperature = 0.125;
  CHECK(s.levels() == 4);
  CHECK(s.temperature(3) == doctest::Approx(0.125));
  CHECK(s.total_steps() == 40);

  CHECK_THROWS_AS((AnnealingSchedule{1.0, 1.0, 10, 0.5}.validate()), InvalidInput);
  CHECK_THROWS_AS((AnnealingSchedule{1.0, 0.9, 0, 0.5}.validate()), InvalidInput);
  CHECK_THROWS_AS((AnnealingSchedule{1.0, 0.9, 10, 2.0}.validate()), InvalidInput);

  const auto d = AnnealingSchedule::defaults(3);
  CHECK(d.cooling_factor == 0.95);
  CHECK(d.steps_per_level == 100);
  CHECK(AnnealingSchedule::defaults(40).steps_per_level == 400);
}
