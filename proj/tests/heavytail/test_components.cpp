#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/heavytail/coverage.hpp"
#include "oracles.hpp"

using namespace astroinfer;
using namespace astroinfer::heavytail;

namespace {

TailMixture heavy_reference() {
  return TailMixture{TranslatedPareto{0.5, 1.5, -1.0, TailSide::lower}, ScaledBeta{2.0, 2.0, -1.0, 1.0},
                     TranslatedPareto{0.5, 1.5, 1.0, TailSide::upper}, -1.0, 1.0, {0.05, 0.9, 0.05}};
}

TailMixture light_reference() {
  return TailMixture{ScaledBeta{1.5, 0.8, -2.0, -1.0}, ScaledBeta{2.0, 3.0, -1.0, 1.0},
                     ScaledBeta{0.7, 2.5, 1.0, 1.5}, -1.0, 1.0, {0.1, 0.8, 0.1}};
}

} // namespace

TEST_CASE("scaled Beta(2, 2) against closed forms") {
  const ScaledBeta b{2.0, 2.0, -1.0, 3.0};
  for (double x : {-1.0, -0.5, 0.3, 1.0, 2.9, 3.0}) {
    const double u = (x + 1.0) / 4.0;
    CHECK(b.pdf(x) == doctest::Approx(6.0 * u * (1 - u) / 4.0).epsilon(1e-13));
    CHECK(b.cdf(x) == doctest::Approx(3 * u * u - 2 * u * u * u).epsilon(1e-13));
  }
  CHECK(b.pdf(-1.5) == 0.0);
  CHECK(b.cdf(-1.5) == 0.0);
  CHECK(b.cdf(4.0) == 1.0);
  for (double u : {0.01, 0.3, 0.5, 0.77, 0.999}) CHECK(b.cdf(b.quantile(u)) == doctest::Approx(u).epsilon(1e-12));
  CHECK(b.mean() == doctest::Approx(1.0));
  CHECK_THROWS_AS(ScaledBeta({0.0, 1.0, 0.0, 1.0}).validate(), InvalidInput);
  CHECK_THROWS_AS(ScaledBeta({1.0, 1.0, 1.0, 1.0}).validate(), InvalidInput);
}

TEST_CASE("scaled Beta density one ulp inside either end") {
  const ScaledBeta b{1.4, 0.68, -0.7198, 0.0208};
  const double x = std::nextafter(b.hi, b.lo);
  // (hi - x) / w against the textbook density
  const double v = (b.hi - x) / (b.hi - b.lo);
  const double expected = std::pow(v, b.beta - 1.0) * std::tgamma(b.alpha + b.beta) /
                          (std::tgamma(b.alpha) * std::tgamma(b.beta) * (b.hi - b.lo));
  CHECK(std::isfinite(b.pdf(x)));
  CHECK(b.pdf(x) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(std::isinf(b.pdf(b.hi)));
  const ScaledBeta c{0.5, 3.0, 2.0, 7.0};
  CHECK(std::isfinite(c.pdf(std::nextafter(c.lo, c.hi))));
  CHECK(std::isinf(c.pdf(c.lo)));
}

TEST_CASE("translated Pareto on both sides") {
  const TranslatedPareto up{2.0, 1.5, 1.0, TailSide::upper};
  CHECK(up.cdf(1.0) == 0.0);
  CHECK(1.0 - up.cdf(3.0) == doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-14));
  CHECK(up.pdf(3.0) == doctest::Approx(1.5 / 2.0 * std::pow(0.5, 2.5)).epsilon(1e-14));
  CHECK(up.pdf(0.5) == 0.0);
  const TranslatedPareto down{2.0, 1.5, -1.0, TailSide::lower};
  CHECK(down.cdf(-3.0) == doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-14));
  CHECK(down.pdf(-3.0) == doctest::Approx(up.pdf(3.0)).epsilon(1e-14));
  CHECK(down.cdf(-0.5) == 1.0);
  for (double u : {1e-9, 0.2, 0.5, 0.9, 1 - 1e-9}) {
    CHECK(up.cdf(up.quantile(u)) == doctest::Approx(u).epsilon(1e-10));
    CHECK(down.cdf(down.quantile(u)) == doctest::Approx(u).epsilon(1e-10));
  }
  CHECK(std::isinf(TranslatedPareto{1.0, 0.9, 0.0, TailSide::upper}.mean()));
  CHECK(TranslatedPareto{1.0, 3.0, 0.0, TailSide::upper}.mean() == doctest::Approx(0.5));
}

TEST_CASE("mixture validation") {
  CHECK_NOTHROW(heavy_reference().validate());
  auto gap = heavy_reference();
  gap.split_hi = 1.5;
  CHECK_THROWS_AS(gap.validate(), InvalidInput);
  auto weights = heavy_reference();
  weights.weights = {0.1, 0.9, 0.1};
  CHECK_THROWS_AS(weights.validate(), InvalidInput);
  auto negative = heavy_reference();
  negative.weights = {-0.05, 1.0, 0.05};
  CHECK_THROWS_AS(negative.validate(), InvalidInput);
  auto wrong_side = heavy_reference();
  std::get<TranslatedPareto>(wrong_side.right).side = TailSide::lower;
  CHECK_THROWS_AS(wrong_side.validate(), InvalidInput);
  CHECK(heavy_reference().regime() == Regime::heavy);
  CHECK(light_reference().regime() == Regime::light);
}

TEST_CASE("mixture densities integrate to one") {
  CHECK(std::abs(oracle::total_mass(heavy_reference()) - 1.0) < 1e-6);
  CHECK(std::abs(oracle::total_mass(light_reference()) - 1.0) < 1e-6);
  const auto m = heavy_reference();
  CHECK(m.cdf(-1.0) == doctest::Approx(0.05));
  CHECK(m.cdf(1.0) == doctest::Approx(0.95));
  CHECK(m.cdf(0.0) == doctest::Approx(0.5));
  for (double x = -20.0; x <= 20.0; x += 0.37) CHECK(m.pdf(x) >= 0.0);
}

TEST_CASE("simulation: empty draw, uniform law and quadrature mean") {
  Rng rng(21);
  CHECK(simulate(heavy_reference(), 0, rng).empty());

  const TailMixture uniform{ScaledBeta{1, 1, -1, 0}, ScaledBeta{1.0, 1.0, 0.0, 1.0}, ScaledBeta{1, 1, 1, 2}, 0.0, 1.0,
                            {0.0, 1.0, 0.0}};
  auto xs = simulate(uniform, 10000, rng);
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double n = double(xs.size());
    d = std::max({d, std::abs((i + 1) / n - xs[i]), std::abs(xs[i] - i / n)});
  }
  CHECK(d < 1.628 / std::sqrt(double(xs.size())));

  const auto light = light_reference();
  const auto draws = simulate(light, 1000000, rng);
  double mean = 0.0, sq = 0.0;
  for (double x : draws) mean += x;
  mean /= double(draws.size());
  for (double x : draws) sq += (x - mean) * (x - mean);
  const double se = std::sqrt(sq / double(draws.size() - 1) / double(draws.size()));
  auto id = [](double x) { return x; };
  const double quad = light.weights[0] * oracle::integrate_piece(light.left, id) +
                      light.weights[1] * oracle::integrate_piece(light.center, id) +
                      light.weights[2] * oracle::integrate_piece(light.right, id);
  CHECK(std::abs(mean - quad) < 3.0 * se);
  CHECK(light.mean() == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("affine image of a mixture") {
  const auto m = heavy_reference();
  const auto t = m.affine(2.5, 4.0);
  CHECK_NOTHROW(t.validate());
  for (double x : {-3.0, -1.0, -0.2, 0.5, 1.0, 7.0}) {
    CHECK(t.cdf(2.5 * x + 4.0) == doctest::Approx(m.cdf(x)).epsilon(1e-12));
    CHECK(t.pdf(2.5 * x + 4.0) == doctest::Approx(m.pdf(x) / 2.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)m.affine(-1.0, 0.0), InvalidInput);
}
