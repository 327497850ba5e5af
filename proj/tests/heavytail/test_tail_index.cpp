#include <doctest.h>

#include <cmath>
#include <vector>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/core/rng.hpp"
#include "astroinfer/heavytail/tail_index.hpp"

using namespace astroinfer;
using namespace astroinfer::heavytail;

namespace {

std::vector<double> pareto(double a, std::size_t n, Rng &rng) {
  std::vector<double> v(n);
  for (double &x : v) x = std::pow(rng.uniform_open(), -1.0 / a);
  return v;
}

// Hill estimate written out directly: k largest exceedances over the median.
double hill(std::vector<double> v, std::size_t k) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double med = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  std::vector<double> y;
  for (double x : v)
    if (x > med) y.push_back(x - med);
  std::sort(y.begin(), y.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(y[i] / y[k]);
  return double(k) / s;
}

} // namespace

TEST_CASE("Pareto(1.5) with 1e5 points and k = 1000") {
  Rng rng(1);
  const auto v = pareto(1.5, 100000, rng);
  const double a = tail_index(v, 1000, ExceedanceSide::upper);
  CHECK(std::abs(a - 1.5) < 0.1);
  CHECK(is_heavy(a));
  CHECK(a == doctest::Approx(hill(v, 1000)).epsilon(1e-12));
  CHECK(tail_index(v, 1000, ExceedanceSide::absolute) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("Pareto(3) is classified as light") {
  Rng rng(2);
  const auto v = pareto(3.0, 100000, rng);
  const double a = tail_index(v, 1000, ExceedanceSide::upper);
  CHECK(a > 2.0);
  CHECK_FALSE(is_heavy(a));
}

TEST_CASE("lower tail of a mirrored sample equals the upper tail") {
  Rng rng(3);
  auto v = pareto(1.5, 20001, rng);
  const double up = tail_index(v, 500, ExceedanceSide::upper);
  for (double &x : v) x = -x;
  CHECK(tail_index(v, 500, ExceedanceSide::lower) == doctest::Approx(up).epsilon(1e-12));
}

TEST_CASE("degenerate input") {
  const std::vector<double> flat(100, 3.0);
  CHECK_THROWS_AS((void)tail_index(flat, 10), InvalidInput);
  const std::vector<double> few{1, 2, 3, 4, 5};
  CHECK_THROWS_AS((void)tail_index(few, 10), InvalidInput);
  CHECK_THROWS_AS((void)tail_index(few, 0), InvalidInput);
}

TEST_CASE("estimation error shrinks along a sample-size ladder") {
  Rng rng(4);
  double previous = INFINITY;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    const auto k = static_cast<std::size_t>(std::sqrt(double(n)));
    double err = 0.0;
    const int reps = 40;
    for (int r = 0; r < reps; ++r) err += std::abs(tail_index(pareto(1.5, n, rng), k, ExceedanceSide::upper) - 1.5);
    err /= reps;
    MESSAGE("n = ", n, ": mean absolute error ", err);
    CHECK(err < previous);
    previous = err;
  }
}
