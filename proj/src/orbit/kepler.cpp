#include "astroinfer/orbit/kepler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "astroinfer/core/errors.hpp"

namespace astroinfer::orbit {

double reduce_mean_anomaly(double mean_anomaly) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double m = std::fmod(mean_anomaly, two_pi);
  if (m < 0.0) m += two_pi;
  if (m >= two_pi) m = 0.0;
  return m;
}

double solve_kepler(double mean_anomaly, double e) {
  if (!(e >= 0.0 && e < 1.0)) throw InvalidInput("eccentricity must lie in [0, 1)");
  if (!std::isfinite(mean_anomaly)) throw InvalidInput("mean anomaly must be finite");
  const double m = reduce_mean_anomaly(mean_anomaly);
  if (e == 0.0 || m == 0.0) return m;

  constexpr double pi = std::numbers::pi;
  // f(E) = E - e sin E - M is increasing; the root lies between M and pi.
  double lo = m <= pi ? m : std::max(pi, m - e);
  double hi = m <= pi ? std::min(pi, m + e) : m;
  double x = m + e * std::sin(m);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  constexpr double tol = 1e-15;
  for (int iter = 0; iter < 100; ++iter) {
    const double f = x - e * std::sin(x) - m;
    if (std::abs(f) <= tol * std::max(1.0, m)) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    const double df = 1.0 - e * std::cos(x);
    double next = x - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x))
      return next;
    x = next;
  }
  throw NumericalError("Kepler solver did not converge");
}

} // namespace astroinfer::orbit
