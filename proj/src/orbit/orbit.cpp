#include "astroinfer/orbit/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/orbit/kepler.hpp"
#include "astroinfer/samplers/metropolis.hpp"

namespace astroinfer::orbit {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kGravity = 6.67430e-11;   // m^3 kg^-1 s^-2
constexpr double kSecondsPerDay = 86400.0;

} // namespace

const std::array<std::string_view, kElementCount> &element_names() noexcept {
  static const std::array<std::string_view, kElementCount> names = {
      "period", "semi_major_axis", "eccentricity", "inclination",
      "ascending_node", "arg_periapsis", "time_periapsis"};
  return names;
}

const std::array<std::string_view, kElementCount> &element_labels() noexcept {
  static const std::array<std::string_view, kElementCount> labels = {
      "Period, days", "Semi-major axis, km", "Eccentricity", "Inclination, deg",
      "Longitude of asc. node, deg", "Argument of periapsis, deg", "Time of periapsis, RJD"};
  return labels;
}

void KeplerOrbit::validate() const {
  if (!(period > 0.0) || !std::isfinite(period)) throw InvalidInput("period must be positive");
  if (!(semi_major_axis > 0.0) || !std::isfinite(semi_major_axis))
    throw InvalidInput("semi-major axis must be positive");
  if (!(eccentricity >= 0.0 && eccentricity < 1.0))
    throw InvalidInput("eccentricity must lie in [0, 1)");
  for (double v : {inclination, ascending_node, arg_periapsis, time_periapsis})
    if (!std::isfinite(v)) throw InvalidInput("orbital angles and epochs must be finite");
}

KeplerOrbit KeplerOrbit::normalized() const {
  KeplerOrbit o = *this;
  double inc = wrap_onto(inclination, 360.0);
  if (inc > 180.0) {
    // i -> 360 - i is the same plane seen from the other side only together
    // with node + 180 and argument + 180.
    inc = 360.0 - inc;
    o.ascending_node += 180.0;
    o.arg_periapsis += 180.0;
  }
  o.inclination = inc;
  o.ascending_node = wrap_onto(o.ascending_node, 360.0);
  o.arg_periapsis = wrap_onto(o.arg_periapsis, 360.0);
  return o;
}

std::array<double, kElementCount> KeplerOrbit::to_array() const noexcept {
  return {period, semi_major_axis, eccentricity, inclination, ascending_node, arg_periapsis,
          time_periapsis};
}

KeplerOrbit KeplerOrbit::from_array(std::span<const double> v) {
  if (v.size() != kElementCount) throw InvalidInput("an orbit has seven elements");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

void validate_observations(std::span<const Observation> observations) {
  if (observations.empty()) throw InvalidInput("at least one observation is required");
  for (std::size_t k = 0; k < observations.size(); ++k) {
    const Observation &o = observations[k];
    const std::string where = "observation " + std::to_string(k) + ": ";
    if (!std::isfinite(o.epoch) || !std::isfinite(o.delta_x) || !std::isfinite(o.delta_y))
      throw InvalidInput(where + "non-finite value");
    if (!(o.sigma > 0.0) || !std::isfinite(o.sigma)) throw InvalidInput(where + "sigma must be positive");
    if (k > 0 && !(o.epoch > observations[k - 1].epoch))
      throw InvalidInput(where + "epochs must be strictly increasing");
  }
}

SkyPosition propagate(const KeplerOrbit &orbit, double epoch) {
  orbit.validate();
  const double e = orbit.eccentricity;
  const double mean_anomaly = 2.0 * std::numbers::pi * (epoch - orbit.time_periapsis) / orbit.period;
  const double ecc_anomaly = solve_kepler(mean_anomaly, e);
  const double a = orbit.semi_major_axis;
  const double x = a * (std::cos(ecc_anomaly) - e);
  const double y = a * std::sqrt(1.0 - e * e) * std::sin(ecc_anomaly);

  // fmod is exact, so orbits differing by whole turns give identical results.
  const double node = wrap_onto(orbit.ascending_node, 360.0) * kDeg;
  const double arg = wrap_onto(orbit.arg_periapsis, 360.0) * kDeg;
  const double inc = wrap_onto(orbit.inclination, 360.0) * kDeg;
  const double cn = std::cos(node), sn = std::sin(node);
  const double cw = std::cos(arg), sw = std::sin(arg);
  const double ci = std::cos(inc);
  // First two rows of Rz(node) Rx(inc) Rz(arg).
  const double a11 = cn * cw - sn * sw * ci;
  const double a12 = -cn * sw - sn * cw * ci;
  const double a21 = sn * cw + cn * sw * ci;
  const double a22 = -sn * sw + cn * cw * ci;
  return {a11 * x + a12 * y, a21 * x + a22 * y};
}

double log_likelihood(const KeplerOrbit &orbit, std::span<const Observation> observations) {
  if (observations.empty()) throw InvalidInput("at least one observation is required");
  double chi2 = 0.0;
  double norm = 0.0;
  for (const Observation &o : observations) {
    const SkyPosition p = propagate(orbit, o.epoch);
    const double rx = o.delta_x - p.dx;
    const double ry = o.delta_y - p.dy;
    const double s2 = o.sigma * o.sigma;
    chi2 += (rx * rx + ry * ry) / s2;
    norm += std::log(2.0 * std::numbers::pi * s2);
  }
  return -0.5 * chi2 - norm;
}

double system_mass_kg(const KeplerOrbit &orbit) {
  orbit.validate();
  const double a = orbit.semi_major_axis * 1e3;
  const double p = orbit.period * kSecondsPerDay;
  return 4.0 * std::numbers::pi * std::numbers::pi * a * a * a / (kGravity * p * p);
}

void PriorBox::validate() const {
  const auto &names = element_names();
  for (std::size_t k = 0; k < kElementCount; ++k) {
    const Bound &b = bounds[k];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
      throw InvalidInput("prior interval for " + std::string(names[k]) + " must satisfy lo < hi");
  }
  if (!(bounds[0].lo > 0.0)) throw InvalidInput("period prior must be positive");
  if (!(bounds[1].lo > 0.0)) throw InvalidInput("semi-major axis prior must be positive");
  if (bounds[2].lo < 0.0 || !(bounds[2].hi < 1.0))
    throw InvalidInput("eccentricity prior must lie in [0, 1)");
  if (bounds[3].lo < 0.0 || bounds[3].hi > 180.0)
    throw InvalidInput("inclination prior must lie in [0, 180]");
  for (std::size_t k : {4u, 5u})
    if (bounds[k].lo < 0.0 || bounds[k].hi > 360.0)
      throw InvalidInput("prior for " + std::string(names[k]) + " must lie in [0, 360]");
}

bool PriorBox::contains(const KeplerOrbit &orbit) const noexcept {
  const auto v = orbit.to_array();
  for (std::size_t k = 0; k < kElementCount; ++k)
    if (!bounds[k].contains(v[k])) return false;
  return true;
}

KeplerOrbit PriorBox::center() const {
  std::array<double, kElementCount> v{};
  for (std::size_t k = 0; k < kElementCount; ++k) v[k] = 0.5 * (bounds[k].lo + bounds[k].hi);
  return KeplerOrbit::from_array(v);
}

ParameterVector PriorBox::parameters(const KeplerOrbit &orbit) const {
  validate();
  std::vector<std::string> names;
  std::vector<Bound> b;
  for (std::size_t k = 0; k < kElementCount; ++k) {
    names.emplace_back(element_names()[k]);
    Bound bk = bounds[k];
    if (k == 4 || k == 5) bk.period = 360.0;
    b.push_back(bk);
  }
  const auto v = orbit.to_array();
  return ParameterVector(std::move(names), {v.begin(), v.end()}, std::move(b));
}

double PriorBox::log_density() const {
  double s = 0.0;
  for (const Bound &b : bounds) s -= std::log(b.hi - b.lo);
  return s;
}

PriorBox PriorBox::around(const KeplerOrbit &reference,
                          const std::array<double, kElementCount> &half_widths) {
  const auto v = reference.to_array();
  PriorBox box;
  const std::array<double, kElementCount> lo_limit = {1e-12, 1e-12, 0.0, 0.0, 0.0, 0.0,
                                                      -std::numeric_limits<double>::max()};
  const std::array<double, kElementCount> hi_limit = {std::numeric_limits<double>::max(),
                                                      std::numeric_limits<double>::max(),
                                                      0.999999, 180.0, 360.0, 360.0,
                                                      std::numeric_limits<double>::max()};
  for (std::size_t k = 0; k < kElementCount; ++k)
    box.bounds[k] = {std::max(lo_limit[k], v[k] - half_widths[k]),
                     std::min(hi_limit[k], v[k] + half_widths[k])};
  box.validate();
  return box;
}

} // namespace astroinfer::orbit
