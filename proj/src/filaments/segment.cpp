#include "astroinfer/filaments/segment.hpp"

#include <numbers>
#include <string>

#include "astroinfer/core/errors.hpp"

namespace astroinfer::filaments {

Vec3 Segment::direction() const noexcept {
  const double s = std::sin(polar);
  return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)};
}

std::array<Vec3, 2> Segment::endpoints() const noexcept {
  const Vec3 offset = half_length * direction();
  return {center - offset, center + offset};
}

bool Segment::covers(const Vec3 &p, double cylinder_radius) const noexcept {
  const Vec3 d = p - center;
  const double t = dot(d, direction());
  if (std::abs(t) > half_length) return false;
  return norm2(d) - t * t <= cylinder_radius * cylinder_radius;
}

Segment Segment::along(const Vec3 &center, const Vec3 &axis, double half_length, double radius) {
  const double n = norm(axis);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("segment axis must be a nonzero vector");
  const Vec3 u = (1.0 / n) * axis;
  double azimuth = std::atan2(u[1], u[0]);
  if (azimuth < 0.0) azimuth += 2.0 * std::numbers::pi;
  const double z = u[2] > 1.0 ? 1.0 : (u[2] < -1.0 ? -1.0 : u[2]);
  return Segment{center, std::acos(z), azimuth, half_length, radius};
}

double axis_distance(const Segment &a, const Segment &b) noexcept {
  // Closest points of p + s*d1 and q + t*d2 with s, t in [-1, 1] scaled by half-lengths.
  const Vec3 d1 = a.half_length * a.direction();
  const Vec3 d2 = b.half_length * b.direction();
  const Vec3 r = a.center - b.center;
  const double aa = dot(d1, d1), ee = dot(d2, d2), f = dot(d2, r);
  const double c = dot(d1, r), bb = dot(d1, d2);
  const double denom = aa * ee - bb * bb;
  auto clamp = [](double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); };
  double s = denom > 1e-14 * aa * ee ? clamp((bb * f - c * ee) / denom) : 0.0;
  double t = (bb * s + f) / ee;
  if (t < -1.0 || t > 1.0) {
    t = clamp(t);
    s = clamp((bb * t - c) / aa);
  }
  return norm((a.center + s * d1) - (b.center + t * d2));
}

void GalaxyCatalog::validate() const {
  if (!window.valid()) throw InvalidInput("catalog window is degenerate");
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (!window.contains(positions[i]))
      throw InvalidInput("galaxy " + std::to_string(i) + " lies outside the window");
}

std::vector<double> flatten(const MarkedConfiguration &config) {
  std::vector<double> out;
  out.reserve(7 * config.segments.size());
  for (const auto &s : config.segments) {
    out.insert(out.end(), {s.center[0], s.center[1], s.center[2], s.polar, s.azimuth,
                           s.half_length, s.radius});
  }
  return out;
}

} // namespace astroinfer::filaments
