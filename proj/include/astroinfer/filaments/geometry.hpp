#pragma once

#include <array>
#include <cmath>

namespace astroinfer::filaments {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3 &a, const Vec3 &b) noexcept { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3 &a, const Vec3 &b) noexcept { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3 &a) noexcept { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3 &a, const Vec3 &b) noexcept { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3 &a) noexcept { return dot(a, a); }
inline double norm(const Vec3 &a) noexcept { return std::sqrt(dot(a, a)); }

/// Angle between two undirected axes, in [0, pi/2].
inline double axis_angle(const Vec3 &u, const Vec3 &v) noexcept {
  const double c = std::abs(dot(u, v)) / (norm(u) * norm(v));
  return std::acos(c > 1.0 ? 1.0 : c);
}

/// Axis-aligned box [lo, hi].
struct Box {
  Vec3 lo{0.0, 0.0, 0.0};
  Vec3 hi{1.0, 1.0, 1.0};

  [[nodiscard]] bool contains(const Vec3 &p) const noexcept {
    for (int k = 0; k < 3; ++k)
      if (!(p[k] >= lo[k] && p[k] <= hi[k])) return false;
    return true;
  }
  [[nodiscard]] double volume() const noexcept {
    return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }
  [[nodiscard]] bool valid() const noexcept {
    for (int k = 0; k < 3; ++k)
      if (!(hi[k] > lo[k]) || !std::isfinite(lo[k]) || !std::isfinite(hi[k])) return false;
    return true;
  }
  [[nodiscard]] Box translated(const Vec3 &shift) const noexcept { return {lo + shift, hi + shift}; }

  friend bool operator==(const Box &, const Box &) = default;
};

} // namespace astroinfer::filaments
