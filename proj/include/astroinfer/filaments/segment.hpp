#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "astroinfer/filaments/geometry.hpp"

namespace astroinfer::filaments {

/// Undirected segment with an influence cylinder. The axis is stored as
/// spherical angles (polar in [0, pi], azimuth in [0, 2 pi)); +v and -v
/// describe the same segment.
struct Segment {
  Vec3 center{};
  double polar = 0.0;
  double azimuth = 0.0;
  double half_length = 1.0;
  double radius = 0.1;

  [[nodiscard]] Vec3 direction() const noexcept;
  [[nodiscard]] std::array<Vec3, 2> endpoints() const noexcept;

  /// Whether p lies in the cylinder of the given radius around the segment
  /// (same length as the segment).
  [[nodiscard]] bool covers(const Vec3 &p, double cylinder_radius) const noexcept;

  /// Builds a segment from any nonzero axis vector.
  static Segment along(const Vec3 &center, const Vec3 &axis, double half_length, double radius);

  friend bool operator==(const Segment &, const Segment &) = default;
};

struct MarkedConfiguration {
  Box window;
  std::vector<Segment> segments;

  [[nodiscard]] std::vector<Segment> &objects() noexcept { return segments; }
  [[nodiscard]] const std::vector<Segment> &objects() const noexcept { return segments; }

  friend bool operator==(const MarkedConfiguration &, const MarkedConfiguration &) = default;
};

/// Number of segments, of segments connected at exactly one extremity and at
/// both extremities.
struct FilamentStats {
  std::size_t n_total = 0;
  std::size_t n_one_connected = 0;
  std::size_t n_two_connected = 0;

  friend bool operator==(const FilamentStats &, const FilamentStats &) = default;
};

struct GalaxyCatalog {
  std::vector<Vec3> positions;
  Box window;

  /// Throws InvalidInput when the window is degenerate or a position lies
  /// outside it.
  void validate() const;
};

/// Shortest distance between the axes of two segments.
[[nodiscard]] double axis_distance(const Segment &a, const Segment &b) noexcept;

/// Seven numbers per segment: center (3), polar, azimuth, half_length, radius.
[[nodiscard]] std::vector<double> flatten(const MarkedConfiguration &config);

} // namespace astroinfer::filaments
