#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "astroinfer/core/parameters.hpp"

namespace astroinfer::orbit {

inline constexpr std::size_t kElementCount = 7;

/// Relative Keplerian orbit of a binary's secondary. Angles in degrees,
/// epochs in reduced Julian days, distances in km.
struct KeplerOrbit {
  double period = 1.0;          // days
  double semi_major_axis = 1.0; // km
  double eccentricity = 0.0;
  double inclination = 0.0;    // deg, [0, 180]
  double ascending_node = 0.0; // deg, [0, 360)
  double arg_periapsis = 0.0;  // deg, [0, 360)
  double time_periapsis = 0.0; // RJD

  /// Throws InvalidInput unless period > 0, a > 0 and 0 <= e < 1.
  void validate() const;
  /// Node and argument wrapped onto [0, 360); inclination folded onto [0, 180].
  [[nodiscard]] KeplerOrbit normalized() const;

  [[nodiscard]] std::array<double, kElementCount> to_array() const noexcept;
  static KeplerOrbit from_array(std::span<const double> v);

  friend bool operator==(const KeplerOrbit &, const KeplerOrbit &) = default;
};

/// Element names in the canonical order (period, a, e, i, node, argument, T_p).
[[nodiscard]] const std::array<std::string_view, kElementCount> &element_names() noexcept;
/// Row labels of the summary table in the same order.
[[nodiscard]] const std::array<std::string_view, kElementCount> &element_labels() noexcept;

struct SkyPosition {
  double dx = 0.0; // km
  double dy = 0.0; // km
};

/// Sky-plane relative position with isotropic uncertainty.
struct Observation {
  double epoch = 0.0;
  double delta_x = 0.0;
  double delta_y = 0.0;
  double sigma = 1.0;
};

/// Throws InvalidInput on an empty set, non-positive sigma, non-finite values
/// or epochs that are not strictly increasing.
void validate_observations(std::span<const Observation> observations);

/// Position of the secondary relative to the primary at `epoch`, projected on
/// the sky plane (first two components of the rotated orbital position).
[[nodiscard]] SkyPosition propagate(const KeplerOrbit &orbit, double epoch);

/// Independent isotropic Gaussian residuals:
///   -1/2 sum |r_k|^2 / sigma_k^2 - sum log(2 pi sigma_k^2).
[[nodiscard]] double log_likelihood(const KeplerOrbit &orbit, std::span<const Observation> observations);

/// Total system mass implied by Kepler's third law, in kg.
[[nodiscard]] double system_mass_kg(const KeplerOrbit &orbit);

/// Uniform prior: one closed interval per element.
struct PriorBox {
  std::array<Bound, kElementCount> bounds{};

  /// Throws InvalidInput unless lo < hi everywhere and the box lies inside the
  /// physical domain (period, a > 0; 0 <= e < 1; i in [0, 180]; node and
  /// argument in [0, 360]).
  void validate() const;
  [[nodiscard]] bool contains(const KeplerOrbit &orbit) const noexcept;
  [[nodiscard]] KeplerOrbit center() const;
  /// Parameter layout for the sampler; node and argument wrap modulo 360.
  [[nodiscard]] ParameterVector parameters(const KeplerOrbit &orbit) const;
  [[nodiscard]] double log_density() const;

  /// Box around a reference orbit: each element widened by the given
  /// half-width and clipped to the physical domain.
  static PriorBox around(const KeplerOrbit &reference,
                         const std::array<double, kElementCount> &half_widths);
};

} // namespace astroinfer::orbit
