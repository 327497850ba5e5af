#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/core/parameters.hpp"
#include "astroinfer/filaments/segment.hpp"
#include "astroinfer/samplers/birth_death.hpp"

namespace astroinfer::filaments {

/// All constants of the segment process in one place.
///
/// Interaction: a segment whose connection count is c contributes -w_c.
/// Two segments touch when an endpoint of one is closer than
/// `connection_distance` to an endpoint of the other; touching segments are
/// connected when their axes differ by less than `alignment_angle` and they
/// extend away from the contact on opposite sides.
/// Hard-core (+inf) when two centers are closer than `hard_core_distance`,
/// when touching segments are misaligned, or (with `forbid_overlap`) when a
/// segment's center lies inside another segment's cylinder or the cylinders
/// of two non-touching segments intersect.
///
/// Data: per segment -log(1 + n_in) + log(1 + mu), plus `penalty` when
/// n_in <= kappa * (n_shell - n_in), where n_in counts galaxies in the
/// cylinder and n_shell those in the concentric cylinder of twice the radius.
/// With `balance` > 0 the penalty also applies when either half of the
/// cylinder holds fewer than balance * n_in / 2 galaxies.
struct FilamentParams {
  double half_length_min = 0.5;
  double half_length_max = 1.0;
  double radius = 0.2;

  double w0 = -1.0;
  double w1 = 0.5;
  double w2 = 1.5;
  std::optional<double> connection_distance{}; // default half_length_min / 2
  double alignment_angle = std::numbers::pi / 6.0;
  std::optional<double> hard_core_distance{}; // default half_length_min / 2
  bool forbid_misaligned_contacts = true;
  bool forbid_overlap = true;

  double mu = 0.0;
  double kappa = 1.5;
  double penalty = 2.0;
  double balance = 0.0;

  double intensity = 0.1; // reference Poisson intensity per unit volume

  double center_step = 0.1;
  double angle_step = 0.1;
  double length_step = 0.05;

  [[nodiscard]] double epsilon() const noexcept {
    return connection_distance.value_or(half_length_min / 2.0);
  }
  [[nodiscard]] double hard_core() const noexcept {
    return hard_core_distance.value_or(half_length_min / 2.0);
  }

  /// Throws InvalidInput for inconsistent constants.
  void validate() const;

  /// The energy parameters as a named vector: interaction.{w0,w1,w2,eps,tau,
  /// hard_core} and data.{mu,kappa,penalty,balance}.
  [[nodiscard]] ParameterVector theta() const;
};

struct InteractionParams {
  double w0, w1, w2;
  double epsilon;
  double tau;
  double hard_core;
  bool forbid_misaligned_contacts = true;
  bool forbid_overlap = true;

  static InteractionParams from(const ParameterVector &theta, const FilamentParams &flags);
};

struct DataParams {
  double mu;
  double kappa;
  double penalty;
  double balance = 0.0;

  static DataParams from(const ParameterVector &theta);
};

/// Per-segment number of connected extremities (0, 1 or 2).
[[nodiscard]] std::vector<int> connectivity(const MarkedConfiguration &config, double epsilon,
                                            double tau);

[[nodiscard]] FilamentStats sufficient_statistics(const MarkedConfiguration &config, double epsilon,
                                                  double tau);

[[nodiscard]] double interaction_energy(const MarkedConfiguration &config, const InteractionParams &p);

/// Galaxy counts (cylinder, doubled-radius cylinder) for one segment.
struct CylinderCounts {
  std::size_t inner = 0;
  std::size_t outer = 0;
  std::size_t inner_low = 0; // inner galaxies on the negative half of the axis
};
[[nodiscard]] CylinderCounts count_galaxies(const Segment &s, const GalaxyCatalog &catalog);

[[nodiscard]] double segment_data_energy(const CylinderCounts &c, const DataParams &p);
[[nodiscard]] double data_energy(const MarkedConfiguration &config, const GalaxyCatalog &catalog,
                                 const DataParams &p);

/// Throws InvalidInput for non-finite or out-of-range marks and centers
/// outside the window.
void validate_configuration(const MarkedConfiguration &config, const FilamentParams &params);

using FilamentEnergyModel = EnergyModel<MarkedConfiguration, GalaxyCatalog>;

[[nodiscard]] FilamentEnergyModel make_energy_model(const FilamentParams &params);

/// Uniform births over the window and the mark ranges; symmetric
/// perturbations of one of center, axis or length.
[[nodiscard]] ObjectProposals<Segment> make_proposals(const FilamentParams &params, const Box &window);

} // namespace astroinfer::filaments
