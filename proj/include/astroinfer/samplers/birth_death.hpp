#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/core/errors.hpp"
#include "astroinfer/core/rng.hpp"
#include "astroinfer/samplers/chain.hpp"
#include "astroinfer/samplers/metropolis.hpp"

namespace astroinfer {

/// Object-level proposals for a marked point configuration.
///
/// `birth` draws a new object from the normalized reference measure (uniform
/// position in the window, marks from their reference law). `change` must be
/// a symmetric perturbation; returning nullopt means the perturbed object
/// left the support and the move is rejected. `reference_mass` is lambda*|W|,
/// the total mass of the Poisson reference process.
///
/// Data-driven births can be plugged in here, but then the birth density no
/// longer cancels and the caller must fold it into the energy.
template <class Object>
struct ObjectProposals {
  std::function<Object(Rng &)> birth;
  std::function<std::optional<Object>(const Object &, Rng &)> change;
  double reference_mass = 1.0;
};

/// Configurations expose their objects through `objects()`.
template <class C>
concept ObjectConfiguration = requires(C c, const C cc) {
  { c.objects().size() } -> std::convertible_to<std::size_t>;
  { cc.objects().size() } -> std::convertible_to<std::size_t>;
};

template <class Config>
struct BdcStep {
  Config next;
  double energy;
  bool accepted;
  MoveKind move;
};

/// Log Green ratio of adding one object to a configuration of size n.
[[nodiscard]] inline double birth_log_ratio(std::size_t n, double reference_mass, double delta_energy,
                                            double temperature, const MoveMix &mix) {
  if (is_hard_core(delta_energy)) return -std::numeric_limits<double>::infinity();
  return std::log(mix.death / mix.birth) + std::log(reference_mass) -
         std::log(static_cast<double>(n + 1)) - delta_energy / temperature;
}

/// Log Green ratio of removing one object from a configuration of size n >= 1.
[[nodiscard]] inline double death_log_ratio(std::size_t n, double reference_mass, double delta_energy,
                                            double temperature, const MoveMix &mix) {
  if (is_hard_core(delta_energy)) return -std::numeric_limits<double>::infinity();
  return std::log(mix.birth / mix.death) + std::log(static_cast<double>(n)) -
         std::log(reference_mass) - delta_energy / temperature;
}

namespace detail {
inline double energy_difference(double proposed, double current) {
  return is_hard_core(proposed) ? kHardCore : proposed - current;
}
} // namespace detail

/// One birth / death / change Metropolis-Hastings-Green step targeting
/// exp(-U/T) with respect to a Poisson(reference_mass) reference process.
/// `current_energy` is the cached total energy of `current` and must be finite.
template <ObjectConfiguration Config, class Data, class Object>
BdcStep<Config> birth_death_change_step(const Config &current, double current_energy,
                                        const EnergyModel<Config, Data> &model,
                                        const ParameterVector &theta, const Data &d,
                                        const ObjectProposals<Object> &proposals,
                                        const MoveMix &mix, double temperature, Rng &rng) {
  if (!(temperature > 0.0)) throw InvalidInput("temperature must be positive");
  if (!std::isfinite(current_energy))
    throw InvalidInput("current configuration must have finite energy");

  const MoveKind move = mix.draw(rng);
  const std::size_t n = current.objects().size();
  BdcStep<Config> out{current, current_energy, false, move};

  auto evaluate = [&](const Config &proposed) {
    const double u = total_energy(proposed, theta, d, model);
    return std::pair{u, detail::energy_difference(u, current_energy)};
  };

  double log_ratio = -std::numeric_limits<double>::infinity();
  Config proposed = current;
  double proposed_energy = kHardCore;

  switch (move) {
  case MoveKind::birth: {
    proposed.objects().push_back(proposals.birth(rng));
    const auto [u, du] = evaluate(proposed);
    proposed_energy = u;
    log_ratio = birth_log_ratio(n, proposals.reference_mass, du, temperature, mix);
    break;
  }
  case MoveKind::death: {
    if (n == 0) return out;
    const auto victim = static_cast<std::ptrdiff_t>(rng.below(n));
    proposed.objects().erase(proposed.objects().begin() + victim);
    const auto [u, du] = evaluate(proposed);
    proposed_energy = u;
    log_ratio = death_log_ratio(n, proposals.reference_mass, du, temperature, mix);
    break;
  }
  case MoveKind::change: {
    if (n == 0) return out;
    const auto which = static_cast<std::size_t>(rng.below(n));
    auto moved = proposals.change(current.objects()[which], rng);
    if (!moved) return out;
    proposed.objects()[which] = std::move(*moved);
    const auto [u, du] = evaluate(proposed);
    proposed_energy = u;
    log_ratio = is_hard_core(du) ? -std::numeric_limits<double>::infinity() : -du / temperature;
    break;
  }
  case MoveKind::random_walk:
    throw InvalidInput("random-walk move is not part of a birth/death/change mix");
  }

  if (std::isnan(log_ratio)) throw ChainAborted("NaN acceptance ratio", "move " + std::string(to_string(move)));
  if (metropolis_accept(log_ratio, rng)) {
    out.next = std::move(proposed);
    out.energy = proposed_energy;
    out.accepted = true;
  }
  return out;
}

} // namespace astroinfer
