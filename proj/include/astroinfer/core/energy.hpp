#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/core/parameters.hpp"

namespace astroinfer {

/// Energy value reserved for hard-core violations. Samplers treat it as an
/// automatic rejection and never do arithmetic on it.
inline constexpr double kHardCore = std::numeric_limits<double>::infinity();

[[nodiscard]] inline bool is_hard_core(double energy) noexcept {
  return energy == kHardCore;
}

/// Gibbs model p(x | d, theta) ∝ exp(-(U_i(x|theta) + U_d(x|theta))) with a
/// prior density on theta. The normalizing constant is never evaluated.
template <class State, class Data>
struct EnergyModel {
  std::function<double(const State &, const ParameterVector &)> interaction;
  std::function<double(const State &, const ParameterVector &, const Data &)> data;
  std::function<double(const ParameterVector &)> log_prior = [](const ParameterVector &) {
    return 0.0;
  };
  // Throws InvalidInput for states the model cannot score. Optional.
  std::function<void(const State &)> validate{};
};

namespace detail {
void check_energy_term(double value, const char *term);
void check_parameters(const ParameterVector &theta);
} // namespace detail

/// U_i + U_d. Returns kHardCore as soon as the interaction term does, without
/// evaluating the data term.
template <class State, class Data>
double total_energy(const State &state, const ParameterVector &theta, const Data &d,
                    const EnergyModel<State, Data> &model) {
  detail::check_parameters(theta);
  if (model.validate) model.validate(state);
  const double ui = model.interaction(state, theta);
  detail::check_energy_term(ui, "interaction");
  if (is_hard_core(ui)) return kHardCore;
  const double ud = model.data(state, theta, d);
  detail::check_energy_term(ud, "data");
  if (is_hard_core(ud)) return kHardCore;
  return ui + ud;
}

/// Simulated-annealing objective (U_i + U_d - log p(theta)) / T. At T = 1 this
/// is the negative log-posterior up to the unevaluated log-partition function.
template <class State, class Data>
double annealing_target(const State &state, const ParameterVector &theta, const Data &d,
                        const EnergyModel<State, Data> &model, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw InvalidInput("annealing temperature must be positive and finite");
  const double u = total_energy(state, theta, d, model);
  if (is_hard_core(u)) return kHardCore;
  const double lp = model.log_prior(theta);
  if (std::isnan(lp)) throw NumericalError("log prior evaluated to NaN");
  return (u - lp) / temperature;
}

/// Geometric cooling T_k = T_0 * c^k, k = 0, 1, ... while T_k >= T_final.
struct AnnealingSchedule {
  double initial_temperature = 1.0;
  double cooling_factor = 0.95;
  std::size_t steps_per_level = 100;
  double final_temperature = 0.01;

  /// Throws InvalidInput. Equal initial and final temperatures are accepted
  /// and mean a single level.
  void validate() const;
  [[nodiscard]] std::size_t levels() const;
  [[nodiscard]] double temperature(std::size_t level) const;
  [[nodiscard]] std::size_t total_steps() const { return levels() * steps_per_level; }

  /// cooling 0.95, 10 * dimension steps per level with a floor of 100.
  static AnnealingSchedule defaults(std::size_t dimension, double initial_temperature = 1.0,
                                    double final_temperature = 0.01);
};

} // namespace astroinfer
