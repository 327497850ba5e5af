#include "astroinfer/core/energy.hpp"

#include <algorithm>

namespace astroinfer {

namespace detail {

void check_energy_term(double value, const char *term) {
  if (std::isnan(value))
    throw NumericalError(std::string(term) + " energy evaluated to NaN");
  if (value == -std::numeric_limits<double>::infinity())
    throw NumericalError(std::string(term) + " energy evaluated to -infinity");
}

void check_parameters(const ParameterVector &theta) {
  if (!theta.admits(theta.values()))
    throw InvalidInput("model parameters outside their declared bounds");
}

} // namespace detail

void AnnealingSchedule::validate() const {
  if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature))
    throw InvalidInput("initial temperature must be positive");
  if (!(final_temperature > 0.0) || !std::isfinite(final_temperature))
    throw InvalidInput("final temperature must be positive");
  if (final_temperature > initial_temperature)
    throw InvalidInput("final temperature must not exceed the initial temperature");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
    throw InvalidInput("cooling factor must lie in (0, 1)");
  if (steps_per_level == 0) throw InvalidInput("steps per level must be positive");
}

std::size_t AnnealingSchedule::levels() const {
  validate();
  // Relative slack so that T_0 * c^k landing a rounding error below T_final
  // still counts as reaching it.
  const double ratio = std::log(final_temperature / initial_temperature) / std::log(cooling_factor);
  return static_cast<std::size_t>(std::floor(ratio + 1e-9)) + 1;
}

double AnnealingSchedule::temperature(std::size_t level) const {
  return initial_temperature * std::pow(cooling_factor, static_cast<double>(level));
}

AnnealingSchedule AnnealingSchedule::defaults(std::size_t dimension, double initial_temperature,
                                              double final_temperature) {
  AnnealingSchedule s;
  s.initial_temperature = initial_temperature;
  s.final_temperature = final_temperature;
  s.cooling_factor = 0.95;
  s.steps_per_level = std::max<std::size_t>(100, 10 * dimension);
  return s;
}

} // namespace astroinfer
