#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/core/rng.hpp"
#include "astroinfer/samplers/birth_death.hpp"
#include "astroinfer/samplers/chain.hpp"
#include "astroinfer/samplers/metropolis.hpp"

namespace astroinfer {

template <class State>
struct StepResult {
  State state;
  double energy;
  bool accepted;
  MoveKind move;
};

template <class State>
struct AnnealResult {
  State best;
  double best_energy;
  // log_targets hold -U/T at the temperature of the step.
  ChainRecord<State> chain;
  std::vector<double> temperatures;      // per record
  std::vector<double> best_energy_trace; // per record, running minimum
  std::size_t steps = 0;
};

struct AnnealOptions {
  std::size_t record_every = 1;
};

/// Simulated annealing over any Metropolis kernel. `step` is called as
/// step(state, energy, temperature, rng) and returns a StepResult. Returns
/// the lowest-energy state ever visited.
template <class State, class Step>
AnnealResult<State> anneal(State initial, double initial_energy, const AnnealingSchedule &schedule,
                           Step &&step, Rng &rng, const AnnealOptions &options = {}) {
  schedule.validate();
  if (!std::isfinite(initial_energy))
    throw InvalidInput("annealing must start from a state with finite energy");
  const std::size_t every = options.record_every == 0 ? 1 : options.record_every;

  AnnealResult<State> result{initial, initial_energy, {}, {}, {}, 0};
  result.chain.seed = rng.seed();
  State state = std::move(initial);
  double energy = initial_energy;

  const std::size_t levels = schedule.levels();
  std::size_t t = 0;
  for (std::size_t level = 0; level < levels; ++level) {
    const double temperature = schedule.temperature(level);
    for (std::size_t k = 0; k < schedule.steps_per_level; ++k, ++t) {
      StepResult<State> r = step(state, energy, temperature, rng);
      state = std::move(r.state);
      energy = r.energy;
      if (energy < result.best_energy) {
        result.best = state;
        result.best_energy = energy;
      }
      if (t % every == 0) {
        result.chain.push(t, state, -energy / temperature, r.accepted, r.move);
        result.temperatures.push_back(temperature);
        result.best_energy_trace.push_back(result.best_energy);
      }
    }
  }
  result.steps = t;
  return result;
}

/// Annealing of a marked point configuration with birth/death/change moves.
template <ObjectConfiguration Config, class Data, class Object>
AnnealResult<Config> anneal_configuration(Config initial, const EnergyModel<Config, Data> &model,
                                          const ParameterVector &theta, const Data &d,
                                          const ObjectProposals<Object> &proposals,
                                          const AnnealingSchedule &schedule, const MoveMix &mix,
                                          Rng &rng, const AnnealOptions &options = {}) {
  mix.validate();
  const double u0 = total_energy(initial, theta, d, model);
  auto kernel = [&](const Config &s, double u, double temperature, Rng &g) {
    auto r = birth_death_change_step(s, u, model, theta, d, proposals, mix, temperature, g);
    return StepResult<Config>{std::move(r.next), r.energy, r.accepted, r.move};
  };
  return anneal(std::move(initial), u0, schedule, kernel, rng, options);
}

/// Annealing of a fixed-dimension parameter vector under `energy` with a
/// Gaussian random walk. Points where the energy is +inf are never accepted.
AnnealResult<ParameterVector> anneal_parameters(const ParameterVector &initial,
                                                const std::function<double(const ParameterVector &)> &energy,
                                                std::span<const double> scales,
                                                const AnnealingSchedule &schedule, Rng &rng,
                                                const AnnealOptions &options = {});

} // namespace astroinfer
