#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/core/errors.hpp"
#include "astroinfer/core/parameters.hpp"
#include "astroinfer/core/rng.hpp"
#include "astroinfer/samplers/chain.hpp"

namespace astroinfer {

using LogDensity = std::function<double(const ParameterVector &)>;

/// Metropolis acceptance for a log ratio log(pi(y)/pi(x)). A ratio of -inf
/// (hard-core or zero target) is rejected without consuming randomness.
[[nodiscard]] inline bool metropolis_accept(double log_ratio, Rng &rng) {
  if (log_ratio == -std::numeric_limits<double>::infinity()) return false;
  if (log_ratio >= 0.0) return true;
  return std::log(rng.uniform_open()) < log_ratio;
}

/// Folds x back into [lo, hi] by repeated reflection. A degenerate interval
/// collapses to lo.
[[nodiscard]] double reflect_into(double x, double lo, double hi) noexcept;

/// Wraps x onto [0, period).
[[nodiscard]] double wrap_onto(double x, double period) noexcept;

/// Symmetric Gaussian random-walk proposal. Non-periodic coordinates are
/// reflected into their bound; periodic ones are wrapped onto their circle and
/// may land outside the bound, in which case `in_bounds` is false and the
/// proposal must be rejected.
struct Proposal {
  std::vector<double> values;
  bool in_bounds = true;
};

[[nodiscard]] Proposal propose_random_walk(const ParameterVector &current,
                                           std::span<const double> scales, Rng &rng);

struct MhStep {
  ParameterVector next;
  double log_target;
  bool accepted;
};

std::string describe(const ParameterVector &p);

/// One random-walk Metropolis-Hastings step given the cached log target at
/// `current`. Throws ChainAborted if the target returns NaN.
MhStep mh_fixed_dim_step(const ParameterVector &current, double current_log_target,
                         const LogDensity &target, std::span<const double> scales, Rng &rng);

/// Convenience overload that evaluates the target at `current` first; the
/// target must be finite there.
MhStep mh_fixed_dim_step(const ParameterVector &current, const LogDensity &target,
                         std::span<const double> scales, Rng &rng);

struct RunOptions {
  std::size_t n_steps = 0;
  std::size_t record_every = 1;
};

/// Runs `n_steps` random-walk steps and records every `record_every`-th
/// state. The record's seed field is the generator's seed.
ChainRecord<ParameterVector> run_random_walk(const ParameterVector &initial,
                                             const LogDensity &target,
                                             std::span<const double> scales,
                                             const RunOptions &options, Rng &rng);

} // namespace astroinfer
