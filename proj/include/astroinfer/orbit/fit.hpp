#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "astroinfer/core/parameters.hpp"
#include "astroinfer/orbit/orbit.hpp"
#include "astroinfer/samplers/chain.hpp"

namespace astroinfer::orbit {

struct ParameterSummary {
  double min = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double sd = 0.0;

  friend bool operator==(const ParameterSummary &, const ParameterSummary &) = default;
};

/// Min, median (midpoint of the central pair for even counts), mean, max
/// and sample standard deviation of each column. Throws InvalidInput on an
/// empty sample set or ragged rows.
[[nodiscard]] std::vector<ParameterSummary> summarize(std::span<const std::vector<double>> samples);

struct OrbitSummary {
  std::array<ParameterSummary, kElementCount> elements{};
  std::size_t n_samples = 0;

  [[nodiscard]] KeplerOrbit mean_orbit() const;
  [[nodiscard]] KeplerOrbit median_orbit() const;
};

[[nodiscard]] OrbitSummary summarize_orbits(std::span<const ParameterVector> samples);

struct FitOptions {
  std::size_t n_steps = 200000;
  std::size_t burn_in = 50000;
  std::array<double, kElementCount> proposal_scales{};
  std::uint64_t seed = 0;
  std::size_t chains = 1;
  std::size_t record_every = 1;
  std::optional<KeplerOrbit> initial{}; // default: center of the prior box
};

struct OrbitFit {
  OrbitSummary summary;
  std::vector<ChainRecord<ParameterVector>> chains;
  double acceptance_rate = 0.0; // post burn-in, over all chains
};

/// Log posterior up to a constant: log-likelihood inside the box, -inf outside.
[[nodiscard]] double log_posterior(const KeplerOrbit &orbit, std::span<const Observation> observations,
                                   const PriorBox &prior);

/// Random-walk Metropolis on the seven elements under a uniform prior box.
/// Chains run concurrently with seeds split from `options.seed`; summaries
/// pool the post-burn-in records of all chains in chain order.
///
/// Throws InvalidInput for bad options or a starting orbit outside the box,
/// ChainAborted when no post-burn-in proposal is accepted.
[[nodiscard]] OrbitFit fit_orbit(std::span<const Observation> observations, const PriorBox &prior,
                                 const FitOptions &options);

/// Proposal scales from the diagonal of the Fisher information at `orbit`:
/// factor / sqrt(F_kk), i.e. a multiple of each element's conditional
/// standard deviation.
[[nodiscard]] std::array<double, kElementCount>
suggest_proposal_scales(const KeplerOrbit &orbit, std::span<const Observation> observations,
                        double factor = 0.5);

} // namespace astroinfer::orbit
