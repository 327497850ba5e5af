#include "astroinfer/orbit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <string>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/core/rng.hpp"
#include "astroinfer/samplers/metropolis.hpp"

namespace astroinfer::orbit {

std::vector<ParameterSummary> summarize(std::span<const std::vector<double>> samples) {
  if (samples.empty()) throw InvalidInput("cannot summarize an empty sample set");
  const std::size_t dim = samples.front().size();
  for (const auto &s : samples)
    if (s.size() != dim) throw InvalidInput("samples must all have the same dimension");
  const std::size_t n = samples.size();
  std::vector<ParameterSummary> out(dim);
  std::vector<double> column(n);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < n; ++i) column[i] = samples[i][k];
    std::sort(column.begin(), column.end());
    ParameterSummary &p = out[k];
    p.min = column.front();
    p.max = column.back();
    p.median = n % 2 == 1 ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
    // Summed in sorted order: the result depends only on the sample multiset.
    const double mean = std::accumulate(column.begin(), column.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double x : column) ss += (x - mean) * (x - mean);
    p.mean = std::clamp(mean, p.min, p.max);
    p.sd = n > 1 ? std::sqrt(ss / double(n - 1)) : 0.0;
  }
  return out;
}

KeplerOrbit OrbitSummary::mean_orbit() const {
  std::array<double, kElementCount> v{};
  for (std::size_t k = 0; k < kElementCount; ++k) v[k] = elements[k].mean;
  return KeplerOrbit::from_array(v);
}

KeplerOrbit OrbitSummary::median_orbit() const {
  std::array<double, kElementCount> v{};
  for (std::size_t k = 0; k < kElementCount; ++k) v[k] = elements[k].median;
  return KeplerOrbit::from_array(v);
}

OrbitSummary summarize_orbits(std::span<const ParameterVector> samples) {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const auto &p : samples) {
    if (p.size() != kElementCount) throw InvalidInput("orbit samples have seven elements");
    rows.push_back(p.values());
  }
  const auto cols = summarize(rows);
  OrbitSummary s;
  std::copy(cols.begin(), cols.end(), s.elements.begin());
  s.n_samples = samples.size();
  return s;
}

double log_posterior(const KeplerOrbit &orbit, std::span<const Observation> observations,
                     const PriorBox &prior) {
  if (!prior.contains(orbit)) return -std::numeric_limits<double>::infinity();
  return log_likelihood(orbit, observations) + prior.log_density();
}

OrbitFit fit_orbit(std::span<const Observation> observations, const PriorBox &prior,
                   const FitOptions &options) {
  validate_observations(observations);
  prior.validate();
  if (options.n_steps <= options.burn_in)
    throw InvalidInput("the number of steps must exceed the burn-in");
  if (options.chains == 0) throw InvalidInput("at least one chain is required");
  for (double s : options.proposal_scales)
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidInput("proposal scales must be finite and nonnegative");

  const KeplerOrbit start = options.initial.value_or(prior.center());
  start.validate();
  if (!prior.contains(start)) throw InvalidInput("the starting orbit lies outside the prior box");
  const ParameterVector initial = prior.parameters(start);

  const LogDensity target = [&](const ParameterVector &p) {
    const KeplerOrbit o = KeplerOrbit::from_array(p.values());
    if (!(o.eccentricity < 1.0)) return -std::numeric_limits<double>::infinity();
    return log_posterior(o, observations, prior);
  };
  const std::size_t every = options.record_every == 0 ? 1 : options.record_every;
  const Rng root(options.seed);

  auto run_one = [&](std::size_t index) {
    Rng rng = root.split("orbit.chain").split(index);
    auto chain = run_random_walk(initial, target, options.proposal_scales,
                                 RunOptions{options.n_steps, every}, rng);
    chain.seed = options.seed;
    return chain;
  };

  OrbitFit fit;
  if (options.chains == 1) {
    fit.chains.push_back(run_one(0));
  } else {
    std::vector<std::future<ChainRecord<ParameterVector>>> jobs;
    for (std::size_t c = 0; c < options.chains; ++c)
      jobs.push_back(std::async(std::launch::async, run_one, c));
    for (auto &j : jobs) fit.chains.push_back(j.get());
  }

  std::vector<ParameterVector> kept;
  std::size_t accepted = 0;
  for (const auto &chain : fit.chains)
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (chain.steps[i] < options.burn_in) continue;
      kept.push_back(chain.states[i]);
      accepted += chain.accepted[i] ? 1 : 0;
    }
  if (kept.empty()) throw InvalidInput("no recorded samples after burn-in; lower record_every");
  fit.acceptance_rate = double(accepted) / double(kept.size());
  if (accepted == 0)
    throw ChainAborted("no proposal was accepted after burn-in; use smaller proposal scales",
                       "last state " + describe(kept.back()));
  fit.summary = summarize_orbits(kept);
  return fit;
}

std::array<double, kElementCount> suggest_proposal_scales(const KeplerOrbit &orbit,
                                                          std::span<const Observation> observations,
                                                          double factor) {
  validate_observations(observations);
  orbit.validate();
  const auto base = orbit.to_array();
  // Central-difference steps: relative for scale parameters, absolute for
  // angles (deg), eccentricity and epoch (days).
  const std::array<double, kElementCount> steps = {
      1e-6 * base[0], 1e-6 * base[1], 1e-6, 1e-5, 1e-5, 1e-5, 1e-5 * base[0]};
  std::array<double, kElementCount> info{};
  for (std::size_t k = 0; k < kElementCount; ++k) {
    auto plus = base, minus = base;
    plus[k] += steps[k];
    minus[k] -= steps[k];
    if (k == 2 && minus[k] < 0.0) minus[k] = 0.0; // one-sided at circular orbits
    const double width = plus[k] - minus[k];
    const KeplerOrbit op = KeplerOrbit::from_array(plus);
    const KeplerOrbit om = KeplerOrbit::from_array(minus);
    for (const Observation &o : observations) {
      const SkyPosition a = propagate(op, o.epoch);
      const SkyPosition b = propagate(om, o.epoch);
      const double gx = (a.dx - b.dx) / width;
      const double gy = (a.dy - b.dy) / width;
      info[k] += (gx * gx + gy * gy) / (o.sigma * o.sigma);
    }
  }
  std::array<double, kElementCount> scales{};
  for (std::size_t k = 0; k < kElementCount; ++k)
    scales[k] = info[k] > 0.0 ? factor / std::sqrt(info[k]) : 0.0;
  return scales;
}

} // namespace astroinfer::orbit
