#include "astroinfer/samplers/metropolis.hpp"

#include <iomanip>

#include "astroinfer/samplers/anneal.hpp"

namespace astroinfer {

double reflect_into(double x, double lo, double hi) noexcept {
  const double width = hi - lo;
  if (!(width > 0.0)) return lo;
  if (x >= lo && x <= hi) return x;
  // Reflection is periodic with period 2*width.
  double y = std::fmod(x - lo, 2.0 * width);
  if (y < 0.0) y += 2.0 * width;
  return y <= width ? lo + y : hi - (y - width);
}

double wrap_onto(double x, double period) noexcept {
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  if (y >= period) y -= period; // fmod of tiny negatives can round up to period
  return y;
}

Proposal propose_random_walk(const ParameterVector &current, std::span<const double> scales,
                             Rng &rng) {
  if (scales.size() != current.size())
    throw InvalidInput("one proposal scale per parameter is required");
  const auto &bounds = current.bounds();
  Proposal p{current.values(), true};
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (!(scales[i] >= 0.0)) throw InvalidInput("proposal scales must be nonnegative");
    if (scales[i] == 0.0) continue;
    const double x = p.values[i] + scales[i] * rng.normal();
    const Bound &b = bounds[i];
    if (b.period) {
      p.values[i] = wrap_onto(x, *b.period);
      if (!b.contains(p.values[i])) p.in_bounds = false;
    } else {
      p.values[i] = reflect_into(x, b.lo, b.hi);
    }
  }
  return p;
}

std::string describe(const ParameterVector &p) {
  std::ostringstream os;
  os << std::setprecision(17) << '{';
  for (std::size_t i = 0; i < p.size(); ++i)
    os << (i ? ", " : "") << p.names()[i] << '=' << p[i];
  os << '}';
  return os.str();
}

MhStep mh_fixed_dim_step(const ParameterVector &current, double current_log_target,
                         const LogDensity &target, std::span<const double> scales, Rng &rng) {
  Proposal prop = propose_random_walk(current, scales, rng);
  if (!prop.in_bounds) return {current, current_log_target, false};
  ParameterVector candidate = current.with_values(std::move(prop.values));
  const double lt = target(candidate);
  if (std::isnan(lt))
    throw ChainAborted("log target evaluated to NaN", "proposal " + describe(candidate) +
                                                          " from " + describe(current));
  if (lt == std::numeric_limits<double>::infinity())
    throw ChainAborted("log target evaluated to +infinity", "proposal " + describe(candidate));
  if (metropolis_accept(lt - current_log_target, rng)) return {std::move(candidate), lt, true};
  return {current, current_log_target, false};
}

MhStep mh_fixed_dim_step(const ParameterVector &current, const LogDensity &target,
                         std::span<const double> scales, Rng &rng) {
  const double lt = target(current);
  if (!std::isfinite(lt))
    throw ChainAborted("log target is not finite at the current state", describe(current));
  return mh_fixed_dim_step(current, lt, target, scales, rng);
}

ChainRecord<ParameterVector> run_random_walk(const ParameterVector &initial,
                                             const LogDensity &target,
                                             std::span<const double> scales,
                                             const RunOptions &options, Rng &rng) {
  const std::size_t every = options.record_every == 0 ? 1 : options.record_every;
  ChainRecord<ParameterVector> chain;
  chain.seed = rng.seed();
  ParameterVector state = initial;
  double lt = target(state);
  if (!std::isfinite(lt))
    throw ChainAborted("log target is not finite at the initial state", describe(state));
  const std::size_t reserve = options.n_steps / every + 1;
  chain.states.reserve(reserve);
  chain.log_targets.reserve(reserve);
  chain.steps.reserve(reserve);
  chain.moves.reserve(reserve);
  for (std::size_t t = 0; t < options.n_steps; ++t) {
    MhStep s = mh_fixed_dim_step(state, lt, target, scales, rng);
    state = std::move(s.next);
    lt = s.log_target;
    if (t % every == 0) chain.push(t, state, lt, s.accepted, MoveKind::random_walk);
  }
  return chain;
}

AnnealResult<ParameterVector> anneal_parameters(const ParameterVector &initial,
                                                const std::function<double(const ParameterVector &)> &energy,
                                                std::span<const double> scales,
                                                const AnnealingSchedule &schedule, Rng &rng,
                                                const AnnealOptions &options) {
  const double u0 = energy(initial);
  auto kernel = [&](const ParameterVector &s, double u, double temperature, Rng &g) {
    StepResult<ParameterVector> out{s, u, false, MoveKind::random_walk};
    Proposal prop = propose_random_walk(s, scales, g);
    if (!prop.in_bounds) return out;
    ParameterVector candidate = s.with_values(std::move(prop.values));
    const double e = energy(candidate);
    if (std::isnan(e)) throw ChainAborted("energy evaluated to NaN", describe(candidate));
    if (is_hard_core(e)) return out;
    if (metropolis_accept(-(e - u) / temperature, g)) {
      out.state = std::move(candidate);
      out.energy = e;
      out.accepted = true;
    }
    return out;
  };
  return anneal(initial, u0, schedule, kernel, rng, options);
}

} // namespace astroinfer
