#pragma once

#include <optional>
#include <span>
#include <vector>

#include "astroinfer/heavytail/components.hpp"

namespace astroinfer::heavytail {

struct FitConfig {
  double q_lo = 0.05;
  double q_hi = 0.95;
  std::optional<Regime> regime{}; // nullopt: decide from the tail index
  double regime_threshold = 2.0;
  std::optional<std::size_t> hill_k{}; // order statistics for the regime decision; default sqrt(n)

  void validate() const;
};

struct MixtureFit {
  TailMixture mixture;
  Regime regime = Regime::light;
  std::optional<double> tail_exponent{}; // set when the regime was decided automatically
};

/// Empirical quantile with linear interpolation between order statistics
/// (the "type 7" definition). `sorted` must be ascending and nonempty.
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double p);

/// Scaled Beta on [lo, hi] fitted by moments, then refined by Newton steps on
/// the likelihood. Points on the boundary are nudged inside by 1e-12 of the
/// width. Throws InvalidInput for fewer than two points or zero variance.
[[nodiscard]] ScaledBeta fit_scaled_beta(std::span<const double> values, double lo, double hi);

/// Maximum-likelihood Pareto tail attached at `anchor` (scale and index
/// jointly; the scale is profiled out by Brent's method). All values must lie
/// strictly beyond the anchor on the given side.
[[nodiscard]] TranslatedPareto fit_translated_pareto(std::span<const double> values, double anchor,
                                                     TailSide side);

/// Three-piece fit: splits at the q_lo / q_hi empirical quantiles, scaled
/// Beta center, Pareto tails in the heavy regime and scaled Beta tails in the
/// light regime, weights equal to the empirical mass of each piece.
/// Needs at least 100 values.
[[nodiscard]] MixtureFit fit_mixture(std::span<const double> values, const FitConfig &config = {});

} // namespace astroinfer::heavytail
