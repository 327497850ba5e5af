#pragma once

#include <array>
#include <optional>
#include <variant>

namespace astroinfer::heavytail {

/// Beta(alpha, beta) mapped affinely onto [lo, hi].
struct ScaledBeta {
  double alpha = 1.0;
  double beta = 1.0;
  double lo = 0.0;
  double hi = 1.0;

  void validate() const;
  [[nodiscard]] double pdf(double x) const;
  [[nodiscard]] double cdf(double x) const;
  [[nodiscard]] double quantile(double u) const;
  [[nodiscard]] double mean() const noexcept;

  friend bool operator==(const ScaledBeta &, const ScaledBeta &) = default;
};

enum class TailSide { lower, upper };

/// Pareto(scale, index) translated so that its support starts at `anchor`
/// and extends away from the center: for the upper side x = anchor + y,
/// for the lower side x = anchor - y, where y >= 0 has survival function
/// (scale / (scale + y))^index.
struct TranslatedPareto {
  double scale = 1.0;
  double index = 1.0;
  double anchor = 0.0;
  TailSide side = TailSide::upper;

  void validate() const;
  [[nodiscard]] double pdf(double x) const;
  [[nodiscard]] double cdf(double x) const;
  [[nodiscard]] double quantile(double u) const;
  /// Mean; infinite when index <= 1.
  [[nodiscard]] double mean() const noexcept;

  friend bool operator==(const TranslatedPareto &, const TranslatedPareto &) = default;
};

using TailComponent = std::variant<ScaledBeta, TranslatedPareto>;

enum class Regime { heavy, light };

/// Three pieces with contiguous supports:
///   left tail  (-inf or lo, split_lo)
///   center     [split_lo, split_hi]
///   right tail (split_hi, hi or +inf)
/// Weights are (left, center, right).
struct TailMixture {
  TailComponent left;
  ScaledBeta center;
  TailComponent right;
  double split_lo = 0.0;
  double split_hi = 1.0;
  std::array<double, 3> weights{0.0, 1.0, 0.0};

  /// Throws InvalidInput when pieces overlap or leave gaps, weights are not a
  /// probability vector, or a component is invalid.
  void validate() const;
  [[nodiscard]] double pdf(double x) const;
  [[nodiscard]] double cdf(double x) const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] Regime regime() const noexcept;

  /// Image of the mixture under x -> scale * x + shift, scale > 0.
  [[nodiscard]] TailMixture affine(double scale, double shift) const;

  /// Component density/cdf helpers.
  [[nodiscard]] static double pdf(const TailComponent &c, double x);
  [[nodiscard]] static double cdf(const TailComponent &c, double x);
  [[nodiscard]] static double quantile(const TailComponent &c, double u);
};

} // namespace astroinfer::heavytail
