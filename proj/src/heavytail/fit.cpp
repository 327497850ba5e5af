#include "astroinfer/heavytail/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/tools/minima.hpp>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/heavytail/tail_index.hpp"

namespace astroinfer::heavytail {

void FitConfig::validate() const {
  if (!(q_lo > 0.0 && q_lo < q_hi && q_hi < 1.0))
    throw InvalidInput("split quantiles must satisfy 0 < q_lo < q_hi < 1");
  if (!(regime_threshold > 0.0)) throw InvalidInput("regime threshold must be positive");
  if (hill_k && *hill_k == 0) throw InvalidInput("the Hill estimate needs k >= 1");
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InvalidInput("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile level must lie in [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

ScaledBeta fit_scaled_beta(std::span<const double> values, double lo, double hi) {
  if (values.size() < 2) throw InvalidInput("a Beta fit needs at least two values");
  if (!(lo < hi)) throw InvalidInput("Beta support must satisfy lo < hi");
  const double width = hi - lo;
  const double eps = 1e-12;
  std::vector<double> u;
  u.reserve(values.size());
  for (double x : values) u.push_back(std::clamp((x - lo) / width, eps, 1.0 - eps));
  const auto n = static_cast<double>(u.size());

  const double m = std::accumulate(u.begin(), u.end(), 0.0) / n;
  double v = 0.0;
  for (double x : u) v += (x - m) * (x - m);
  v /= n;
  if (!(v > 0.0)) throw InvalidInput("degenerate sample: zero variance");

  double common = m * (1.0 - m) / v - 1.0;
  if (!(common > 0.0)) common = 1e-3;
  double a = m * common;
  double b = (1.0 - m) * common;

  double s1 = 0.0, s2 = 0.0;
  for (double x : u) {
    s1 += std::log(x);
    s2 += std::log1p(-x);
  }
  s1 /= n;
  s2 /= n;

  using boost::math::digamma;
  using boost::math::trigamma;
  for (int iter = 0; iter < 100; ++iter) {
    const double psi_ab = digamma(a + b);
    const double g1 = s1 - digamma(a) + psi_ab;
    const double g2 = s2 - digamma(b) + psi_ab;
    const double t_ab = trigamma(a + b);
    const double h11 = -trigamma(a) + t_ab;
    const double h22 = -trigamma(b) + t_ab;
    const double h12 = t_ab;
    const double det = h11 * h22 - h12 * h12;
    if (!(std::abs(det) > 0.0)) break;
    double da = -(h22 * g1 - h12 * g2) / det;
    double db = -(-h12 * g1 + h11 * g2) / det;
    // Keep both shapes positive.
    double step = 1.0;
    while (a + step * da <= 0.0 || b + step * db <= 0.0) step *= 0.5;
    a += step * da;
    b += step * db;
    if (std::abs(step * da) <= 1e-12 * a && std::abs(step * db) <= 1e-12 * b) break;
  }
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("Beta likelihood refinement diverged");
  return ScaledBeta{a, b, lo, hi};
}

TranslatedPareto fit_translated_pareto(std::span<const double> values, double anchor, TailSide side) {
  if (values.size() < 2) throw InvalidInput("a Pareto tail fit needs at least two values");
  std::vector<double> y;
  y.reserve(values.size());
  for (double x : values) {
    const double d = side == TailSide::upper ? x - anchor : anchor - x;
    if (!(d > 0.0)) throw InvalidInput("tail values must lie strictly beyond the split point");
    y.push_back(d);
  }
  const auto n = static_cast<double>(y.size());
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;

  auto index_given = [&](double scale) {
    double s = 0.0;
    for (double v : y) s += std::log1p(v / scale);
    return n / s;
  };
  // Negative profile log-likelihood in log(scale).
  auto neg_profile = [&](double log_scale) {
    const double scale = std::exp(log_scale);
    const double a = index_given(scale);
    return -(n * std::log(a) - n * log_scale - n - n / a);
  };
  const double lo = std::log(ybar * 1e-6);
  const double hi = std::log(ybar * 1e6);
  const auto [log_scale, value] =
      boost::math::tools::brent_find_minima(neg_profile, lo, hi, 52);
  (void)value;
  const double scale = std::exp(log_scale);
  return TranslatedPareto{scale, index_given(scale), anchor, side};
}

MixtureFit fit_mixture(std::span<const double> values, const FitConfig &config) {
  config.validate();
  if (values.size() < 100) throw InvalidInput("a mixture fit needs at least 100 values");
  std::vector<double> sorted(values.begin(), values.end());
  for (double x : sorted)
    if (!std::isfinite(x)) throw InvalidInput("values must be finite");
  std::sort(sorted.begin(), sorted.end());

  const double split_lo = quantile_sorted(sorted, config.q_lo);
  const double split_hi = quantile_sorted(sorted, config.q_hi);
  if (!(split_lo < split_hi)) throw InvalidInput("degenerate center: split points coincide");

  std::vector<double> left, center, right;
  for (double x : sorted) {
    if (x < split_lo)
      left.push_back(x);
    else if (x > split_hi)
      right.push_back(x);
    else
      center.push_back(x);
  }

  MixtureFit out;
  if (config.regime) {
    out.regime = *config.regime;
  } else {
    const auto root_n = static_cast<std::size_t>(std::sqrt(static_cast<double>(sorted.size())));
    const std::size_t k = std::clamp<std::size_t>(config.hill_k.value_or(root_n), 1, sorted.size() - 1);
    const double a = tail_index(sorted, k, ExceedanceSide::absolute);
    out.tail_exponent = a;
    out.regime = is_heavy(a, config.regime_threshold) ? Regime::heavy : Regime::light;
  }

  TailMixture &m = out.mixture;
  m.split_lo = split_lo;
  m.split_hi = split_hi;
  m.center = fit_scaled_beta(center, split_lo, split_hi);
  const auto n = static_cast<double>(sorted.size());
  m.weights = {double(left.size()) / n, double(center.size()) / n, double(right.size()) / n};

  auto fit_tail = [&](const std::vector<double> &tail, TailSide side, double split,
                      double extreme) -> TailComponent {
    if (out.regime == Regime::heavy) return fit_translated_pareto(tail, split, side);
    const double lo = side == TailSide::lower ? extreme : split;
    const double hi = side == TailSide::lower ? split : extreme;
    return fit_scaled_beta(tail, lo, hi);
  };
  // An empty tail keeps weight 0 and a placeholder component of the right kind.
  auto placeholder = [&](TailSide side, double split) -> TailComponent {
    if (out.regime == Regime::heavy) return TranslatedPareto{1.0, 1.0, split, side};
    const double w = split_hi - split_lo;
    return side == TailSide::lower ? TailComponent{ScaledBeta{1.0, 1.0, split - w, split}}
                                   : TailComponent{ScaledBeta{1.0, 1.0, split, split + w}};
  };
  if (left.size() == 1 || right.size() == 1)
    throw InvalidInput("a tail holds a single value; widen the split quantiles");
  m.left = left.size() >= 2 ? fit_tail(left, TailSide::lower, split_lo, sorted.front())
                            : placeholder(TailSide::lower, split_lo);
  m.right = right.size() >= 2 ? fit_tail(right, TailSide::upper, split_hi, sorted.back())
                              : placeholder(TailSide::upper, split_hi);
  m.validate();
  return out;
}

} // namespace astroinfer::heavytail
