#include "astroinfer/heavytail/components.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "astroinfer/core/errors.hpp"

namespace astroinfer::heavytail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void ScaledBeta::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw InvalidInput("Beta shapes must be positive and finite");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidInput("scaled Beta support must satisfy lo < hi");
}

double ScaledBeta::pdf(double x) const {
  if (x < lo || x > hi) return 0.0;
  const double w = hi - lo;
  // distances to both ends: 1 - u loses everything within an ulp of hi
  const double u = (x - lo) / w;
  const double v = (hi - x) / w;
  if ((u == 0.0 && alpha < 1.0) || (v == 0.0 && beta < 1.0)) return kInf;
  if ((u == 0.0 && alpha > 1.0) || (v == 0.0 && beta > 1.0)) return 0.0;
  const double log_pdf = (alpha - 1.0) * std::log(u) + (beta - 1.0) * std::log(v) -
                         std::log(boost::math::beta(alpha, beta));
  return std::exp(log_pdf) / w;
}

double ScaledBeta::cdf(double x) const {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  return boost::math::ibeta(alpha, beta, (x - lo) / (hi - lo));
}

double ScaledBeta::quantile(double u) const {
  if (u <= 0.0) return lo;
  if (u >= 1.0) return hi;
  return lo + (hi - lo) * boost::math::ibeta_inv(alpha, beta, u);
}

double ScaledBeta::mean() const noexcept { return lo + (hi - lo) * alpha / (alpha + beta); }

void TranslatedPareto::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInput("Pareto scale must be positive");
  if (!(index > 0.0) || !std::isfinite(index)) throw InvalidInput("Pareto index must be positive");
  if (!std::isfinite(anchor)) throw InvalidInput("Pareto anchor must be finite");
}

double TranslatedPareto::pdf(double x) const {
  const double y = side == TailSide::upper ? x - anchor : anchor - x;
  if (y < 0.0) return 0.0;
  return index / scale * std::pow(1.0 + y / scale, -(index + 1.0));
}

double TranslatedPareto::cdf(double x) const {
  const double y = side == TailSide::upper ? x - anchor : anchor - x;
  if (y <= 0.0) return side == TailSide::upper ? 0.0 : 1.0;
  const double survival = std::pow(1.0 + y / scale, -index);
  return side == TailSide::upper ? 1.0 - survival : survival;
}

double TranslatedPareto::quantile(double u) const {
  // Survival beyond the anchor equals (1 - u) on the upper side, u below.
  const double s = side == TailSide::upper ? 1.0 - u : u;
  if (s <= 0.0) return side == TailSide::upper ? kInf : -kInf;
  if (s >= 1.0) return anchor;
  const double y = scale * std::expm1(-std::log(s) / index);
  return side == TailSide::upper ? anchor + y : anchor - y;
}

double TranslatedPareto::mean() const noexcept {
  if (index <= 1.0) return side == TailSide::upper ? kInf : -kInf;
  const double y = scale / (index - 1.0);
  return side == TailSide::upper ? anchor + y : anchor - y;
}

double TailMixture::pdf(const TailComponent &c, double x) {
  return std::visit([x](const auto &d) { return d.pdf(x); }, c);
}

double TailMixture::cdf(const TailComponent &c, double x) {
  return std::visit([x](const auto &d) { return d.cdf(x); }, c);
}

double TailMixture::quantile(const TailComponent &c, double u) {
  return std::visit([u](const auto &d) { return d.quantile(u); }, c);
}

void TailMixture::validate() const {
  if (!std::isfinite(split_lo) || !std::isfinite(split_hi) || !(split_lo < split_hi))
    throw InvalidInput("mixture splits must satisfy split_lo < split_hi");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidInput("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("mixture weights must sum to 1");
  center.validate();
  const double tol = 1e-12 * std::max(1.0, std::abs(split_hi - split_lo));
  if (std::abs(center.lo - split_lo) > tol || std::abs(center.hi - split_hi) > tol)
    throw InvalidInput("center support must coincide with the split points");

  auto check_tail = [&](const TailComponent &c, TailSide side, double split) {
    if (const auto *b = std::get_if<ScaledBeta>(&c)) {
      b->validate();
      const double edge = side == TailSide::lower ? b->hi : b->lo;
      if (std::abs(edge - split) > tol)
        throw InvalidInput("Beta tail support must end at its split point");
    } else {
      const auto &p = std::get<TranslatedPareto>(c);
      p.validate();
      if (p.side != side) throw InvalidInput("Pareto tail points toward the center");
      if (std::abs(p.anchor - split) > tol)
        throw InvalidInput("Pareto tail must be anchored at its split point");
    }
  };
  check_tail(left, TailSide::lower, split_lo);
  check_tail(right, TailSide::upper, split_hi);
}

double TailMixture::pdf(double x) const {
  if (x < split_lo) return weights[0] * pdf(left, x);
  if (x > split_hi) return weights[2] * pdf(right, x);
  return weights[1] * center.pdf(x);
}

double TailMixture::cdf(double x) const {
  if (x < split_lo) return weights[0] * cdf(left, x);
  if (x > split_hi) return weights[0] + weights[1] + weights[2] * cdf(right, x);
  return weights[0] + weights[1] * center.cdf(x);
}

double TailMixture::mean() const {
  auto component_mean = [](const TailComponent &c) {
    return std::visit([](const auto &d) { return d.mean(); }, c);
  };
  double m = weights[1] * center.mean();
  if (weights[0] > 0.0) m += weights[0] * component_mean(left);
  if (weights[2] > 0.0) m += weights[2] * component_mean(right);
  return m;
}

Regime TailMixture::regime() const noexcept {
  return std::holds_alternative<TranslatedPareto>(left) ||
                 std::holds_alternative<TranslatedPareto>(right)
             ? Regime::heavy
             : Regime::light;
}

TailMixture TailMixture::affine(double scale, double shift) const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(shift))
    throw InvalidInput("affine map needs a positive finite scale");
  auto map = [&](double x) { return scale * x + shift; };
  auto map_component = [&](const TailComponent &c) -> TailComponent {
    if (const auto *b = std::get_if<ScaledBeta>(&c))
      return ScaledBeta{b->alpha, b->beta, map(b->lo), map(b->hi)};
    const auto &p = std::get<TranslatedPareto>(c);
    return TranslatedPareto{scale * p.scale, p.index, map(p.anchor), p.side};
  };
  TailMixture out = *this;
  out.left = map_component(left);
  out.right = map_component(right);
  out.center = ScaledBeta{center.alpha, center.beta, map(center.lo), map(center.hi)};
  out.split_lo = map(split_lo);
  out.split_hi = map(split_hi);
  return out;
}

} // namespace astroinfer::heavytail
