#pragma once

#include <cmath>
#include <variant>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "astroinfer/heavytail/components.hpp"

namespace oracle {

using astroinfer::heavytail::ScaledBeta;
using astroinfer::heavytail::TailMixture;
using astroinfer::heavytail::TranslatedPareto;

// Integral of f * density over one piece: tanh-sinh on the finite part; a
// Pareto piece is cut at `cut` scales and its remaining mass added analytically
// (only for f = 1).
template <class F>
double integrate_piece(const astroinfer::heavytail::TailComponent &c, F f, double cut = 1e4) {
  boost::math::quadrature::tanh_sinh<double> q;
  if (const auto *b = std::get_if<ScaledBeta>(&c)) {
    // textbook density; xc is the exact signed distance to the nearer endpoint
    // (lo - x on the left half), so shapes below 1 stay integrable up to the
    // boundary. The side must come from the sign of xc, not from x.
    const double w = b->hi - b->lo;
    const double log_norm = std::lgamma(b->alpha) + std::lgamma(b->beta) - std::lgamma(b->alpha + b->beta) + std::log(w);
    auto density = [&](double x, double xc) {
      const double left = xc < 0.0 ? -xc : x - b->lo;
      const double right = xc < 0.0 ? b->hi - x : xc;
      if (left <= 0.0 || right <= 0.0) return 0.0;
      return f(x) * std::exp((b->alpha - 1.0) * std::log(left / w) + (b->beta - 1.0) * std::log(right / w) - log_norm);
    };
    return q.integrate(density, b->lo, b->hi);
  }
  const auto &p = std::get<TranslatedPareto>(c);
  const double end = p.scale * cut;
  const double sign = p.side == astroinfer::heavytail::TailSide::upper ? 1.0 : -1.0;
  const double body = q.integrate([&](double y) { return f(p.anchor + sign * y) * p.pdf(p.anchor + sign * y); }, 0.0, end);
  return body;
}

inline double pareto_remainder(const TranslatedPareto &p, double cut = 1e4) {
  return std::pow(1.0 / (1.0 + cut), p.index);
}

inline double total_mass(const TailMixture &m) {
  auto one = [](double) { return 1.0; };
  double mass = m.weights[1] * integrate_piece(m.center, one);
  for (int side = 0; side < 2; ++side) {
    const auto &c = side == 0 ? m.left : m.right;
    const double w = m.weights[side == 0 ? 0 : 2];
    if (w == 0.0) continue;
    double piece = integrate_piece(c, one);
    if (const auto *p = std::get_if<TranslatedPareto>(&c)) piece += pareto_remainder(*p);
    mass += w * piece;
  }
  return mass;
}

} // namespace oracle
