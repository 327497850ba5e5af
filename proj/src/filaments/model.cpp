#include "astroinfer/filaments/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/samplers/metropolis.hpp"

namespace astroinfer::filaments {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PairContact {
  bool touching = false;
  bool connected[2][2] = {{false, false}, {false, false}}; // [end of a][end of b]
};

PairContact contact(const Segment &a, const Segment &b, double epsilon, double tau) {
  PairContact pc;
  const auto ea = a.endpoints();
  const auto eb = b.endpoints();
  const bool aligned = axis_angle(a.direction(), b.direction()) < tau;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (norm(ea[i] - eb[j]) < epsilon) {
        pc.touching = true;
        // Overlapping parallel segments share an extremity too; a link needs them on opposite sides.
        pc.connected[i][j] = aligned && dot(a.center - ea[i], b.center - eb[j]) < 0.0;
      }
  return pc;
}

} // namespace

void FilamentParams::validate() const {
  if (!(half_length_min > 0.0) || !(half_length_max >= half_length_min))
    throw InvalidInput("half-length bounds must satisfy 0 < min <= max");
  if (!(radius > 0.0)) throw InvalidInput("segment radius must be positive");
  if (!(epsilon() > 0.0)) throw InvalidInput("connection distance must be positive");
  if (!(alignment_angle > 0.0) || alignment_angle > std::numbers::pi / 2.0)
    throw InvalidInput("alignment angle must lie in (0, pi/2]");
  if (!(hard_core() >= 0.0)) throw InvalidInput("hard-core distance must be nonnegative");
  if (!(mu >= 0.0)) throw InvalidInput("mu must be nonnegative");
  if (!(kappa > 0.0)) throw InvalidInput("kappa must be positive");
  if (!(penalty >= 0.0) || !std::isfinite(penalty)) throw InvalidInput("penalty must be finite and nonnegative");
  if (!(balance >= 0.0 && balance <= 1.0)) throw InvalidInput("balance must lie in [0, 1]");
  if (!(intensity > 0.0)) throw InvalidInput("reference intensity must be positive");
  if (!(center_step >= 0.0) || !(angle_step >= 0.0) || !(length_step >= 0.0))
    throw InvalidInput("proposal steps must be nonnegative");
  for (double w : {w0, w1, w2})
    if (!std::isfinite(w)) throw InvalidInput("connection rewards must be finite");
}

ParameterVector FilamentParams::theta() const {
  validate();
  const double inf = kInf;
  return ParameterVector(
      {"interaction.w0", "interaction.w1", "interaction.w2", "interaction.eps", "interaction.tau",
       "interaction.hard_core", "data.mu", "data.kappa", "data.penalty", "data.balance"},
      {w0, w1, w2, epsilon(), alignment_angle, hard_core(), mu, kappa, penalty, balance},
      {{-inf, inf}, {-inf, inf}, {-inf, inf}, {0.0, inf}, {0.0, std::numbers::pi / 2.0}, {0.0, inf},
       {0.0, inf}, {0.0, inf}, {0.0, inf}, {0.0, 1.0}});
}

InteractionParams InteractionParams::from(const ParameterVector &theta, const FilamentParams &flags) {
  return {theta.at("interaction.w0"),
          theta.at("interaction.w1"),
          theta.at("interaction.w2"),
          theta.at("interaction.eps"),
          theta.at("interaction.tau"),
          theta.at("interaction.hard_core"),
          flags.forbid_misaligned_contacts,
          flags.forbid_overlap};
}

DataParams DataParams::from(const ParameterVector &theta) {
  return {theta.at("data.mu"), theta.at("data.kappa"), theta.at("data.penalty"),
          theta.has("data.balance") ? theta.at("data.balance") : 0.0};
}

std::vector<int> connectivity(const MarkedConfiguration &config, double epsilon, double tau) {
  const auto &segs = config.segments;
  std::vector<std::array<bool, 2>> end_connected(segs.size(), {false, false});
  for (std::size_t a = 0; a < segs.size(); ++a)
    for (std::size_t b = a + 1; b < segs.size(); ++b) {
      const PairContact pc = contact(segs[a], segs[b], epsilon, tau);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          if (pc.connected[i][j]) {
            end_connected[a][i] = true;
            end_connected[b][j] = true;
          }
    }
  std::vector<int> counts(segs.size());
  for (std::size_t k = 0; k < segs.size(); ++k)
    counts[k] = int(end_connected[k][0]) + int(end_connected[k][1]);
  return counts;
}

FilamentStats sufficient_statistics(const MarkedConfiguration &config, double epsilon, double tau) {
  FilamentStats s;
  s.n_total = config.segments.size();
  for (int c : connectivity(config, epsilon, tau)) {
    if (c == 1) ++s.n_one_connected;
    if (c == 2) ++s.n_two_connected;
  }
  return s;
}

double interaction_energy(const MarkedConfiguration &config, const InteractionParams &p) {
  const auto &segs = config.segments;
  std::vector<std::array<bool, 2>> end_connected(segs.size(), {false, false});
  for (std::size_t a = 0; a < segs.size(); ++a)
    for (std::size_t b = a + 1; b < segs.size(); ++b) {
      const Segment &sa = segs[a];
      const Segment &sb = segs[b];
      if (norm(sa.center - sb.center) < p.hard_core) return kInf;
      if (p.forbid_overlap && (sa.covers(sb.center, sa.radius) || sb.covers(sa.center, sb.radius)))
        return kInf;
      const PairContact pc = contact(sa, sb, p.epsilon, p.tau);
      if (p.forbid_overlap && !pc.touching && axis_distance(sa, sb) < sa.radius + sb.radius)
        return kInf;
      if (!pc.touching) continue;
      bool any = false;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          if (pc.connected[i][j]) {
            end_connected[a][i] = true;
            end_connected[b][j] = true;
            any = true;
          }
      if (!any && p.forbid_misaligned_contacts) return kInf;
    }
  double u = 0.0;
  for (const auto &ends : end_connected) {
    switch (int(ends[0]) + int(ends[1])) {
    case 0: u -= p.w0; break;
    case 1: u -= p.w1; break;
    default: u -= p.w2; break;
    }
  }
  return u;
}

CylinderCounts count_galaxies(const Segment &s, const GalaxyCatalog &catalog) {
  CylinderCounts c;
  const Vec3 u = s.direction();
  const double r2 = s.radius * s.radius;
  const double R2 = 4.0 * r2;
  for (const Vec3 &p : catalog.positions) {
    const Vec3 d = p - s.center;
    const double t = dot(d, u);
    if (std::abs(t) > s.half_length) continue;
    const double perp2 = norm2(d) - t * t;
    if (perp2 <= R2) {
      ++c.outer;
      if (perp2 <= r2) {
        ++c.inner;
        if (t < 0.0) ++c.inner_low;
      }
    }
  }
  return c;
}

double segment_data_energy(const CylinderCounts &c, const DataParams &p) {
  const auto n_in = static_cast<double>(c.inner);
  const auto n_shell = static_cast<double>(c.outer - c.inner);
  double u = -std::log1p(n_in) + std::log1p(p.mu);
  const auto n_low = static_cast<double>(c.inner_low);
  const bool lopsided = std::min(n_low, n_in - n_low) < p.balance * n_in / 2.0;
  if (n_in <= p.kappa * n_shell || lopsided) u += p.penalty;
  return u;
}

double data_energy(const MarkedConfiguration &config, const GalaxyCatalog &catalog,
                   const DataParams &p) {
  double u = 0.0;
  for (const auto &s : config.segments) u += segment_data_energy(count_galaxies(s, catalog), p);
  return u;
}

void validate_configuration(const MarkedConfiguration &config, const FilamentParams &params) {
  constexpr double slack = 1e-12;
  for (std::size_t i = 0; i < config.segments.size(); ++i) {
    const Segment &s = config.segments[i];
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (!(s.half_length > 0.0)) throw InvalidInput(where + "half-length must be positive");
    if (!(s.radius > 0.0)) throw InvalidInput(where + "radius must be positive");
    if (s.half_length < params.half_length_min * (1 - slack) ||
        s.half_length > params.half_length_max * (1 + slack))
      throw InvalidInput(where + "half-length outside the configured range");
    if (!std::isfinite(s.polar) || !std::isfinite(s.azimuth))
      throw InvalidInput(where + "orientation must be finite");
    if (!config.window.contains(s.center)) throw InvalidInput(where + "center outside the window");
  }
}

FilamentEnergyModel make_energy_model(const FilamentParams &params) {
  params.validate();
  FilamentEnergyModel model;
  model.interaction = [params](const MarkedConfiguration &x, const ParameterVector &theta) {
    return interaction_energy(x, InteractionParams::from(theta, params));
  };
  model.data = [](const MarkedConfiguration &x, const ParameterVector &theta,
                  const GalaxyCatalog &d) { return data_energy(x, d, DataParams::from(theta)); };
  model.validate = [params](const MarkedConfiguration &x) { validate_configuration(x, params); };
  return model;
}

ObjectProposals<Segment> make_proposals(const FilamentParams &params, const Box &window) {
  params.validate();
  if (!window.valid()) throw InvalidInput("window is degenerate");
  ObjectProposals<Segment> prop;
  prop.reference_mass = params.intensity * window.volume();
  prop.birth = [params, window](Rng &rng) {
    Vec3 c;
    for (int k = 0; k < 3; ++k) c[k] = rng.uniform(window.lo[k], window.hi[k]);
    const double polar = std::acos(1.0 - 2.0 * rng.uniform());
    const double azimuth = 2.0 * std::numbers::pi * rng.uniform();
    const double half = rng.uniform(params.half_length_min, params.half_length_max);
    return Segment{c, polar, azimuth, half, params.radius};
  };
  prop.change = [params, window](const Segment &s, Rng &rng) -> std::optional<Segment> {
    Segment out = s;
    switch (rng.below(3)) {
    case 0: {
      for (int k = 0; k < 3; ++k) out.center[k] += params.center_step * rng.normal();
      if (!window.contains(out.center)) return std::nullopt;
      break;
    }
    case 1: {
      Vec3 u = s.direction();
      for (int k = 0; k < 3; ++k) u[k] += params.angle_step * rng.normal();
      if (!(norm(u) > 0.0)) return std::nullopt;
      out = Segment::along(s.center, u, s.half_length, s.radius);
      break;
    }
    default:
      out.half_length = reflect_into(s.half_length + params.length_step * rng.normal(),
                                     params.half_length_min, params.half_length_max);
      break;
    }
    return out;
  };
  return prop;
}

} // namespace astroinfer::filaments
