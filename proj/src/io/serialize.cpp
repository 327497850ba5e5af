#include "astroinfer/io/serialize.hpp"

#include <fstream>
#include <system_error>

#include "astroinfer/core/format.hpp"
#include "astroinfer/orbit/orbit.hpp"

namespace astroinfer::io {

using nlohmann::json;

namespace {

json vec(const filaments::Vec3 &v) { return json::array({v[0], v[1], v[2]}); }

} // namespace

json to_json(const filaments::Box &b) { return {{"lo", vec(b.lo)}, {"hi", vec(b.hi)}}; }

json to_json(const filaments::FilamentParams &p) {
  return {{"half_length_min", p.half_length_min},
          {"half_length_max", p.half_length_max},
          {"radius", p.radius},
          {"w0", p.w0},
          {"w1", p.w1},
          {"w2", p.w2},
          {"connection_distance", p.epsilon()},
          {"alignment_angle", p.alignment_angle},
          {"hard_core_distance", p.hard_core()},
          {"forbid_misaligned_contacts", p.forbid_misaligned_contacts},
          {"forbid_overlap", p.forbid_overlap},
          {"mu", p.mu},
          {"kappa", p.kappa},
          {"penalty", p.penalty},
          {"balance", p.balance},
          {"intensity", p.intensity},
          {"center_step", p.center_step},
          {"angle_step", p.angle_step},
          {"length_step", p.length_step}};
}

json to_json(const filaments::Segment &s) {
  return {{"center", vec(s.center)},
          {"direction", vec(s.direction())},
          {"polar", s.polar},
          {"azimuth", s.azimuth},
          {"half_length", s.half_length},
          {"radius", s.radius}};
}

json to_json(const filaments::FilamentStats &s) {
  return {{"n_total", s.n_total}, {"n_one_connected", s.n_one_connected}, {"n_two_connected", s.n_two_connected}};
}

json to_json(const orbit::KeplerOrbit &o) {
  json j = json::object();
  const auto v = o.to_array();
  const auto &names = orbit::element_names();
  for (std::size_t k = 0; k < v.size(); ++k) j[std::string(names[k])] = v[k];
  return j;
}

json to_json(const orbit::PriorBox &p) {
  json j = json::object();
  const auto &names = orbit::element_names();
  for (std::size_t k = 0; k < orbit::kElementCount; ++k)
    j[std::string(names[k])] = json::array({p.bounds[k].lo, p.bounds[k].hi});
  return j;
}

json summary_to_json(const orbit::OrbitSummary &s, std::span<const ParameterVector> samples) {
  json rows = json::array();
  const auto &names = orbit::element_names();
  const auto &labels = orbit::element_labels();
  for (std::size_t k = 0; k < orbit::kElementCount; ++k) {
    const auto &e = s.elements[k];
    rows.push_back({{"parameter", std::string(names[k])},
                    {"label", std::string(labels[k])},
                    {"min", e.min},
                    {"median", e.median},
                    {"mean", e.mean},
                    {"max", e.max},
                    {"sd", e.sd}});
  }
  // mass is a derived quantity: summarize it per sample
  std::vector<std::vector<double>> mass;
  mass.reserve(samples.size());
  for (const auto &p : samples)
    mass.push_back({orbit::system_mass_kg(orbit::KeplerOrbit::from_array(p.values()))});
  if (!mass.empty()) {
    const auto m = orbit::summarize(mass)[0];
    rows.push_back({{"parameter", "system_mass"},
                    {"label", "System mass, kg"},
                    {"min", m.min},
                    {"median", m.median},
                    {"mean", m.mean},
                    {"max", m.max},
                    {"sd", m.sd}});
  }
  return {{"rows", rows},
          {"n_samples", s.n_samples},
          {"mean_orbit", to_json(s.mean_orbit())},
          {"median_orbit", to_json(s.median_orbit())}};
}

const char *to_string(heavytail::Regime r) noexcept { return r == heavytail::Regime::heavy ? "heavy" : "light"; }

json to_json(const heavytail::TailComponent &c) {
  if (const auto *b = std::get_if<heavytail::ScaledBeta>(&c))
    return {{"type", "beta"}, {"alpha", b->alpha}, {"beta", b->beta}, {"lo", b->lo}, {"hi", b->hi}};
  const auto &p = std::get<heavytail::TranslatedPareto>(c);
  return {{"type", "pareto"},
          {"scale", p.scale},
          {"index", p.index},
          {"anchor", p.anchor},
          {"side", p.side == heavytail::TailSide::upper ? "upper" : "lower"}};
}

json to_json(const heavytail::TailMixture &m) {
  return {{"left", to_json(m.left)},
          {"center", to_json(heavytail::TailComponent{m.center})},
          {"right", to_json(m.right)},
          {"split_lo", m.split_lo},
          {"split_hi", m.split_hi},
          {"weights", m.weights},
          {"regime", to_string(m.regime())}};
}

json to_json(const heavytail::MixtureFit &f) {
  json j = {{"mixture", to_json(f.mixture)}, {"regime", to_string(f.regime)}};
  j["tail_exponent"] = f.tail_exponent ? json(*f.tail_exponent) : json(nullptr);
  return j;
}

json to_json(const heavytail::FitConfig &c) {
  return {{"q_lo", c.q_lo},
          {"q_hi", c.q_hi},
          {"regime", c.regime ? to_string(*c.regime) : "auto"},
          {"threshold", c.regime_threshold},
          {"hill_k", c.hill_k ? json(*c.hill_k) : json(nullptr)}};
}

json to_json(const heavytail::CoverageConfig &c) {
  return {{"n_rep", c.n_rep}, {"percentiles", c.percentiles}, {"ci_level", c.ci_level}};
}

void write_segments_csv(std::ostream &os, const filaments::MarkedConfiguration &c,
                        std::span<const int> connections) {
  os << "cx,cy,cz,ux,uy,uz,half_length,radius,connections\n";
  for (std::size_t i = 0; i < c.segments.size(); ++i) {
    const auto &s = c.segments[i];
    const auto u = s.direction();
    for (double v : {s.center[0], s.center[1], s.center[2], u[0], u[1], u[2], s.half_length, s.radius})
      os << format_double(v) << ',';
    os << connections[i] << '\n';
  }
}

void write_predictions_csv(std::ostream &os, std::span<const orbit::Observation> obs,
                           const orbit::KeplerOrbit &orbit) {
  os << "epoch_rjd,dx_km,dy_km,sigma_km,pred_dx_km,pred_dy_km\n";
  for (const auto &o : obs) {
    const auto p = orbit::propagate(orbit, o.epoch);
    os << format_double(o.epoch) << ',' << format_double(o.delta_x) << ',' << format_double(o.delta_y) << ','
       << format_double(o.sigma) << ',' << format_double(p.dx) << ',' << format_double(p.dy) << '\n';
  }
}

void write_map_csv(std::ostream &os, const heavytail::CoverageMap &map) {
  os << "i_deg,w_deg,coverage,regime\n";
  for (const auto &c : map.cells) {
    os << format_double(c.inclination) << ',' << format_double(c.perihelion_argument) << ',';
    if (c.coverage) os << format_double(*c.coverage);
    os << ',';
    if (c.regime) os << to_string(*c.regime);
    os << '\n';
  }
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out << text;
  if (!out) throw std::filesystem::filesystem_error("cannot write", path, std::make_error_code(std::errc::io_error));
}

} // namespace astroinfer::io
