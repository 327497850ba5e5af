#include "astroinfer/io/readers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "astroinfer/io/csv.hpp"
#include "json_fields.hpp"

namespace astroinfer::io {

using nlohmann::json;
using detail::Fields;

namespace {

constexpr std::array<std::string_view, 3> kCatalogHeader = {"x", "y", "z"};
constexpr std::array<std::string_view, 4> kObsHeader = {"epoch_rjd", "dx_km", "dy_km", "sigma_km"};
constexpr std::array<std::string_view, 3> kPertHeader = {"i_deg", "w_deg", "value"};
constexpr std::array<std::string_view, 1> kValueHeader = {"value"};

std::string at_line(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::ifstream open(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

filaments::Vec3 vec3(const json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput(what + ": expected an array of 3 numbers");
  filaments::Vec3 v{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw InvalidInput(what + ": expected an array of 3 numbers");
    v[k] = j[k].get<double>();
  }
  return v;
}

} // namespace

filaments::GalaxyCatalog read_catalog(std::istream &in, std::string_view source,
                                      const std::optional<filaments::Box> &window) {
  const auto table = read_numeric_csv(in, kCatalogHeader, source);
  if (table.rows.empty()) throw InvalidInput(std::string(source) + ": catalog has no rows");
  filaments::GalaxyCatalog cat;
  cat.positions.reserve(table.rows.size());
  for (const auto &r : table.rows) cat.positions.push_back({r[0], r[1], r[2]});

  if (window) {
    if (!window->valid()) throw InvalidInput("catalog window is degenerate");
    for (std::size_t i = 0; i < cat.positions.size(); ++i)
      if (!window->contains(cat.positions[i]))
        throw InvalidInput(at_line(source, table.lines[i]) + ": point outside the window");
    cat.window = *window;
  } else {
    filaments::Box b{cat.positions[0], cat.positions[0]};
    for (const auto &p : cat.positions)
      for (int k = 0; k < 3; ++k) {
        b.lo[k] = std::min(b.lo[k], p[k]);
        b.hi[k] = std::max(b.hi[k], p[k]);
      }
    for (int k = 0; k < 3; ++k) {
      // a flat axis still needs some thickness
      const double pad = b.hi[k] > b.lo[k] ? 0.01 * (b.hi[k] - b.lo[k]) : std::max(1.0, std::abs(b.lo[k])) * 0.01;
      b.lo[k] -= pad;
      b.hi[k] += pad;
    }
    cat.window = b;
  }
  cat.validate();
  return cat;
}

filaments::GalaxyCatalog parse_catalog(const std::filesystem::path &path,
                                       const std::optional<filaments::Box> &window) {
  auto in = open(path);
  return read_catalog(in, path.string(), window);
}

std::vector<orbit::Observation> read_observations(std::istream &in, std::string_view source) {
  const auto table = read_numeric_csv(in, kObsHeader, source);
  if (table.rows.empty()) throw InvalidInput(std::string(source) + ": no observations");
  std::vector<orbit::Observation> obs;
  obs.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto &r = table.rows[i];
    if (!(r[3] > 0.0)) throw InvalidInput(at_line(source, table.lines[i]) + ": sigma_km must be positive");
    if (i > 0 && !(r[0] > obs.back().epoch))
      throw InvalidInput(at_line(source, table.lines[i]) + ": epochs must be strictly increasing");
    obs.push_back({r[0], r[1], r[2], r[3]});
  }
  orbit::validate_observations(obs);
  return obs;
}

std::vector<orbit::Observation> parse_observations(const std::filesystem::path &path) {
  auto in = open(path);
  return read_observations(in, path.string());
}

std::vector<heavytail::PerturbationSample> read_perturbations(std::istream &in, std::string_view source) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<heavytail::PerturbationSample> cells;

  std::istringstream probe(text);
  std::string first;
  while (std::getline(probe, first)) {
    const auto pos = first.find_first_not_of(" \t\r");
    if (pos != std::string::npos && first[pos] != '#') break;
  }
  std::istringstream body(text);
  if (first.find(',') == std::string::npos) {
    const auto table = read_numeric_csv(body, kValueHeader, source);
    heavytail::PerturbationSample s;
    for (const auto &r : table.rows) s.values.push_back(r[0]);
    cells.push_back(std::move(s));
  } else {
    const auto table = read_numeric_csv(body, kPertHeader, source);
    std::map<std::pair<double, double>, std::size_t> index;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto &r = table.rows[i];
      auto [it, fresh] = index.try_emplace({r[0], r[1]}, cells.size());
      if (fresh) {
        heavytail::PerturbationSample s;
        s.inclination = r[0];
        s.perihelion_argument = r[1];
        if (!(s.inclination >= 0.0 && s.inclination <= 180.0))
          throw InvalidInput(at_line(source, table.lines[i]) + ": i_deg must lie in [0, 180]");
        if (!(s.perihelion_argument >= 0.0 && s.perihelion_argument < 360.0))
          throw InvalidInput(at_line(source, table.lines[i]) + ": w_deg must lie in [0, 360)");
        cells.push_back(std::move(s));
      }
      cells[it->second].values.push_back(r[2]);
    }
  }
  if (cells.empty() || cells[0].values.empty())
    throw InvalidInput(std::string(source) + ": no perturbation values");
  return cells;
}

std::vector<heavytail::PerturbationSample> parse_perturbations(const std::filesystem::path &path) {
  auto in = open(path);
  return read_perturbations(in, path.string());
}

filaments::Box box_from_json(const json &j) {
  Fields f(j, "window");
  filaments::Box b{vec3(f.at("lo"), "window.lo"), vec3(f.at("hi"), "window.hi")};
  f.finish();
  if (!b.valid()) throw InvalidInput("window: need lo < hi on every axis");
  return b;
}

filaments::FilamentParams filament_params_from_json(const json &j) {
  Fields f(j, "params");
  filaments::FilamentParams p;
  f.get("half_length_min", p.half_length_min);
  f.get("half_length_max", p.half_length_max);
  f.get("radius", p.radius);
  f.get("w0", p.w0);
  f.get("w1", p.w1);
  f.get("w2", p.w2);
  if (f.has("connection_distance")) p.connection_distance = f.require<double>("connection_distance");
  if (f.has("alignment_angle") && f.has("alignment_angle_deg"))
    throw InvalidInput("params: give alignment_angle or alignment_angle_deg, not both");
  f.get("alignment_angle", p.alignment_angle);
  if (f.has("alignment_angle_deg"))
    p.alignment_angle = f.require<double>("alignment_angle_deg") * std::numbers::pi / 180.0;
  if (f.has("hard_core_distance")) p.hard_core_distance = f.require<double>("hard_core_distance");
  f.get("forbid_misaligned_contacts", p.forbid_misaligned_contacts);
  f.get("forbid_overlap", p.forbid_overlap);
  f.get("mu", p.mu);
  f.get("kappa", p.kappa);
  f.get("penalty", p.penalty);
  f.get("balance", p.balance);
  f.get("intensity", p.intensity);
  f.get("center_step", p.center_step);
  f.get("angle_step", p.angle_step);
  f.get("length_step", p.length_step);
  f.finish();
  p.validate();
  return p;
}

AnnealingSchedule schedule_from_json(const json &j) {
  Fields f(j, "schedule");
  AnnealingSchedule s;
  f.get("initial_temperature", s.initial_temperature);
  f.get("cooling_factor", s.cooling_factor);
  f.get("steps_per_level", s.steps_per_level);
  f.get("final_temperature", s.final_temperature);
  (void)f.has("levels"); // echoed by to_json, derived
  f.finish();
  s.validate();
  return s;
}

MoveMix mix_from_json(const json &j) {
  Fields f(j, "mix");
  MoveMix m;
  f.get("birth", m.birth);
  f.get("death", m.death);
  f.get("change", m.change);
  f.finish();
  m.validate();
  return m;
}

orbit::KeplerOrbit orbit_from_json(const json &j) {
  Fields f(j, "orbit");
  std::array<double, orbit::kElementCount> v{};
  const auto &names = orbit::element_names();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f.require<double>(std::string(names[k]));
  f.finish();
  auto o = orbit::KeplerOrbit::from_array(v);
  o.validate();
  return o;
}

orbit::PriorBox prior_from_json(const json &j) {
  const auto &names = orbit::element_names();
  if (j.is_object() && j.contains("around")) {
    Fields f(j, "prior");
    const auto ref = orbit_from_json(f.at("around"));
    Fields hw(f.at("half_widths"), "prior.half_widths");
    std::array<double, orbit::kElementCount> w{};
    for (std::size_t k = 0; k < w.size(); ++k) {
      w[k] = hw.require<double>(std::string(names[k]));
      if (!(w[k] > 0.0)) throw InvalidInput("prior.half_widths: must be positive");
    }
    hw.finish();
    f.finish();
    return orbit::PriorBox::around(ref, w);
  }
  Fields f(j, "prior");
  orbit::PriorBox box;
  for (std::size_t k = 0; k < orbit::kElementCount; ++k) {
    const std::string name(names[k]);
    const auto &iv = f.at(name);
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      throw InvalidInput("prior." + name + ": expected [lo, hi]");
    box.bounds[k] = {iv[0].get<double>(), iv[1].get<double>()};
  }
  f.finish();
  box.validate();
  return box;
}

heavytail::FitConfig fit_config_from_json(const json &j) {
  Fields f(j, "fit");
  heavytail::FitConfig c;
  f.get("q_lo", c.q_lo);
  f.get("q_hi", c.q_hi);
  if (f.has("regime")) {
    const auto r = f.require<std::string>("regime");
    if (r == "heavy") c.regime = heavytail::Regime::heavy;
    else if (r == "light") c.regime = heavytail::Regime::light;
    else if (r != "auto") throw InvalidInput("fit.regime: expected auto, heavy or light");
  }
  f.get("threshold", c.regime_threshold);
  if (f.has("hill_k")) c.hill_k = f.require<std::size_t>("hill_k");
  f.finish();
  c.validate();
  return c;
}

heavytail::CoverageConfig coverage_config_from_json(const json &j) {
  Fields f(j, "test");
  heavytail::CoverageConfig c;
  f.get("n_rep", c.n_rep);
  f.get("percentiles", c.percentiles);
  f.get("ci_level", c.ci_level);
  f.finish();
  c.validate();
  return c;
}

namespace {

heavytail::ScaledBeta beta_from_json(Fields &f) {
  heavytail::ScaledBeta b;
  b.alpha = f.require<double>("alpha");
  b.beta = f.require<double>("beta");
  b.lo = f.require<double>("lo");
  b.hi = f.require<double>("hi");
  f.finish();
  b.validate();
  return b;
}

heavytail::TailComponent component_from_json(const json &j, const std::string &what) {
  Fields f(j, what);
  const auto type = f.require<std::string>("type");
  if (type == "beta") return beta_from_json(f);
  if (type != "pareto") throw InvalidInput(what + ".type: expected beta or pareto");
  heavytail::TranslatedPareto p;
  p.scale = f.require<double>("scale");
  p.index = f.require<double>("index");
  p.anchor = f.require<double>("anchor");
  const auto side = f.require<std::string>("side");
  if (side == "lower") p.side = heavytail::TailSide::lower;
  else if (side != "upper") throw InvalidInput(what + ".side: expected lower or upper");
  f.finish();
  p.validate();
  return p;
}

} // namespace

heavytail::TailMixture mixture_from_json(const json &j) {
  Fields f(j, "mixture");
  heavytail::TailMixture m;
  m.left = component_from_json(f.at("left"), "mixture.left");
  Fields center(f.at("center"), "mixture.center");
  if (center.has("type") && center.require<std::string>("type") != "beta")
    throw InvalidInput("mixture.center: must be a beta component");
  m.center = beta_from_json(center);
  m.right = component_from_json(f.at("right"), "mixture.right");
  m.split_lo = f.require<double>("split_lo");
  m.split_hi = f.require<double>("split_hi");
  const auto w = f.require<std::vector<double>>("weights");
  if (w.size() != 3) throw InvalidInput("mixture.weights: expected 3 numbers");
  std::copy(w.begin(), w.end(), m.weights.begin());
  (void)f.has("regime"); // derived
  f.finish();
  m.validate();
  return m;
}

} // namespace astroinfer::io
