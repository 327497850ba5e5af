#include "astroinfer/io/run.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "astroinfer/core/format.hpp"
#include "astroinfer/filaments/detect.hpp"
#include "astroinfer/heavytail/coverage.hpp"
#include "astroinfer/io/csv.hpp"
#include "astroinfer/io/readers.hpp"
#include "astroinfer/io/serialize.hpp"
#include "astroinfer/orbit/fit.hpp"
#include "astroinfer/samplers/chain_io.hpp"
#include "json_fields.hpp"

#ifndef ASTROINFER_VERSION
#define ASTROINFER_VERSION "0.0.0"
#endif

namespace astroinfer::io {

using nlohmann::json;
using detail::Fields;
namespace fs = std::filesystem;

namespace {

struct PipelineName {
  Pipeline p;
  const char *name;
};
constexpr PipelineName kPipelines[] = {{Pipeline::filaments_detect, "filaments detect"},
                                       {Pipeline::orbit_fit, "orbit fit"},
                                       {Pipeline::tails_fit, "tails fit"},
                                       {Pipeline::tails_validate, "tails validate"},
                                       {Pipeline::tails_map, "tails map"}};

// Output files of one run, written only after the pipeline succeeded.
using Outputs = std::map<std::string, std::string>;

std::string csv_preamble(const RunConfig &rc) {
  return "# astroinfer " + std::string(to_string(rc.pipeline)) + " seed=" + std::to_string(rc.seed) + "\n";
}

const fs::path &input(const RunConfig &rc, const std::string &name) {
  const auto it = rc.inputs.find(name);
  if (it == rc.inputs.end()) throw InvalidInput("missing input '" + name + "'");
  return it->second;
}

json header(const RunConfig &rc) {
  return {{"pipeline", to_string(rc.pipeline)}, {"seed", rc.seed}, {"version", version()}};
}

// ---- resolution ---------------------------------------------------------

json resolve_filaments(const json &j) {
  Fields f(j, "config");
  json out;
  out["window"] = f.has("window") ? to_json(box_from_json(f.at("window"))) : json(nullptr);
  out["params"] = to_json(filament_params_from_json(f.has("params") ? f.at("params") : json::object()));
  AnnealingSchedule s{2.0, 0.97, 10000, 0.01};
  if (f.has("schedule")) {
    json merged = to_json(s);
    for (auto it = f.at("schedule").begin(); it != f.at("schedule").end(); ++it) merged[it.key()] = it.value();
    s = schedule_from_json(merged);
  }
  out["schedule"] = to_json(s);
  out["mix"] = to_json(mix_from_json(f.has("mix") ? f.at("mix") : json::object()));
  std::size_t every = 1000;
  f.get("record_every", every);
  if (every == 0) throw InvalidInput("config.record_every must be positive");
  out["record_every"] = every;
  f.finish();
  return out;
}

json resolve_orbit(const json &j) {
  Fields f(j, "config");
  json out;
  out["prior"] = to_json(prior_from_json(f.at("prior")));
  std::size_t steps = 200000, chains = 1, every = 10;
  f.get("steps", steps);
  std::size_t burn_in = steps / 4;
  f.get("burn_in", burn_in);
  f.get("chains", chains);
  f.get("record_every", every);
  if (steps <= burn_in) throw InvalidInput("config.steps must exceed config.burn_in");
  if (chains == 0) throw InvalidInput("config.chains must be positive");
  if (every == 0) throw InvalidInput("config.record_every must be positive");
  out["steps"] = steps;
  out["burn_in"] = burn_in;
  out["chains"] = chains;
  out["record_every"] = every;

  double factor = 0.5;
  f.get("scale_factor", factor);
  if (!(factor > 0.0)) throw InvalidInput("config.scale_factor must be positive");
  out["scale_factor"] = factor;
  out["proposal_scales"] = "auto";
  if (f.has("proposal_scales")) {
    const auto &ps = f.at("proposal_scales");
    if (!(ps.is_string() && ps.get<std::string>() == "auto")) {
      Fields g(ps, "config.proposal_scales");
      json scales;
      for (auto name : orbit::element_names()) {
        const auto v = g.require<double>(std::string(name));
        if (!(v >= 0.0)) throw InvalidInput("config.proposal_scales must be nonnegative");
        scales[std::string(name)] = v;
      }
      g.finish();
      out["proposal_scales"] = scales;
    }
  }
  out["initial"] = f.has("initial") ? to_json(orbit_from_json(f.at("initial"))) : json(nullptr);
  f.finish();
  return out;
}

json resolve_tails(const json &j, bool with_test) {
  Fields f(j, "config");
  json out;
  out["fit"] = to_json(fit_config_from_json(f.has("fit") ? f.at("fit") : json::object()));
  if (with_test) {
    out["test"] = to_json(coverage_config_from_json(f.has("test") ? f.at("test") : json::object()));
    unsigned threads = 0;
    f.get("threads", threads);
    out["threads"] = threads;
  }
  f.finish();
  return out;
}

// ---- pipelines ----------------------------------------------------------

void run_filaments(const RunConfig &rc, json &cfg, Outputs &out) {
  std::optional<filaments::Box> window;
  if (!cfg["window"].is_null()) window = box_from_json(cfg["window"]);
  const auto catalog = parse_catalog(input(rc, "catalog"), window);
  cfg["window"] = to_json(catalog.window);

  const auto params = filament_params_from_json(cfg["params"]);
  const auto schedule = schedule_from_json(cfg["schedule"]);
  const auto mix = mix_from_json(cfg["mix"]);
  const auto every = cfg["record_every"].get<std::size_t>();

  Rng rng = Rng(rc.seed).split("filaments.detect");
  const auto det = filaments::detect(catalog, params, schedule, mix, rng, {every});
  const auto conn = filaments::connectivity(det.best, params.epsilon(), params.alignment_angle);

  json segs = json::array();
  for (std::size_t i = 0; i < det.best.segments.size(); ++i) {
    json s = to_json(det.best.segments[i]);
    s["connections"] = conn[i];
    segs.push_back(std::move(s));
  }
  json result = header(rc);
  result["n_galaxies"] = catalog.positions.size();
  result["window"] = to_json(catalog.window);
  result["energy"] = det.energy;
  result["stats"] = to_json(det.stats);
  result["segments"] = segs;
  result["config"] = cfg;
  out["segments.json"] = result.dump(2) + "\n";

  std::ostringstream csv;
  csv << csv_preamble(rc);
  write_segments_csv(csv, det.best, conn);
  out["segments.csv"] = csv.str();

  std::ostringstream chain;
  chain << csv_preamble(rc);
  write_chain_csv(chain, det.run.chain, {}, [](const filaments::MarkedConfiguration &c) { return filaments::flatten(c); });
  out["chain.csv"] = chain.str();

  ChainSidecar side;
  side.seed = rc.seed;
  side.n_records = det.run.chain.size();
  side.n_steps = det.run.steps;
  side.acceptance_rate = det.run.chain.acceptance_rate();
  side.schedule = schedule;
  side.mix = mix;
  side.extra = {{"state_layout", "per segment: cx cy cz polar azimuth half_length radius"},
                {"temperatures", det.run.temperatures},
                {"best_energy", det.run.best_energy}};
  out["chain.json"] = to_json(side).dump(2) + "\n";
}

void run_orbit(const RunConfig &rc, const json &cfg, Outputs &out) {
  const auto obs = parse_observations(input(rc, "obs"));
  const auto prior = prior_from_json(cfg["prior"]);

  orbit::FitOptions opt;
  opt.n_steps = cfg["steps"].get<std::size_t>();
  opt.burn_in = cfg["burn_in"].get<std::size_t>();
  opt.chains = cfg["chains"].get<std::size_t>();
  opt.record_every = cfg["record_every"].get<std::size_t>();
  opt.seed = rc.seed;
  if (!cfg["initial"].is_null()) opt.initial = orbit_from_json(cfg["initial"]);
  if (cfg["proposal_scales"].is_string()) {
    opt.proposal_scales = orbit::suggest_proposal_scales(opt.initial.value_or(prior.center()), obs,
                                                         cfg["scale_factor"].get<double>());
  } else {
    const auto &names = orbit::element_names();
    for (std::size_t k = 0; k < orbit::kElementCount; ++k)
      opt.proposal_scales[k] = cfg["proposal_scales"][std::string(names[k])].get<double>();
  }

  const auto fit = orbit::fit_orbit(obs, prior, opt);

  std::vector<ParameterVector> kept;
  for (const auto &chain : fit.chains)
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (chain.steps[i] >= opt.burn_in) kept.push_back(chain.states[i]);

  json scales;
  for (std::size_t k = 0; k < orbit::kElementCount; ++k)
    scales[std::string(orbit::element_names()[k])] = opt.proposal_scales[k];

  json result = header(rc);
  result["summary"] = summary_to_json(fit.summary, kept);
  result["acceptance_rate"] = fit.acceptance_rate;
  result["n_observations"] = obs.size();
  result["proposal_scales"] = scales;
  result["config"] = cfg;
  out["summary.json"] = result.dump(2) + "\n";

  std::ostringstream pred;
  pred << csv_preamble(rc);
  write_predictions_csv(pred, obs, fit.summary.median_orbit());
  out["predicted.csv"] = pred.str();

  std::vector<std::string> columns;
  for (auto n : orbit::element_names()) columns.emplace_back(n);
  for (std::size_t c = 0; c < fit.chains.size(); ++c) {
    const auto &chain = fit.chains[c];
    std::ostringstream os;
    os << csv_preamble(rc);
    write_chain_csv(os, chain, columns, [](const ParameterVector &p) { return p.values(); });
    out["chain_" + std::to_string(c) + ".csv"] = os.str();

    ChainSidecar side;
    side.seed = rc.seed;
    side.n_records = chain.size();
    side.n_steps = opt.n_steps;
    side.acceptance_rate = chain.acceptance_rate();
    side.extra = {{"chain", c}, {"stream", "orbit.chain/" + std::to_string(c)}, {"burn_in", opt.burn_in}};
    out["chain_" + std::to_string(c) + ".json"] = to_json(side).dump(2) + "\n";
  }
}

json cell_json(const heavytail::PerturbationSample &s) {
  return {{"i_deg", s.inclination}, {"w_deg", s.perihelion_argument}, {"n", s.values.size()}};
}

void run_tails_fit(const RunConfig &rc, const json &cfg, Outputs &out) {
  const auto cells = parse_perturbations(input(rc, "data"));
  const auto fc = fit_config_from_json(cfg["fit"]);
  json arr = json::array();
  for (const auto &s : cells) {
    json c = cell_json(s);
    try {
      c["fit"] = to_json(heavytail::fit_mixture(s.values, fc));
    } catch (const std::exception &e) {
      if (cells.size() == 1) throw;
      c["error"] = e.what();
    }
    arr.push_back(std::move(c));
  }
  json result = header(rc);
  result["cells"] = arr;
  result["config"] = cfg;
  out["fits.json"] = result.dump(2) + "\n";
}

std::vector<std::optional<heavytail::TailMixture>>
load_fits(const fs::path &path, std::span<const heavytail::PerturbationSample> cells) {
  const auto j = load_json(path);
  if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array())
    throw InvalidInput(path.string() + ": expected a fits file with a 'cells' array");
  const auto &arr = j["cells"];
  if (arr.size() != cells.size())
    throw InvalidInput(path.string() + ": " + std::to_string(arr.size()) + " fitted cells for " +
                       std::to_string(cells.size()) + " data cells");
  std::vector<std::optional<heavytail::TailMixture>> fits;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto &c = arr[k];
    if (c.value("i_deg", -1.0) != cells[k].inclination || c.value("w_deg", -1.0) != cells[k].perihelion_argument)
      throw InvalidInput(path.string() + ": cell " + std::to_string(k) + " does not match the data grid");
    if (c.contains("fit")) fits.push_back(mixture_from_json(c["fit"]["mixture"]));
    else fits.push_back(std::nullopt);
  }
  return fits;
}

void run_tails_validate(const RunConfig &rc, const json &cfg, Outputs &out) {
  const auto cells = parse_perturbations(input(rc, "data"));
  const auto fc = fit_config_from_json(cfg["fit"]);
  const auto tc = coverage_config_from_json(cfg["test"]);
  std::vector<std::optional<heavytail::TailMixture>> fits(cells.size());
  const bool given = rc.inputs.count("fits") != 0;
  if (given) fits = load_fits(input(rc, "fits"), cells);

  json arr = json::array();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto &s = cells[k];
    json c = cell_json(s);
    try {
      if (!fits[k]) {
        if (given) throw InvalidInput("no fitted mixture for this cell");
        fits[k] = heavytail::fit_mixture(s.values, fc).mixture;
      }
      Rng rng = heavytail::cell_rng(rc.seed, s.values);
      const auto r = heavytail::percentile_coverage_test(s.values, *fits[k], tc, rng);
      c["coverage"] = r.fraction;
      c["regime"] = to_string(fits[k]->regime());
      c["percentiles"] = tc.percentiles;
      c["data_percentiles"] = r.data_percentiles;
      c["band_lo"] = r.band_lo;
      c["band_hi"] = r.band_hi;
    } catch (const std::exception &e) {
      if (cells.size() == 1) throw;
      c["error"] = e.what();
    }
    arr.push_back(std::move(c));
  }
  json result = header(rc);
  result["cells"] = arr;
  result["config"] = cfg;
  out["coverage.json"] = result.dump(2) + "\n";
}

void run_tails_map(const RunConfig &rc, const json &cfg, Outputs &out) {
  const auto cells = parse_perturbations(input(rc, "data"));
  const auto map = heavytail::build_coverage_map(cells, fit_config_from_json(cfg["fit"]),
                                                 coverage_config_from_json(cfg["test"]), rc.seed,
                                                 cfg["threads"].get<unsigned>());
  auto csv = [&](const heavytail::CoverageMap &m) {
    std::ostringstream os;
    os << csv_preamble(rc);
    write_map_csv(os, m);
    return os.str();
  };
  out["map.csv"] = csv(map);
  out["map_heavy.csv"] = csv(map.panel(heavytail::Regime::heavy));
  out["map_light.csv"] = csv(map.panel(heavytail::Regime::light));

  json arr = json::array();
  for (std::size_t k = 0; k < map.cells.size(); ++k) {
    const auto &mc = map.cells[k];
    json c = cell_json(cells[k]);
    if (mc.coverage) c["coverage"] = *mc.coverage;
    if (mc.fit) c["fit"] = to_json(*mc.fit);
    if (!mc.error.empty()) c["error"] = mc.error;
    arr.push_back(std::move(c));
  }
  json result = header(rc);
  result["cells"] = arr;
  result["config"] = cfg;
  out["cells.json"] = result.dump(2) + "\n";
}

// ---- errors -------------------------------------------------------------

struct Failure {
  int code;
  const char *kind;
  std::string message;
  std::string diagnostic;
};

Failure classify(std::exception_ptr ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const InvalidInput &e) {
    return {2, "invalid_input", e.what(), {}};
  } catch (const json::exception &e) {
    return {2, "invalid_input", e.what(), {}};
  } catch (const ChainAborted &e) {
    return {3, "chain_aborted", e.what(), e.diagnostic()};
  } catch (const NumericalError &e) {
    return {3, "numerical", e.what(), {}};
  } catch (const fs::filesystem_error &e) {
    return {4, "io", e.what(), {}};
  } catch (const std::exception &e) {
    return {1, "internal", e.what(), {}};
  } catch (...) {
    return {1, "internal", "unknown error", {}};
  }
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

const char *to_string(Pipeline p) noexcept {
  for (const auto &e : kPipelines)
    if (e.p == p) return e.name;
  return "?";
}

Pipeline pipeline_from_string(const std::string &name) {
  for (const auto &e : kPipelines)
    if (name == e.name) return e.p;
  throw InvalidInput("unknown pipeline '" + name + "'");
}

const char *version() noexcept { return ASTROINFER_VERSION; }

json load_json(const fs::path &path) {
  const auto text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

std::string content_hash(const fs::path &path) {
  const auto text = read_text(path);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(Rng::hash(text)));
  return buf;
}

json resolve_config(Pipeline p, const json &config) {
  const json &c = config.is_null() ? json::object() : config;
  switch (p) {
  case Pipeline::filaments_detect: return resolve_filaments(c);
  case Pipeline::orbit_fit: return resolve_orbit(c);
  case Pipeline::tails_fit: return resolve_tails(c, false);
  case Pipeline::tails_validate:
  case Pipeline::tails_map: return resolve_tails(c, true);
  }
  throw InvalidInput("unknown pipeline");
}

int run(const RunConfig &rc, std::ostream &err) {
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  json manifest = {{"tool", "astroinfer"},
                   {"version", version()},
                   {"pipeline", to_string(rc.pipeline)},
                   {"seed", rc.seed},
                   {"started_utc", started}};
  try {
    json inputs = json::object();
    for (const auto &[name, path] : rc.inputs)
      inputs[name] = {{"path", fs::absolute(path).lexically_normal().string()}, {"hash", content_hash(path)}};
    manifest["inputs"] = inputs;

    json cfg = resolve_config(rc.pipeline, rc.config);
    Outputs out;
    switch (rc.pipeline) {
    case Pipeline::filaments_detect: run_filaments(rc, cfg, out); break;
    case Pipeline::orbit_fit: run_orbit(rc, cfg, out); break;
    case Pipeline::tails_fit: run_tails_fit(rc, cfg, out); break;
    case Pipeline::tails_validate: run_tails_validate(rc, cfg, out); break;
    case Pipeline::tails_map: run_tails_map(rc, cfg, out); break;
    }
    manifest["config"] = cfg;

    json files = json::object();
    for (const auto &[name, text] : out) {
      write_file(rc.out_dir / name, text);
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(Rng::hash(text)));
      files[name] = buf;
    }
    manifest["outputs"] = files;
    manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(rc.out_dir / "manifest.json", manifest.dump(2) + "\n");
    std::error_code ec;
    fs::remove(rc.out_dir / "error.json", ec); // left over from a failed attempt
    return 0;
  } catch (...) {
    const auto f = classify(std::current_exception());
    json e = {{"error", {{"kind", f.kind}, {"message", f.message}}},
              {"exit_code", f.code},
              {"pipeline", to_string(rc.pipeline)},
              {"seed", rc.seed}};
    if (!f.diagnostic.empty()) e["error"]["diagnostic"] = f.diagnostic;
    err << e.dump() << '\n';
    try {
      write_file(rc.out_dir / "error.json", e.dump(2) + "\n");
    } catch (...) {
    }
    return f.code;
  }
}

RunConfig load_manifest(const fs::path &manifest, const fs::path &out_dir) {
  const auto m = load_json(manifest);
  Fields f(m, "manifest");
  RunConfig rc;
  rc.pipeline = pipeline_from_string(f.require<std::string>("pipeline"));
  rc.seed = f.require<std::uint64_t>("seed");
  rc.config = f.at("config");
  Fields inputs(f.at("inputs"), "manifest.inputs");
  for (auto it = m["inputs"].begin(); it != m["inputs"].end(); ++it) {
    Fields in(inputs.at(it.key()), "manifest.inputs." + it.key());
    const fs::path path = in.require<std::string>("path");
    const auto recorded = in.require<std::string>("hash");
    in.finish();
    if (content_hash(path) != recorded)
      throw InvalidInput(path.string() + " changed since the manifest was written");
    rc.inputs[it.key()] = path;
  }
  inputs.finish();
  rc.out_dir = out_dir.empty() ? manifest.parent_path() : out_dir;
  return rc;
}

} // namespace astroinfer::io
