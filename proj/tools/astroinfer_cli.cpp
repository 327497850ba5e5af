#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/io/run.hpp"

namespace fs = std::filesystem;
using astroinfer::io::Pipeline;
using astroinfer::io::RunConfig;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string config;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--seed", c.seed, "64-bit run seed")->capture_default_str();
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--config", c.config, "JSON parameter file")->check(CLI::ExistingFile);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bayesian inference pipelines: filament detection, binary orbits, heavy-tailed perturbations"};
  app.set_version_flag("--version", std::string(astroinfer::io::version()));
  app.require_subcommand(1);

  Common common;
  std::string catalog, obs, prior, data, fits, manifest;
  std::optional<std::size_t> steps;
  std::optional<unsigned> threads;
  std::optional<Pipeline> pipeline;

  auto *fil = app.add_subcommand("filaments", "cosmic filament detection")->require_subcommand(1);
  auto *detect = fil->add_subcommand("detect", "anneal a segment configuration on a galaxy catalog");
  detect->add_option("--catalog", catalog, "CSV with columns x,y,z")->required()->check(CLI::ExistingFile);
  add_common(detect, common);
  detect->callback([&] { pipeline = Pipeline::filaments_detect; });

  auto *orb = app.add_subcommand("orbit", "binary asteroid orbits")->require_subcommand(1);
  auto *ofit = orb->add_subcommand("fit", "posterior sampling of the relative orbit");
  ofit->add_option("--obs", obs, "CSV with columns epoch_rjd,dx_km,dy_km,sigma_km")->required()->check(CLI::ExistingFile);
  ofit->add_option("--prior", prior, "JSON prior box")->check(CLI::ExistingFile);
  ofit->add_option("--steps", steps, "Metropolis steps per chain");
  add_common(ofit, common);
  ofit->callback([&] { pipeline = Pipeline::orbit_fit; });

  auto *tails = app.add_subcommand("tails", "heavy-tailed perturbation statistics")->require_subcommand(1);
  auto *tfit = tails->add_subcommand("fit", "three-piece mixture fit per grid cell");
  auto *tval = tails->add_subcommand("validate", "percentile coverage test per grid cell");
  auto *tmap = tails->add_subcommand("map", "fit and test every cell of an (i, w) grid");
  for (auto *cmd : {tfit, tval, tmap}) {
    cmd->add_option("--data", data, "CSV with columns i_deg,w_deg,value (or value)")->required()->check(CLI::ExistingFile);
    add_common(cmd, common);
  }
  tval->add_option("--fits", fits, "fits.json from 'tails fit'")->check(CLI::ExistingFile);
  for (auto *cmd : {tval, tmap}) cmd->add_option("--threads", threads, "worker threads (0: all cores)");
  tfit->callback([&] { pipeline = Pipeline::tails_fit; });
  tval->callback([&] { pipeline = Pipeline::tails_validate; });
  tmap->callback([&] { pipeline = Pipeline::tails_map; });

  std::string replay_out;
  auto *replay = app.add_subcommand("replay", "rerun a recorded manifest");
  replay->add_option("manifest", manifest, "manifest.json of an earlier run")->required()->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "output directory (default: next to the manifest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig rc;
  try {
    if (replay->parsed()) {
      rc = astroinfer::io::load_manifest(manifest, replay_out);
    } else {
      rc.pipeline = *pipeline;
      rc.seed = common.seed;
      rc.out_dir = common.out;
      if (!common.config.empty()) rc.config = astroinfer::io::load_json(common.config);
      if (!rc.config.is_object()) throw astroinfer::InvalidInput("--config must hold a JSON object");
      if (!catalog.empty()) rc.inputs["catalog"] = catalog;
      if (!obs.empty()) rc.inputs["obs"] = obs;
      if (!data.empty()) rc.inputs["data"] = data;
      if (!fits.empty()) rc.inputs["fits"] = fits;
      if (!prior.empty()) rc.config["prior"] = astroinfer::io::load_json(prior);
      if (steps) rc.config["steps"] = *steps;
      if (threads) rc.config["threads"] = *threads;
    }
  } catch (const std::exception &e) {
    std::cerr << nlohmann::json{{"error", {{"kind", "invalid_input"}, {"message", e.what()}}}, {"exit_code", 2}}.dump()
              << '\n';
    return 2;
  }
  return astroinfer::io::run(rc, std::cerr);
}
