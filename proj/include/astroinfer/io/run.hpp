#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

namespace astroinfer::io {

enum class Pipeline { filaments_detect, orbit_fit, tails_fit, tails_validate, tails_map };

[[nodiscard]] const char *to_string(Pipeline p) noexcept;
[[nodiscard]] Pipeline pipeline_from_string(const std::string &name);

/// Everything a run depends on. `config` is the fully resolved parameter
/// block of the pipeline (defaults filled in), so that echoing it in the
/// manifest is enough to replay the run.
struct RunConfig {
  Pipeline pipeline = Pipeline::filaments_detect;
  std::map<std::string, std::filesystem::path> inputs;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
};

/// Fills defaults and validates `config` for the pipeline; throws
/// InvalidInput on unknown keys or bad values.
[[nodiscard]] nlohmann::json resolve_config(Pipeline p, const nlohmann::json &config);

/// Runs the pipeline, writes its outputs and `manifest.json` into out_dir.
/// Returns 0 on success. On failure writes `error.json` (and the same JSON
/// on `err`) and returns a nonzero code: 2 invalid input, 3 numerical or
/// sampler failure, 4 file system, 1 anything else.
int run(const RunConfig &config, std::ostream &err);

/// Rebuilds the RunConfig recorded in a manifest. Input files are checked
/// against the recorded content hashes. `out_dir` replaces the recorded
/// output directory when not empty.
[[nodiscard]] RunConfig load_manifest(const std::filesystem::path &manifest,
                                      const std::filesystem::path &out_dir = {});

/// Parses a JSON file; throws InvalidInput naming the file on syntax errors.
[[nodiscard]] nlohmann::json load_json(const std::filesystem::path &path);

/// 64-bit FNV-1a of the file content, as 16 hex digits.
[[nodiscard]] std::string content_hash(const std::filesystem::path &path);

[[nodiscard]] const char *version() noexcept;

} // namespace astroinfer::io
