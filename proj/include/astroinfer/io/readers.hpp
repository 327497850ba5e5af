#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/filaments/model.hpp"
#include "astroinfer/heavytail/coverage.hpp"
#include "astroinfer/heavytail/fit.hpp"
#include "astroinfer/orbit/fit.hpp"
#include "astroinfer/samplers/chain.hpp"

namespace astroinfer::io {

/// Catalog CSV with header `x,y,z`. Without an explicit window the bounding
/// box of the points padded by 1% per axis is used; with one, points outside
/// it are an error.
[[nodiscard]] filaments::GalaxyCatalog read_catalog(std::istream &in, std::string_view source,
                                                    const std::optional<filaments::Box> &window = {});
[[nodiscard]] filaments::GalaxyCatalog parse_catalog(const std::filesystem::path &path,
                                                     const std::optional<filaments::Box> &window = {});

/// Observation CSV with header `epoch_rjd,dx_km,dy_km,sigma_km`.
[[nodiscard]] std::vector<orbit::Observation> read_observations(std::istream &in, std::string_view source);
[[nodiscard]] std::vector<orbit::Observation> parse_observations(const std::filesystem::path &path);

/// Perturbation CSV with header `i_deg,w_deg,value`, grouped into one sample
/// per distinct (i, w) pair in order of first appearance. A file with the
/// single column `value` is one sample at (0, 0).
[[nodiscard]] std::vector<heavytail::PerturbationSample> read_perturbations(std::istream &in,
                                                                            std::string_view source);
[[nodiscard]] std::vector<heavytail::PerturbationSample>
parse_perturbations(const std::filesystem::path &path);

// JSON configuration blocks. Missing keys keep their defaults; unknown keys
// are rejected so that typos do not silently fall back to defaults.

[[nodiscard]] filaments::Box box_from_json(const nlohmann::json &j);
[[nodiscard]] filaments::FilamentParams filament_params_from_json(const nlohmann::json &j);
[[nodiscard]] AnnealingSchedule schedule_from_json(const nlohmann::json &j);
[[nodiscard]] MoveMix mix_from_json(const nlohmann::json &j);

/// Either a box per element, {"period": [lo, hi], ...} with every element
/// present, or {"around": {<orbit>}, "half_widths": {<orbit>}}.
[[nodiscard]] orbit::PriorBox prior_from_json(const nlohmann::json &j);
[[nodiscard]] orbit::KeplerOrbit orbit_from_json(const nlohmann::json &j);

[[nodiscard]] heavytail::FitConfig fit_config_from_json(const nlohmann::json &j);
[[nodiscard]] heavytail::CoverageConfig coverage_config_from_json(const nlohmann::json &j);
[[nodiscard]] heavytail::TailMixture mixture_from_json(const nlohmann::json &j);

} // namespace astroinfer::io
