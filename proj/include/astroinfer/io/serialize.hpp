#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <json.hpp>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/filaments/detect.hpp"
#include "astroinfer/heavytail/coverage.hpp"
#include "astroinfer/orbit/fit.hpp"
#include "astroinfer/samplers/chain.hpp"

namespace astroinfer::io {

[[nodiscard]] nlohmann::json to_json(const filaments::Box &b);
[[nodiscard]] nlohmann::json to_json(const filaments::FilamentParams &p);
[[nodiscard]] nlohmann::json to_json(const filaments::Segment &s);
[[nodiscard]] nlohmann::json to_json(const filaments::FilamentStats &s);

[[nodiscard]] nlohmann::json to_json(const orbit::KeplerOrbit &o);
[[nodiscard]] nlohmann::json to_json(const orbit::PriorBox &p);
/// Tabular summary: one row per element in canonical order with
/// min/median/mean/max/sd, plus the implied system mass.
[[nodiscard]] nlohmann::json summary_to_json(const orbit::OrbitSummary &s,
                                             std::span<const ParameterVector> samples);

[[nodiscard]] nlohmann::json to_json(const heavytail::TailComponent &c);
[[nodiscard]] nlohmann::json to_json(const heavytail::TailMixture &m);
[[nodiscard]] nlohmann::json to_json(const heavytail::MixtureFit &f);
[[nodiscard]] nlohmann::json to_json(const heavytail::FitConfig &c);
[[nodiscard]] nlohmann::json to_json(const heavytail::CoverageConfig &c);
[[nodiscard]] const char *to_string(heavytail::Regime r) noexcept;

/// Segment table for plotting: center, unit axis, half-length, radius and
/// number of connected extremities.
void write_segments_csv(std::ostream &os, const filaments::MarkedConfiguration &c,
                        std::span<const int> connections);

/// Observed and predicted sky positions at the observation epochs.
void write_predictions_csv(std::ostream &os, std::span<const orbit::Observation> obs,
                           const orbit::KeplerOrbit &orbit);

/// `i_deg,w_deg,coverage,regime`; missing cells have empty coverage and
/// regime fields.
void write_map_csv(std::ostream &os, const heavytail::CoverageMap &map);

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::filesystem::path &path, const std::string &text);

} // namespace astroinfer::io
