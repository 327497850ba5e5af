#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "astroinfer/core/rng.hpp"
#include "astroinfer/heavytail/components.hpp"
#include "astroinfer/heavytail/fit.hpp"

namespace astroinfer::heavytail {

/// Inverse-transform draws: component by weight, then its quantile function.
[[nodiscard]] std::vector<double> simulate(const TailMixture &mixture, std::size_t n, Rng &rng);

struct CoverageConfig {
  std::size_t n_rep = 100;
  std::vector<double> percentiles = default_percentiles(); // in percent, (0, 100)
  double ci_level = 0.95;

  void validate() const;
  static std::vector<double> default_percentiles(); // 1, 2, ..., 99
};

struct CoverageResult {
  double fraction = 0.0;
  std::vector<double> data_percentiles;
  std::vector<double> band_lo;
  std::vector<double> band_hi;
};

/// Simulation-based check of a fitted mixture: the data percentiles are
/// compared with the empirical [(1-ci)/2, (1+ci)/2] band of the same
/// percentiles over n_rep simulated samples of the data's size. Returns the
/// fraction of data percentiles inside their band.
[[nodiscard]] CoverageResult percentile_coverage_test(std::span<const double> values,
                                                      const TailMixture &mixture,
                                                      const CoverageConfig &config, Rng &rng);

/// Perturbations of one (inclination, perihelion argument) grid cell.
struct PerturbationSample {
  double inclination = 0.0;          // deg
  double perihelion_argument = 0.0;  // deg
  std::vector<double> values;
  double perihelion_distance = 5.1;  // A.U.

  void validate() const;
};

struct CoverageCell {
  double inclination = 0.0;
  double perihelion_argument = 0.0;
  std::optional<double> coverage{};
  std::optional<Regime> regime{};
  std::optional<MixtureFit> fit{};
  std::string error{}; // set when the cell is missing
};

struct CoverageMap {
  std::vector<CoverageCell> cells;

  /// Cells of one regime (missing cells are dropped).
  [[nodiscard]] CoverageMap panel(Regime regime) const;
};

/// Per-cell stream derived from the run seed and the cell's values: the map
/// does not depend on scheduling and identical cells give identical results.
[[nodiscard]] Rng cell_rng(std::uint64_t seed, std::span<const double> values);

/// Fits and tests every cell, in parallel over `threads` workers (0: one per
/// hardware thread). Cells whose fit or test fails are kept with an error
/// message and no coverage. Output order follows the input order.
[[nodiscard]] CoverageMap build_coverage_map(std::span<const PerturbationSample> samples,
                                             const FitConfig &fit, const CoverageConfig &test,
                                             std::uint64_t seed, unsigned threads = 0);

} // namespace astroinfer::heavytail
