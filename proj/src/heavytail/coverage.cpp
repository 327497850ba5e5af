#include "astroinfer/heavytail/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string_view>
#include <thread>

#include "astroinfer/core/errors.hpp"

namespace astroinfer::heavytail {

std::vector<double> simulate(const TailMixture &mixture, std::size_t n, Rng &rng) {
  mixture.validate();
  std::vector<double> out;
  out.reserve(n);
  const double c0 = mixture.weights[0];
  const double c1 = c0 + mixture.weights[1];
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = rng.uniform();
    const double u = rng.uniform_open();
    if (pick < c0)
      out.push_back(TailMixture::quantile(mixture.left, u));
    else if (pick < c1)
      out.push_back(mixture.center.quantile(u));
    else
      out.push_back(TailMixture::quantile(mixture.right, u));
  }
  return out;
}

std::vector<double> CoverageConfig::default_percentiles() {
  std::vector<double> p(99);
  for (int k = 0; k < 99; ++k) p[k] = k + 1.0;
  return p;
}

void CoverageConfig::validate() const {
  if (n_rep < 2) throw InvalidInput("the coverage test needs at least two replicates");
  if (percentiles.empty()) throw InvalidInput("the coverage test needs at least one percentile");
  for (double p : percentiles)
    if (!(p > 0.0 && p < 100.0)) throw InvalidInput("percentiles must lie in (0, 100)");
  if (!(ci_level > 0.0 && ci_level < 1.0)) throw InvalidInput("confidence level must lie in (0, 1)");
}

CoverageResult percentile_coverage_test(std::span<const double> values, const TailMixture &mixture,
                                        const CoverageConfig &config, Rng &rng) {
  config.validate();
  if (values.empty()) throw InvalidInput("the coverage test needs data");
  mixture.validate();
  const std::size_t n_p = config.percentiles.size();

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  CoverageResult r;
  for (double p : config.percentiles) r.data_percentiles.push_back(quantile_sorted(sorted, p / 100.0));

  // replicate_percentiles[j][rep]
  std::vector<std::vector<double>> replicate_percentiles(n_p, std::vector<double>(config.n_rep));
  for (std::size_t rep = 0; rep < config.n_rep; ++rep) {
    std::vector<double> sim = simulate(mixture, values.size(), rng);
    std::sort(sim.begin(), sim.end());
    for (std::size_t j = 0; j < n_p; ++j)
      replicate_percentiles[j][rep] = quantile_sorted(sim, config.percentiles[j] / 100.0);
  }

  const double lo_level = (1.0 - config.ci_level) / 2.0;
  const double hi_level = (1.0 + config.ci_level) / 2.0;
  std::size_t inside = 0;
  for (std::size_t j = 0; j < n_p; ++j) {
    auto &reps = replicate_percentiles[j];
    std::sort(reps.begin(), reps.end());
    const double lo = quantile_sorted(reps, lo_level);
    const double hi = quantile_sorted(reps, hi_level);
    r.band_lo.push_back(lo);
    r.band_hi.push_back(hi);
    if (r.data_percentiles[j] >= lo && r.data_percentiles[j] <= hi) ++inside;
  }
  r.fraction = static_cast<double>(inside) / static_cast<double>(n_p);
  return r;
}

void PerturbationSample::validate() const {
  if (values.empty()) throw InvalidInput("perturbation sample is empty");
  if (!(inclination >= 0.0 && inclination <= 180.0)) throw InvalidInput("inclination must lie in [0, 180]");
  if (!(perihelion_argument >= 0.0 && perihelion_argument < 360.0))
    throw InvalidInput("perihelion argument must lie in [0, 360)");
}

CoverageMap CoverageMap::panel(Regime regime) const {
  CoverageMap out;
  for (const auto &c : cells)
    if (c.coverage && c.regime == regime) out.cells.push_back(c);
  return out;
}

Rng cell_rng(std::uint64_t seed, std::span<const double> values) {
  const std::string_view bytes(reinterpret_cast<const char *>(values.data()), values.size_bytes());
  return Rng(seed).split("tails.cell").split(Rng::hash(bytes));
}

namespace {

CoverageCell process_cell(const PerturbationSample &s, const FitConfig &fit, const CoverageConfig &test,
                          std::uint64_t seed) {
  CoverageCell cell{s.inclination, s.perihelion_argument, {}, {}, {}, {}};
  try {
    s.validate();
    MixtureFit f = fit_mixture(s.values, fit);
    Rng rng = cell_rng(seed, s.values);
    cell.coverage = percentile_coverage_test(s.values, f.mixture, test, rng).fraction;
    cell.regime = f.regime;
    cell.fit = std::move(f);
  } catch (const std::exception &e) {
    cell.coverage.reset();
    cell.regime.reset();
    cell.fit.reset();
    cell.error = e.what();
  }
  return cell;
}

} // namespace

CoverageMap build_coverage_map(std::span<const PerturbationSample> samples, const FitConfig &fit,
                               const CoverageConfig &test, std::uint64_t seed, unsigned threads) {
  if (samples.empty()) throw InvalidInput("the coverage map needs at least one cell");
  fit.validate();
  test.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(samples.size()));

  CoverageMap map;
  map.cells.resize(samples.size());
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < threads; ++w)
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < samples.size(); i += threads)
        map.cells[i] = process_cell(samples[i], fit, test, seed);
    }));
  for (auto &f : workers) f.get();
  return map;
}

} // namespace astroinfer::heavytail
