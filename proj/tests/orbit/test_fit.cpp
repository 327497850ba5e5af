#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/core/rng.hpp"
#include "astroinfer/orbit/fit.hpp"

using namespace astroinfer;
using namespace astroinfer::orbit;

namespace {

const KeplerOrbit kReference{56.5330, 4936.0, 0.4958, 46.883, 75.125, 43.152, 54314.26};

std::vector<Observation> synthetic(const KeplerOrbit &o, double sigma, std::uint64_t seed, bool noisy) {
  Rng rng(seed);
  std::vector<Observation> obs;
  for (int k = 0; k < 20; ++k) {
    const double t = o.time_periapsis + 120.0 * k / 19.0;
    const auto p = propagate(o, t);
    const double nx = noisy ? sigma * rng.normal() : 0.0;
    const double ny = noisy ? sigma * rng.normal() : 0.0;
    obs.push_back({t, p.dx + nx, p.dy + ny, sigma});
  }
  return obs;
}

PriorBox box_around(const KeplerOrbit &o) {
  return PriorBox::around(o, {0.5, 500.0, 0.2, 10.0, 10.0, 10.0, 2.0});
}

} // namespace

TEST_CASE("summary of a single sample and of {1,2,3,4}") {
  const std::vector<std::vector<double>> one{{3.5, -1.0}};
  const auto s1 = summarize(one);
  CHECK(s1[0] == ParameterSummary{3.5, 3.5, 3.5, 3.5, 0.0});
  CHECK(s1[1].median == -1.0);

  const std::vector<std::vector<double>> four{{3.0}, {1.0}, {4.0}, {2.0}};
  const auto s4 = summarize(four)[0];
  CHECK(s4.min == 1.0);
  CHECK(s4.median == 2.5);
  CHECK(s4.mean == 2.5);
  CHECK(s4.max == 4.0);
  CHECK(s4.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
}

TEST_CASE("summary matches a sort-based oracle") {
  Rng rng(19);
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < 1000; ++k) rows.push_back({rng.normal(), std::exp(rng.normal())});
  const auto s = summarize(rows);
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<double> col;
    for (const auto &r : rows) col.push_back(r[j]);
    std::sort(col.begin(), col.end());
    double mean = 0.0;
    for (double x : col) mean += x;
    mean /= double(col.size());
    double ss = 0.0;
    for (double x : col) ss += (x - mean) * (x - mean);
    CHECK(s[j].min == col.front());
    CHECK(s[j].max == col.back());
    CHECK(s[j].median == 0.5 * (col[499] + col[500]));
    CHECK(s[j].mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(s[j].sd == doctest::Approx(std::sqrt(ss / 999.0)).epsilon(1e-12));
    CHECK(s[j].min <= s[j].median);
    CHECK(s[j].median <= s[j].max);
  }
  CHECK_THROWS_AS((void)summarize(std::vector<std::vector<double>>{}), InvalidInput);
  CHECK_THROWS_AS((void)summarize(std::vector<std::vector<double>>{{1.0}, {1.0, 2.0}}), InvalidInput);
}

TEST_CASE("zero proposal scales started at truth keep every sample at truth") {
  const auto obs = synthetic(kReference, 5.0, 1, false);
  FitOptions opt;
  opt.n_steps = 2000;
  opt.burn_in = 500;
  opt.initial = kReference;
  // Zero scales everywhere except a tiny one so the chain still accepts.
  opt.proposal_scales = {0, 0, 0, 0, 0, 0, 0};
  opt.seed = 3;
  const auto fit = fit_orbit(obs, box_around(kReference), opt);
  const auto truth = kReference.to_array();
  for (std::size_t j = 0; j < kElementCount; ++j) {
    CHECK(fit.summary.elements[j].min == truth[j]);
    CHECK(fit.summary.elements[j].max == truth[j]);
  }
  CHECK(fit.summary.n_samples == 1500);
}

TEST_CASE("noisy synthetic data: posterior brackets the generating orbit") {
  const auto obs = synthetic(kReference, 5.0, 2, true);
  FitOptions opt;
  opt.n_steps = 60000;
  opt.burn_in = 10000;
  opt.initial = kReference;
  opt.proposal_scales = suggest_proposal_scales(kReference, obs, 0.5);
  opt.seed = 4;
  const auto fit = fit_orbit(obs, box_around(kReference), opt);
  const auto truth = kReference.to_array();
  for (std::size_t j = 0; j < kElementCount; ++j) {
    const auto &s = fit.summary.elements[j];
    CHECK(std::abs(s.mean - truth[j]) < 3.0 * s.sd);
    CHECK(s.min <= s.mean);
    CHECK(s.mean <= s.max);
  }
  CHECK(fit.acceptance_rate > 0.1);
  CHECK(fit.acceptance_rate < 0.9);
}

TEST_CASE("a box excluding the truth piles the posterior on the nearest face") {
  const auto obs = synthetic(kReference, 5.0, 5, false);
  auto box = box_around(kReference);
  box.bounds[0] = {kReference.period - 0.05, kReference.period - 0.01};
  auto start = kReference;
  start.period = kReference.period - 0.03;
  // Only the period moves: a 1-D slice of the likelihood.
  FitOptions opt;
  opt.n_steps = 20000;
  opt.burn_in = 5000;
  opt.initial = start;
  opt.proposal_scales = {0.002, 0, 0, 0, 0, 0, 0};
  opt.seed = 6;
  const auto fit = fit_orbit(obs, box, opt);

  // Oracle: the slice is increasing towards the upper face.
  double prev = -INFINITY;
  for (int g = 0; g <= 40; ++g) {
    auto o = kReference;
    o.period = box.bounds[0].lo + (box.bounds[0].hi - box.bounds[0].lo) * g / 40.0;
    const double ll = log_likelihood(o, obs);
    CHECK(ll > prev);
    prev = ll;
  }
  const auto &p = fit.summary.elements[0];
  CHECK(p.max <= box.bounds[0].hi);
  CHECK(box.bounds[0].hi - p.max < 1e-3);
  CHECK(box.bounds[0].hi - p.median < 0.005);
}

TEST_CASE("fits are reproducible for a seed and chains differ") {
  const auto obs = synthetic(kReference, 5.0, 7, true);
  FitOptions opt;
  opt.n_steps = 3000;
  opt.burn_in = 1000;
  opt.initial = kReference;
  opt.proposal_scales = suggest_proposal_scales(kReference, obs);
  opt.seed = 99;
  opt.chains = 3;
  const auto a = fit_orbit(obs, box_around(kReference), opt);
  const auto b = fit_orbit(obs, box_around(kReference), opt);
  REQUIRE(a.chains.size() == 3);
  for (std::size_t c = 0; c < 3; ++c) CHECK(a.chains[c] == b.chains[c]);
  CHECK_FALSE(a.chains[0] == a.chains[1]);
  for (std::size_t j = 0; j < kElementCount; ++j) CHECK(a.summary.elements[j] == b.summary.elements[j]);
  CHECK(a.summary.n_samples == 3 * 2000);
}

TEST_CASE("an all-rejected chain reports a diagnostic") {
  auto obs = synthetic(kReference, 1e-6, 8, false);
  FitOptions opt;
  opt.n_steps = 500;
  opt.burn_in = 100;
  opt.initial = kReference;
  opt.proposal_scales = {0.5, 200, 0.1, 5, 5, 5, 1};
  opt.seed = 1;
  try {
    (void)fit_orbit(obs, box_around(kReference), opt);
    FAIL("expected ChainAborted");
  } catch (const ChainAborted &e) {
    CHECK(std::string(e.what()).find("smaller proposal scales") != std::string::npos);
  }
}

TEST_CASE("option and prior validation") {
  const auto obs = synthetic(kReference, 5.0, 9, false);
  FitOptions opt;
  opt.n_steps = 100;
  opt.burn_in = 100;
  CHECK_THROWS_AS((void)fit_orbit(obs, box_around(kReference), opt), InvalidInput);
  opt.burn_in = 10;
  auto outside = kReference;
  outside.period += 10.0;
  opt.initial = outside;
  CHECK_THROWS_AS((void)fit_orbit(obs, box_around(kReference), opt), InvalidInput);

  PriorBox bad = box_around(kReference);
  bad.bounds[2] = {0.5, 1.2};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = box_around(kReference);
  bad.bounds[0] = {3.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);

  const auto box = box_around(kReference);
  CHECK(box.contains(kReference));
  CHECK(box.contains(box.center()));
  CHECK(std::isfinite(box.log_density()));
  CHECK(log_posterior(outside, obs, box) == -INFINITY);
}

TEST_CASE("suggested scales are positive and finite") {
  const auto obs = synthetic(kReference, 5.0, 10, false);
  for (double s : suggest_proposal_scales(kReference, obs)) {
    CHECK(s > 0.0);
    CHECK(std::isfinite(s));
  }
  auto circular = kReference;
  circular.eccentricity = 0.0;
  for (double s : suggest_proposal_scales(circular, synthetic(circular, 5.0, 10, false))) CHECK(std::isfinite(s));
}
