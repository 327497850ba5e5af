#pragma once

#include "astroinfer/core/rng.hpp"
#include "astroinfer/filaments/model.hpp"
#include "astroinfer/samplers/anneal.hpp"

namespace astroinfer::filaments {

struct DetectOptions {
  std::size_t record_every = 100;
};

struct Detection {
  MarkedConfiguration best;
  FilamentStats stats;
  double energy = 0.0;
  AnnealResult<MarkedConfiguration> run;
};

/// Simulated annealing over segment configurations, starting from the empty
/// configuration. Returns the lowest-energy configuration visited.
[[nodiscard]] Detection detect(const GalaxyCatalog &catalog, const FilamentParams &params,
                               const AnnealingSchedule &schedule, const MoveMix &mix, Rng &rng,
                               const DetectOptions &options = {});

} // namespace astroinfer::filaments
