#include "astroinfer/filaments/detect.hpp"

namespace astroinfer::filaments {

Detection detect(const GalaxyCatalog &catalog, const FilamentParams &params,
                 const AnnealingSchedule &schedule, const MoveMix &mix, Rng &rng,
                 const DetectOptions &options) {
  catalog.validate();
  const ParameterVector theta = params.theta();
  const FilamentEnergyModel model = make_energy_model(params);
  const ObjectProposals<Segment> proposals = make_proposals(params, catalog.window);
  MarkedConfiguration empty{catalog.window, {}};
  auto run = anneal_configuration(std::move(empty), model, theta, catalog, proposals, schedule, mix,
                                  rng, AnnealOptions{options.record_every});
  Detection out;
  out.best = run.best;
  out.energy = run.best_energy;
  out.stats = sufficient_statistics(out.best, params.epsilon(), params.alignment_angle);
  out.run = std::move(run);
  return out;
}

} // namespace astroinfer::filaments
