#include "astroinfer/samplers/chain_io.hpp"

namespace astroinfer {

nlohmann::json to_json(const AnnealingSchedule &s) {
  return {{"initial_temperature", s.initial_temperature},
          {"cooling_factor", s.cooling_factor},
          {"steps_per_level", s.steps_per_level},
          {"final_temperature", s.final_temperature},
          {"levels", s.levels()}};
}

nlohmann::json to_json(const MoveMix &m) {
  return {{"birth", m.birth}, {"death", m.death}, {"change", m.change}};
}

nlohmann::json to_json(const ChainSidecar &s) {
  nlohmann::json j = {{"seed", s.seed},
                      {"records", s.n_records},
                      {"steps", s.n_steps},
                      {"acceptance_rate", s.acceptance_rate}};
  if (s.schedule) j["schedule"] = to_json(*s.schedule);
  if (s.mix) j["move_mix"] = to_json(*s.mix);
  for (auto it = s.extra.begin(); it != s.extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

} // namespace astroinfer
