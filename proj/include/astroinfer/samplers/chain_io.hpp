#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "astroinfer/core/energy.hpp"
#include "astroinfer/core/format.hpp"
#include "astroinfer/samplers/chain.hpp"

namespace astroinfer {

/// Writes one CSV row per recorded step:
///   step,move,accepted,log_target,<state columns>
/// When `state_columns` is empty the flattened state goes into a single
/// `state` column as space-separated numbers (variable-length states).
template <class State, class Flatten>
void write_chain_csv(std::ostream &os, const ChainRecord<State> &chain,
                     std::span<const std::string> state_columns, Flatten &&flatten) {
  os << "step,move,accepted,log_target";
  if (state_columns.empty()) {
    os << ",state";
  } else {
    for (const auto &c : state_columns) os << ',' << c;
  }
  os << '\n';
  for (std::size_t i = 0; i < chain.size(); ++i) {
    os << chain.steps[i] << ',' << to_string(chain.moves[i]) << ',' << (chain.accepted[i] ? 1 : 0)
       << ',' << format_double(chain.log_targets[i]);
    const std::vector<double> flat = flatten(chain.states[i]);
    if (state_columns.empty()) {
      os << ',';
      for (std::size_t k = 0; k < flat.size(); ++k) os << (k ? " " : "") << format_double(flat[k]);
    } else {
      for (double v : flat) os << ',' << format_double(v);
    }
    os << '\n';
  }
}

/// JSON sidecar describing how a chain was produced.
struct ChainSidecar {
  std::uint64_t seed = 0;
  std::size_t n_records = 0;
  std::size_t n_steps = 0;
  double acceptance_rate = 0.0;
  std::optional<AnnealingSchedule> schedule{};
  std::optional<MoveMix> mix{};
  nlohmann::json extra = nlohmann::json::object();
};

[[nodiscard]] nlohmann::json to_json(const AnnealingSchedule &s);
[[nodiscard]] nlohmann::json to_json(const MoveMix &m);
[[nodiscard]] nlohmann::json to_json(const ChainSidecar &s);

} // namespace astroinfer
