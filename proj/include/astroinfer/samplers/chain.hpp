#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/core/rng.hpp"

namespace astroinfer {

enum class MoveKind : std::uint8_t { random_walk, birth, death, change };

[[nodiscard]] std::string_view to_string(MoveKind kind) noexcept;

/// Probabilities of the birth / death / change moves of the variable-dimension
/// kernel.
struct MoveMix {
  double birth = 0.4;
  double death = 0.4;
  double change = 0.2;

  /// Throws InvalidInput unless all entries are nonnegative and sum to 1
  /// within 1e-12.
  void validate() const;
  [[nodiscard]] MoveKind draw(Rng &rng) const;
};

/// Recorded steps of one chain. The four per-step vectors always have equal
/// length; `steps` holds the global step index of each record (chains may be
/// thinned).
template <class State>
struct ChainRecord {
  std::vector<State> states;
  std::vector<double> log_targets;
  std::vector<bool> accepted;
  std::vector<MoveKind> moves;
  std::vector<std::size_t> steps;
  std::uint64_t seed = 0;

  void push(std::size_t step, const State &state, double log_target, bool was_accepted,
            MoveKind move) {
    steps.push_back(step);
    states.push_back(state);
    log_targets.push_back(log_target);
    accepted.push_back(was_accepted);
    moves.push_back(move);
  }

  [[nodiscard]] std::size_t size() const noexcept { return states.size(); }

  [[nodiscard]] bool consistent() const noexcept {
    const auto n = states.size();
    return log_targets.size() == n && accepted.size() == n && moves.size() == n &&
           steps.size() == n;
  }

  /// Fraction of accepted records from index `from` on.
  [[nodiscard]] double acceptance_rate(std::size_t from = 0) const noexcept {
    if (from >= accepted.size()) return 0.0;
    std::size_t k = 0;
    for (std::size_t i = from; i < accepted.size(); ++i) k += accepted[i] ? 1 : 0;
    return static_cast<double>(k) / static_cast<double>(accepted.size() - from);
  }

  friend bool operator==(const ChainRecord &, const ChainRecord &) = default;
};

} // namespace astroinfer
