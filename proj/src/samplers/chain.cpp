#include "astroinfer/samplers/chain.hpp"

#include <cmath>

namespace astroinfer {

std::string_view to_string(MoveKind kind) noexcept {
  switch (kind) {
  case MoveKind::random_walk: return "walk";
  case MoveKind::birth: return "birth";
  case MoveKind::death: return "death";
  case MoveKind::change: return "change";
  }
  return "?";
}

void MoveMix::validate() const {
  if (!(birth >= 0.0) || !(death >= 0.0) || !(change >= 0.0))
    throw InvalidInput("move probabilities must be nonnegative");
  if (std::abs(birth + death + change - 1.0) > 1e-12)
    throw InvalidInput("move probabilities must sum to 1");
  if ((birth > 0.0) != (death > 0.0))
    throw InvalidInput("birth and death moves must both be enabled or both disabled");
}

MoveKind MoveMix::draw(Rng &rng) const {
  const double u = rng.uniform();
  if (u < birth) return MoveKind::birth;
  if (u < birth + death) return MoveKind::death;
  return MoveKind::change;
}

} // namespace astroinfer
