#pragma once

#include <cstddef>
#include <span>

namespace astroinfer::heavytail {

enum class ExceedanceSide { upper, lower, absolute };

/// Hill estimate of the tail exponent from the k largest exceedances over
/// the sample median: x - median (upper), median - x (lower) or
/// |x - median| (absolute). Needs k >= 1 and more than k positive
/// exceedances; throws InvalidInput otherwise.
[[nodiscard]] double tail_index(std::span<const double> values, std::size_t k,
                                ExceedanceSide side = ExceedanceSide::absolute);

/// Whether a tail exponent belongs to the heavy regime (below `threshold`,
/// 2 by default: infinite variance).
[[nodiscard]] inline bool is_heavy(double exponent, double threshold = 2.0) noexcept {
  return exponent < threshold;
}

} // namespace astroinfer::heavytail
