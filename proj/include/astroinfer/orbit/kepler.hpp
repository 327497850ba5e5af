#pragma once

namespace astroinfer::orbit {

/// Eccentric anomaly E solving E - e sin E = M, with M first reduced onto
/// [0, 2 pi). Safeguarded Newton iteration inside the bracket that always
/// contains the root; |E - e sin E - M| < 1e-12 on return.
///
/// Throws InvalidInput unless 0 <= e < 1 and M is finite, NumericalError if
/// 100 iterations do not converge.
[[nodiscard]] double solve_kepler(double mean_anomaly, double eccentricity);

/// M reduced onto [0, 2 pi), as used by solve_kepler.
[[nodiscard]] double reduce_mean_anomaly(double mean_anomaly) noexcept;

} // namespace astroinfer::orbit
