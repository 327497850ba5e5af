#include "astroinfer/heavytail/tail_index.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "astroinfer/core/errors.hpp"
#include "astroinfer/heavytail/fit.hpp"

namespace astroinfer::heavytail {

double tail_index(std::span<const double> values, std::size_t k, ExceedanceSide side) {
  if (k == 0) throw InvalidInput("the Hill estimator needs k >= 1");
  if (values.empty()) throw InvalidInput("the Hill estimator needs data");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = quantile_sorted(sorted, 0.5);

  std::vector<double> exceedances;
  exceedances.reserve(values.size());
  for (double x : values) {
    double y = 0.0;
    switch (side) {
    case ExceedanceSide::upper: y = x - median; break;
    case ExceedanceSide::lower: y = median - x; break;
    case ExceedanceSide::absolute: y = std::abs(x - median); break;
    }
    if (y > 0.0) exceedances.push_back(y);
  }
  if (exceedances.size() <= k)
    throw InvalidInput("not enough positive exceedances over the median for the requested k");
  std::nth_element(exceedances.begin(), exceedances.begin() + static_cast<std::ptrdiff_t>(k),
                   exceedances.end(), std::greater<>());
  const double threshold = exceedances[k];
  double h = 0.0;
  for (std::size_t i = 0; i < k; ++i) h += std::log(exceedances[i] / threshold);
  h /= static_cast<double>(k);
  if (!(h > 0.0)) throw InvalidInput("the k largest exceedances are all equal");
  return 1.0 / h;
}

} // namespace astroinfer::heavytail
