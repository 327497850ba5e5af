#include "astroinfer/core/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "astroinfer/core/errors.hpp"

namespace astroinfer {

ParameterVector::ParameterVector(std::vector<std::string> names, std::vector<double> values,
                                 std::vector<Bound> bounds) {
  if (names.size() != values.size() || names.size() != bounds.size())
    throw InvalidInput("parameter names, values and bounds must have equal length");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!seen.insert(names[i]).second)
      throw InvalidInput("duplicate parameter name '" + names[i] + "'");
    const Bound &b = bounds[i];
    if (std::isnan(b.lo) || std::isnan(b.hi) || b.lo > b.hi)
      throw InvalidInput("invalid bound for parameter '" + names[i] + "'");
    if (b.period && !(*b.period > 0.0))
      throw InvalidInput("period of parameter '" + names[i] + "' must be positive");
  }
  layout_ = std::make_shared<const Layout>(Layout{std::move(names), std::move(bounds)});
  *this = with_values(std::move(values));
}

ParameterVector::ParameterVector(std::shared_ptr<const Layout> layout, std::vector<double> values)
    : layout_(std::move(layout)), values_(std::move(values)) {}

const std::vector<std::string> &ParameterVector::names() const noexcept {
  static const std::vector<std::string> empty;
  return layout_ ? layout_->names : empty;
}

const std::vector<Bound> &ParameterVector::bounds() const noexcept {
  static const std::vector<Bound> empty;
  return layout_ ? layout_->bounds : empty;
}

std::size_t ParameterVector::index_of(std::string_view name) const {
  const auto &n = names();
  const auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end()) throw InvalidInput("unknown parameter '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - n.begin());
}

bool ParameterVector::has(std::string_view name) const noexcept {
  const auto &n = names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

double ParameterVector::at(std::string_view name) const { return values_[index_of(name)]; }

bool ParameterVector::admits(std::span<const double> values) const noexcept {
  const auto &b = bounds();
  if (values.size() != b.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!b[i].contains(values[i])) return false;
  return true;
}

ParameterVector ParameterVector::with_values(std::vector<double> values) const {
  const auto &b = bounds();
  if (values.size() != b.size())
    throw InvalidInput("parameter vector expects " + std::to_string(b.size()) + " values");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!b[i].contains(values[i]))
      throw InvalidInput("parameter '" + names()[i] + "' = " + std::to_string(values[i]) +
                         " outside [" + std::to_string(b[i].lo) + ", " +
                         std::to_string(b[i].hi) + "]");
  return ParameterVector(layout_, std::move(values));
}

ParameterVector ParameterVector::with(std::string_view name, double value) const {
  auto v = values_;
  v[index_of(name)] = value;
  return with_values(std::move(v));
}

bool operator==(const ParameterVector &a, const ParameterVector &b) noexcept {
  return a.values_ == b.values_ && a.names() == b.names();
}

} // namespace astroinfer
