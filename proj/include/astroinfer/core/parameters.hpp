#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace astroinfer {

/// Closed interval for one parameter. When `period` is set the parameter
/// lives on a circle [0, period) and random-walk proposals wrap around it;
/// otherwise proposals are reflected at lo/hi.
struct Bound {
  double lo;
  double hi;
  std::optional<double> period{};

  [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Named model parameters with per-parameter bounds. The layout (names and
/// bounds) is shared between copies, so copying a vector inside a sampler
/// loop only copies the values.
class ParameterVector {
public:
  ParameterVector() = default;

  /// Throws InvalidInput on duplicate names, size mismatch, lo > hi or a
  /// value outside its bound.
  ParameterVector(std::vector<std::string> names, std::vector<double> values,
                  std::vector<Bound> bounds);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] double at(std::string_view name) const;
  [[nodiscard]] std::size_t index_of(std::string_view name) const;
  [[nodiscard]] bool has(std::string_view name) const noexcept;

  [[nodiscard]] const std::vector<double> &values() const noexcept { return values_; }
  [[nodiscard]] const std::vector<std::string> &names() const noexcept;
  [[nodiscard]] const std::vector<Bound> &bounds() const noexcept;

  /// Same layout, new values. Throws InvalidInput when a value is out of bounds.
  [[nodiscard]] ParameterVector with_values(std::vector<double> values) const;
  [[nodiscard]] ParameterVector with(std::string_view name, double value) const;

  [[nodiscard]] bool admits(std::span<const double> values) const noexcept;

  friend bool operator==(const ParameterVector &a, const ParameterVector &b) noexcept;

private:
  struct Layout {
    std::vector<std::string> names;
    std::vector<Bound> bounds;
  };

  ParameterVector(std::shared_ptr<const Layout> layout, std::vector<double> values);

  std::shared_ptr<const Layout> layout_;
  std::vector<double> values_;
};

} // namespace astroinfer
