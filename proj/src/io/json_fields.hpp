#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "astroinfer/core/errors.hpp"

namespace astroinfer::io::detail {

// Reads optional keys out of one JSON object and rejects the keys nobody
// asked for.
class Fields {
public:
  Fields(const nlohmann::json &j, std::string context) : j_(j), context_(std::move(context)) {
    if (!j_.is_object()) throw InvalidInput(context_ + ": expected a JSON object");
  }

  [[nodiscard]] bool has(const std::string &key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  template <class T>
  void get(const std::string &key, T &out) {
    if (!has(key)) return;
    out = as<T>(j_.at(key), key);
  }

  template <class T>
  [[nodiscard]] T require(const std::string &key) {
    if (!has(key)) throw InvalidInput(context_ + ": missing '" + key + "'");
    return as<T>(j_.at(key), key);
  }

  [[nodiscard]] const nlohmann::json &at(const std::string &key) {
    if (!has(key)) throw InvalidInput(context_ + ": missing '" + key + "'");
    return j_.at(key);
  }

  [[nodiscard]] std::string path(const std::string &key) const { return context_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw InvalidInput(context_ + ": unknown key '" + it.key() + "'");
  }

private:
  template <class T>
  T as(const nlohmann::json &v, const std::string &key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw InvalidInput("");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<long long>() < 0))
          throw InvalidInput("");
      }
      return v.get<T>();
    } catch (const std::exception &) {
      throw InvalidInput(context_ + ": bad value for '" + key + "': " + v.dump());
    }
  }

  const nlohmann::json &j_;
  std::string context_;
  std::set<std::string> seen_;
};

} // namespace astroinfer::io::detail
