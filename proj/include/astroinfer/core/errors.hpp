#pragma once

#include <stdexcept>
#include <string>

namespace astroinfer {

// Malformed or out-of-contract input: bad parameters, invalid states,
// unparsable files.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to converge or produced NaN.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A Markov chain could not continue. `diagnostic()` carries a printable
// rendering of the state at which the chain stopped.
class ChainAborted : public std::runtime_error {
public:
  ChainAborted(const std::string &what, std::string diagnostic)
      : std::runtime_error(what), diagnostic_(std::move(diagnostic)) {}

  [[nodiscard]] const std::string &diagnostic() const noexcept { return diagnostic_; }

private:
  std::string diagnostic_;
};

} // namespace astroinfer
