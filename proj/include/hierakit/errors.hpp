#ifndef HIERAKIT_ERRORS_HPP_
#define HIERAKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hierakit {

// Invalid user-facing input: bad config files, out-of-range parameters,
// malformed containers. CLI maps this to exit code 2.
struct InvalidInputError : std::runtime_error {
  explicit InvalidInputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: NaN/Inf contamination, quadrature breakdown, budget
// exhaustion. CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Picard iteration failed to contract on the requested horizon.
// CLI maps this to exit code 4.
struct NonContractiveError : std::runtime_error {
  explicit NonContractiveError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hierakit

#endif  // HIERAKIT_ERRORS_HPP_
