#pragma once

#include <stdexcept>
#include <string>

namespace coarse_menger {

// Malformed arguments: unknown vertices, empty sets where forbidden, bad parameters.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An exact computation would exceed a configured desk-scale cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A hypothesis of a constructive lemma does not hold on the given input.
struct PreconditionError : std::runtime_error {
  PreconditionError(std::string obligation, std::string detail)
      : std::runtime_error(obligation + ": " + detail), obligation(std::move(obligation)) {}
  std::string obligation;
};

// A certified construction failed its own re-check. Always a bug.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace coarse_menger
