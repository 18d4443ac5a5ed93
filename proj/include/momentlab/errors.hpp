#pragma once

#include <stdexcept>
#include <string>

namespace momentlab {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-square input, shape mismatch between operands.
struct dimension_error : error {
  using error::error;
};

// Index set out of bounds or of mismatched size.
struct index_error : error {
  using error::error;
};

// Input violates a structural requirement (symmetry, Hankel form).
struct structure_error : error {
  using error::error;
};

// Input exceeds a hard size cap of an exact algorithm.
struct size_error : error {
  using error::error;
};

// Scalar argument outside the domain of a transform or operation.
struct domain_error : error {
  using error::error;
};

// Value object fails its own validity constraints (negative weight, ...).
struct validity_error : error {
  using error::error;
};

// Not enough moments to form the requested truncation.
struct truncation_error : error {
  using error::error;
};

// Unknown family name, malformed configuration.
struct config_error : error {
  using error::error;
};

// Two routes that must agree did not; only thrown by test oracles.
struct invariant_error : error {
  using error::error;
};

}  // namespace momentlab
