#pragma once

#include <stdexcept>
#include <string>

namespace ndtc {

// Input matrix fails the Hermiticity check.
struct NotHermitian : std::invalid_argument {
  explicit NotHermitian(const std::string& what) : std::invalid_argument(what) {}
};

// Jacobi eigensolver exceeded its sweep budget.
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Operands have incompatible or unsupported dimensions.
struct DimMismatch : std::invalid_argument {
  explicit DimMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// thermal_occupation needs a strictly positive frequency/temperature ratio.
struct NonPositiveRatio : std::invalid_argument {
  explicit NonPositiveRatio(const std::string& what) : std::invalid_argument(what) {}
};

// Closed-form propagator entry requested outside the four-state sector frame
// (boundary sectors route to the numeric path instead).
struct IndexOutOfSector : std::out_of_range {
  explicit IndexOutOfSector(const std::string& what) : std::out_of_range(what) {}
};

// A published density-matrix-element formula cannot be evaluated as printed.
struct MalformedFormula : std::runtime_error {
  explicit MalformedFormula(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ndtc
