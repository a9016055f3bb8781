#pragma once

#include <stdexcept>
#include <string>

namespace weylwalk {

// Base for every error raised by the library. Physical-check failures are
// never exceptions; they are reported as values (ValidationReport,
// BoundReport, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed walk data: inconsistent coin shapes, empty support, bad scale.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A unitary has an eigenphase on the branch cut of the principal logarithm.
class BranchAmbiguityError : public Error {
 public:
  using Error::Error;
};

// An operation that only exists for a particular internal or spatial dimension.
class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

// Momentum cutoff outside the Brillouin zone.
class CutoffError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the range where an analytic bound is stated.
class RangeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Power-law fit requested on data containing an exact zero.
class FitUndefinedError : public Error {
 public:
  explicit FitUndefinedError(const std::string& what, bool exact = true)
      : Error(what), exact_(exact) {}
  bool exact() const noexcept { return exact_; }

 private:
  bool exact_;
};

}  // namespace weylwalk
