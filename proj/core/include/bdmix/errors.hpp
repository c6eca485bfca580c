#pragma once

#include <stdexcept>
#include <string>

namespace bdmix {

// Base of every error thrown by the library. `kind()` is a stable
// machine-readable tag; the CLI maps kinds onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define BDMIX_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& msg) : Error(#Name, msg) {} \
  }

// chain construction / validation
BDMIX_DEFINE_ERROR(RowSumError);
BDMIX_DEFINE_ERROR(BoundaryError);
BDMIX_DEFINE_ERROR(ReducibleError);
BDMIX_DEFINE_ERROR(RangeError);
BDMIX_DEFINE_ERROR(OverflowError);

// spectral
BDMIX_DEFINE_ERROR(SpectralError);
BDMIX_DEFINE_ERROR(DomainError);
BDMIX_DEFINE_ERROR(SideConditionError);

// hitting / Hardy
BDMIX_DEFINE_ERROR(ZeroWeightError);
BDMIX_DEFINE_ERROR(SymmetryError);

// distance
BDMIX_DEFINE_ERROR(DimensionError);
BDMIX_DEFINE_ERROR(SizeError);
BDMIX_DEFINE_ERROR(PeriodicityError);
BDMIX_DEFINE_ERROR(AccuracyError);
BDMIX_DEFINE_ERROR(DegenerateSpectrumError);

// families
BDMIX_DEFINE_ERROR(SpecError);
BDMIX_DEFINE_ERROR(ShapeError);

// cutoff / scan
BDMIX_DEFINE_ERROR(InsufficientDataError);
BDMIX_DEFINE_ERROR(InvariantViolationError);

// io
BDMIX_DEFINE_ERROR(ParseError);

#undef BDMIX_DEFINE_ERROR

}  // namespace bdmix
