#pragma once

#include <stdexcept>
#include <string>

namespace eqorient {

/// Whether a failure is the caller's fault or a broken internal invariant.
enum class ErrorKind { InvalidInput, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define EQORIENT_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what)                                  \
        : Error(ErrorKind::Kind, std::string(#Name ": ") + what) {}         \
  };

EQORIENT_DEFINE_ERROR(InvalidPermutation, InvalidInput)
EQORIENT_DEFINE_ERROR(OrderCapExceeded, InvalidInput)
EQORIENT_DEFINE_ERROR(InvalidArgument, InvalidInput)
EQORIENT_DEFINE_ERROR(NonIntegralElement, InvalidInput)
EQORIENT_DEFINE_ERROR(NotAUnit, InvalidInput)
EQORIENT_DEFINE_ERROR(NotIndexTwo, InvalidInput)
EQORIENT_DEFINE_ERROR(OddOrderInput, InvalidInput)
EQORIENT_DEFINE_ERROR(EvenOrderInput, InvalidInput)
EQORIENT_DEFINE_ERROR(NotFree, InvalidInput)
EQORIENT_DEFINE_ERROR(CoefficientMismatch, InvalidInput)
EQORIENT_DEFINE_ERROR(InvalidComplex, InvalidInput)
EQORIENT_DEFINE_ERROR(InvalidRepresentation, InvalidInput)
// These two signal bugs: the theorems they guard are taken as ground truth.
EQORIENT_DEFINE_ERROR(MatsudaMismatch, Internal)
EQORIENT_DEFINE_ERROR(FormulaMismatch, Internal)

#undef EQORIENT_DEFINE_ERROR

}  // namespace eqorient
