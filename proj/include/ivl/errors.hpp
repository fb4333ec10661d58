#pragma once

#include <stdexcept>
#include <string>

namespace ivl {

// Base of every error thrown by the engine. Callers that only care about
// "something went wrong" catch this; the ledger runner maps it to an error
// status on the offending claim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define IVL_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

IVL_DEFINE_ERROR(DivisionByZero)
IVL_DEFINE_ERROR(DescriptorMismatch)
IVL_DEFINE_ERROR(NotRepresentable)
IVL_DEFINE_ERROR(InvalidField)
IVL_DEFINE_ERROR(VarSetMismatch)
IVL_DEFINE_ERROR(PoleAtPoint)
IVL_DEFINE_ERROR(DenominatorVanishes)
IVL_DEFINE_ERROR(NotInvertible)
IVL_DEFINE_ERROR(GroupTooLarge)
IVL_DEFINE_ERROR(OrderExceedsCap)
IVL_DEFINE_ERROR(NotUnimodular)
IVL_DEFINE_ERROR(ZeroCoefficient)
IVL_DEFINE_ERROR(NotAffineAction)
IVL_DEFINE_ERROR(ParseError)

#undef IVL_DEFINE_ERROR

}  // namespace ivl
