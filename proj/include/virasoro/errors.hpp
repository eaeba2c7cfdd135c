#pragma once
#include <stdexcept>
#include <string>

namespace vir {

// Base for every failure raised by the library; the CLI maps these to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define VIR_ERROR(Name)                  \
  struct Name : Error {                  \
    using Error::Error;                  \
  }

VIR_ERROR(OutOfRange);
VIR_ERROR(NotCoprime);
VIR_ERROR(NonIntegralArgument);
VIR_ERROR(FractionalExponent);
VIR_ERROR(AmbiguousMembership);
VIR_ERROR(IndexOverflow);
VIR_ERROR(MissingContext);
VIR_ERROR(UnstableTruncation);
VIR_ERROR(NotProductCase);
VIR_ERROR(ParityMismatch);
VIR_ERROR(CapExceeded);

#undef VIR_ERROR

}  // namespace vir
