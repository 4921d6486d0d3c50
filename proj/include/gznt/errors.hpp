#pragma once

#include <stdexcept>
#include <string>

namespace gznt {

// Root of every error raised by the library. The CLI maps ConfigError to exit
// code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GZNT_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

GZNT_DEFINE_ERROR(DomainError)
GZNT_DEFINE_ERROR(NoConvergence)
GZNT_DEFINE_ERROR(AtomCollision)
GZNT_DEFINE_ERROR(PoleHit)
GZNT_DEFINE_ERROR(ZeroDenominator)
GZNT_DEFINE_ERROR(AmbiguousBoundary)
GZNT_DEFINE_ERROR(NotAZero)
GZNT_DEFINE_ERROR(Unclassifiable)
GZNT_DEFINE_ERROR(NotNonpositiveType)
GZNT_DEFINE_ERROR(PathLost)
GZNT_DEFINE_ERROR(InsufficientSamples)
GZNT_DEFINE_ERROR(ConfigError)

#undef GZNT_DEFINE_ERROR

}  // namespace gznt
