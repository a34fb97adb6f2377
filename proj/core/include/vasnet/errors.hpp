#pragma once

#include <stdexcept>
#include <string>

namespace vasnet {

// Base of every error the library throws; callers that only care about
// "the run failed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define VASNET_DEFINE_ERROR(Name)                      \
  class Name : public Error {                          \
   public:                                             \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  };

VASNET_DEFINE_ERROR(NonFiniteState)
VASNET_DEFINE_ERROR(CflViolation)
VASNET_DEFINE_ERROR(StabilityViolation)
VASNET_DEFINE_ERROR(NoConvergence)
VASNET_DEFINE_ERROR(EmptyEnsemble)
VASNET_DEFINE_ERROR(DegenerateData)
VASNET_DEFINE_ERROR(UnresolvedBump)
VASNET_DEFINE_ERROR(InvalidDecomposition)
VASNET_DEFINE_ERROR(PositivityAbort)
VASNET_DEFINE_ERROR(ConfigError)
VASNET_DEFINE_ERROR(FormatError)

#undef VASNET_DEFINE_ERROR

}  // namespace vasnet
