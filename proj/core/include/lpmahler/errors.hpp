#pragma once

#include <stdexcept>
#include <string>

namespace lpm {

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LPM_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& msg) : Error(msg) {}       \
  }

LPM_DEFINE_ERROR(DegenerateInput);
LPM_DEFINE_ERROR(OriginNotInterior);
LPM_DEFINE_ERROR(AnchorOutside);
LPM_DEFINE_ERROR(DegenerateNeighbors);
LPM_DEFINE_ERROR(InvalidP);
LPM_DEFINE_ERROR(InfiniteP);
LPM_DEFINE_ERROR(Divergent);
LPM_DEFINE_ERROR(OutOfRange);
LPM_DEFINE_ERROR(UnboundedSlide);
LPM_DEFINE_ERROR(NoBracket);
LPM_DEFINE_ERROR(NoConvergence);
LPM_DEFINE_ERROR(AlreadyMinimal);
LPM_DEFINE_ERROR(NotQuadratic);
LPM_DEFINE_ERROR(GenerationFailed);
LPM_DEFINE_ERROR(UnknownSuite);
LPM_DEFINE_ERROR(PointNotInterior);
LPM_DEFINE_ERROR(UsageError);

#undef LPM_DEFINE_ERROR

}  // namespace lpm
