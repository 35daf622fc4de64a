#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define ORLICZ_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
  public:                                                           \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

ORLICZ_DEFINE_ERROR(NonConvexInput);
ORLICZ_DEFINE_ERROR(BracketOverflow);
ORLICZ_DEFINE_ERROR(NoRoot);
ORLICZ_DEFINE_ERROR(BadParam);
ORLICZ_DEFINE_ERROR(BandLimitExceeded);
ORLICZ_DEFINE_ERROR(NonFiniteModular);
ORLICZ_DEFINE_ERROR(BadExponent);
ORLICZ_DEFINE_ERROR(HypothesisFailed);
ORLICZ_DEFINE_ERROR(NoFit);
ORLICZ_DEFINE_ERROR(ParseError);
ORLICZ_DEFINE_ERROR(IoError);

#undef ORLICZ_DEFINE_ERROR

}  // namespace orlicz
