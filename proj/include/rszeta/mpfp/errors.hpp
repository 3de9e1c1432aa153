#pragma once
#include <stdexcept>
#include <string>

namespace rszeta {

// Bad argument: zero to mag, division by zero, pole of zeta.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A stated hypothesis of some procedure does not hold.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The request asks for more accuracy than the method can certify.
struct PrecisionUnattainable : std::runtime_error {
  enum class Reason { MainCondition, Structural, SigmaRange, Certification };
  Reason reason;
  PrecisionUnattainable(Reason r, const std::string& what)
      : std::runtime_error(what), reason(r) {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rszeta
