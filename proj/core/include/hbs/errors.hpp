#pragma once

#include <stdexcept>
#include <string>

namespace hbs {

/// Failure taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrorKind {
  NonConvergence,
  NotCoprime,
  SingularSystem,
  PoleNearBoundary,
  GridMismatch,
  NegativeWeight,
  RootOnNode,
  TooCloseToBoundary,
  ZeroFunction,
  NotInBall,
  InnerInput,
  NotNonnegative,
  NotInSpace,
  NotMultiplier,
  RouteMismatch,
  NotH2,
  RootNotUnimodular,
  CertificationFailure,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace hbs
