#include "hbs/errors.hpp"

namespace hbs {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::PoleNearBoundary: return "PoleNearBoundary";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::RootOnNode: return "RootOnNode";
    case ErrorKind::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::NotInBall: return "NotInBall";
    case ErrorKind::InnerInput: return "InnerInput";
    case ErrorKind::NotNonnegative: return "NotNonnegative";
    case ErrorKind::NotInSpace: return "NotInSpace";
    case ErrorKind::NotMultiplier: return "NotMultiplier";
    case ErrorKind::RouteMismatch: return "RouteMismatch";
    case ErrorKind::NotH2: return "NotH2";
    case ErrorKind::RootNotUnimodular: return "RootNotUnimodular";
    case ErrorKind::CertificationFailure: return "CertificationFailure";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

}  // namespace hbs
