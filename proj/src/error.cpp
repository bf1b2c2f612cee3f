#include "fglab/error.hpp"

namespace fglab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::UnknownAction: return "UnknownAction";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::NotAFragmentation: return "NotAFragmentation";
    case ErrorKind::InvalidBase: return "InvalidBase";
    case ErrorKind::BallTooLarge: return "BallTooLarge";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::DepthCap: return "DepthCap";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::RimContact: return "RimContact";
    case ErrorKind::NoRepetition: return "NoRepetition";
    case ErrorKind::PreconditionNphi: return "PreconditionNphi";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::TransportFailure: return "TransportFailure";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::FamilyFailure: return "FamilyFailure";
    case ErrorKind::OrderCap: return "OrderCap";
    case ErrorKind::InvalidRadius: return "InvalidRadius";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace fglab
