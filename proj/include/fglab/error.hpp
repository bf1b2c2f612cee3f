#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fglab {

enum class ErrorKind {
  InvalidPoint,
  UnknownGenerator,
  UnknownAction,
  InvalidAction,
  NotAFragmentation,
  InvalidBase,
  BallTooLarge,
  NotConnected,
  NotAPartition,
  NotInvertible,
  DepthCap,
  NotStabilized,
  RimContact,
  NoRepetition,
  PreconditionNphi,
  PatternMismatch,
  TransportFailure,
  WindowTooSmall,
  FamilyFailure,
  OrderCap,
  InvalidRadius,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All library failures are reported through this exception; `kind()` is the
/// machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fglab
