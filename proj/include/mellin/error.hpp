#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mellin {

enum class ErrorKind {
  Domain,
  Pole,
  NoConvergence,
  DivergentSeries,
  BadDenominator,
  OutOfStrip,
  EmptyStrip,
  Unsupported,
  PoleCollision,
  BoundaryRegion,
  PatternMismatch,
  SimplePoleViolation,
  SlowDecay,
  HighVariance,
  DimensionMismatch,
  InvalidModel,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind; every fallible operation in
/// the library throws this.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mellin
