#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nldp {

enum class Errc {
  NonSymmetric,
  MassAtOrigin,
  DivergentLevyMoment,
  QuadratureNotConverged,
  EmptyGrid,
  UnsupportedPair,
  BadRadii,
  HaloTooSmall,
  ShapeMismatch,
  NotPowerOfTwo,
  EmptyInterior,
  OutOfTimeRange,
  ExtensionMismatch,
  InvalidProblem,
  DegenerateGrid,
  CflViolation,
  NonfiniteValue,
  NoConvergence,
  MissingExtensionDerivatives,
  ConfigMismatch,
  InadmissiblePair,
  ConfigParse,
  UnknownPreset,
  IoFailure,
  UnknownSuite,
  InvalidArgument,
};

std::string_view to_string(Errc code);

/// All library failures are reported through this type; `code()` is stable, the message is not.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace nldp
