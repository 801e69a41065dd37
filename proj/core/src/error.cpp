#include "nldp/error.hpp"

namespace nldp {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonSymmetric: return "NonSymmetric";
    case Errc::MassAtOrigin: return "MassAtOrigin";
    case Errc::DivergentLevyMoment: return "DivergentLevyMoment";
    case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::UnsupportedPair: return "UnsupportedPair";
    case Errc::BadRadii: return "BadRadii";
    case Errc::HaloTooSmall: return "HaloTooSmall";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::EmptyInterior: return "EmptyInterior";
    case Errc::OutOfTimeRange: return "OutOfTimeRange";
    case Errc::ExtensionMismatch: return "ExtensionMismatch";
    case Errc::InvalidProblem: return "InvalidProblem";
    case Errc::DegenerateGrid: return "DegenerateGrid";
    case Errc::CflViolation: return "CflViolation";
    case Errc::NonfiniteValue: return "NonfiniteValue";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::MissingExtensionDerivatives: return "MissingExtensionDerivatives";
    case Errc::ConfigMismatch: return "ConfigMismatch";
    case Errc::InadmissiblePair: return "InadmissiblePair";
    case Errc::ConfigParse: return "ConfigParse";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::IoFailure: return "IoFailure";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nldp
