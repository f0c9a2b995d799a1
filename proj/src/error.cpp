#include "modlim/error.hpp"

namespace modlim {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kNotLsc: return "NotLSC";
    case Errc::kInfiniteArea: return "InfiniteArea";
    case Errc::kNonPositive: return "NonPositive";
    case Errc::kUnboundedInterval: return "UnboundedInterval";
    case Errc::kMalformedSpec: return "MalformedSpec";
    case Errc::kInvalidQuadruple: return "InvalidQuadruple";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kDegenerateQuadruple: return "DegenerateQuadruple";
    case Errc::kQuadratureFailure: return "QuadratureFailure";
    case Errc::kEmptyFamily: return "EmptyFamily";
    case Errc::kDegenerateStrip: return "DegenerateStrip";
    case Errc::kResolutionTooCoarse: return "ResolutionTooCoarse";
    case Errc::kDisconnected: return "Disconnected";
    case Errc::kIterationLimit: return "IterationLimit";
    case Errc::kInfeasibleEta: return "InfeasibleEta";
    case Errc::kScheduleTooCoarse: return "ScheduleTooCoarse";
    case Errc::kUnsupportedKind: return "UnsupportedKind";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIo: return "IoError";
    case Errc::kParse: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace modlim
