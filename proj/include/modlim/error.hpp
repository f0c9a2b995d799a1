#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modlim {

/// Error conditions raised across the toolkit. The CLI maps these onto its
/// exit-code contract (see `exit_code_for`).
enum class Errc {
  // domain_model
  kNotLsc,
  kInfiniteArea,
  kNonPositive,
  kUnboundedInterval,
  kMalformedSpec,
  kInvalidQuadruple,
  // analytic_modulus
  kOutOfRange,
  kDegenerateQuadruple,
  // vertical_modulus
  kQuadratureFailure,
  kEmptyFamily,
  kDegenerateStrip,
  // discrete_modulus
  kResolutionTooCoarse,
  kDisconnected,
  kIterationLimit,
  kInfeasibleEta,
  // limit_harness
  kScheduleTooCoarse,
  kUnsupportedKind,
  kInvalidArgument,
  // io
  kIo,
  kParse,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace modlim
