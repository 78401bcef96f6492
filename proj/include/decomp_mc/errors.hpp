#pragma once

#include <stdexcept>
#include <string>

namespace decomp_mc {

enum class Errc {
  not_stochastic,
  not_irreducible,
  not_reversible,
  length_mismatch,
  all_zero_function,
  eigen_failure,
  optimizer_stall,
  state_too_heavy,
  not_mixed_within,
  invalid_partition,
  projection_not_irreducible,
  restriction_not_irreducible,
  undefined_hat,
  eta_underflow,
  cor3_nonzero_gamma,
  negative_loop,
  disconnected,
  too_many_bases,
  no_fractional_matching,
  bad_input,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::not_stochastic: return "NotStochastic";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::not_reversible: return "NotReversible";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::all_zero_function: return "AllZeroFunction";
    case Errc::eigen_failure: return "EigenFailure";
    case Errc::optimizer_stall: return "OptimizerStall";
    case Errc::state_too_heavy: return "StateTooHeavy";
    case Errc::not_mixed_within: return "NotMixedWithin";
    case Errc::invalid_partition: return "InvalidPartition";
    case Errc::projection_not_irreducible: return "ProjectionNotIrreducible";
    case Errc::restriction_not_irreducible: return "RestrictionNotIrreducible";
    case Errc::undefined_hat: return "UndefinedHat";
    case Errc::eta_underflow: return "EtaUnderflow";
    case Errc::cor3_nonzero_gamma: return "Cor3NonzeroGamma";
    case Errc::negative_loop: return "NegativeLoop";
    case Errc::disconnected: return "Disconnected";
    case Errc::too_many_bases: return "TooManyBases";
    case Errc::no_fractional_matching: return "NoFractionalMatching";
    case Errc::bad_input: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace decomp_mc
