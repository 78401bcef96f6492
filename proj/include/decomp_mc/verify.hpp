#pragma once

#include <cstdint>

#include "decomp_mc/json_io.hpp"

namespace decomp_mc {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int lsob_starts = 16;
  int property_draws = 1000;
  double tol_identity = 1e-12;        // variance / Dirichlet decompositions
  double tol_entropy = 1e-10;         // entropy decomposition
  double tol_inequality = 1e-10;      // mean-comparison inequality suite
  double tol_gap_soundness = 1e-9;    // Poincare bounds vs exact gap
  double tol_alpha_soundness = 1e-6;  // log-Sobolev bounds vs numeric alpha
  double tol_alpha_half_gap = 1e-8;   // alpha <= gap/2
  double gamma_hat_zero = 1e-12;      // gamma_hat below this enables cor3/cor6
  bool timings = false;               // include runtime stats (breaks byte-identical output)
};

struct MeasuredQuantities {
  double gap = 0.0;
  double alpha = 0.0;
  double lambda_bar = 0.0;
  double alpha_bar = 0.0;
  double lambda_min = 0.0;  // +inf when every restriction is a singleton
  double alpha_min = 0.0;
  double gamma = 0.0;
  double eta = 0.0;
  double gamma_hat = 0.0;
  double min_loop = 0.0;
};

struct VerifyOutcome {
  Json report;
  MeasuredQuantities measured;
  bool all_pass = false;
};

/// Decomposes the chain, measures projection/restriction constants with the
/// spectral oracles, evaluates every applicable decomposition rule, and runs
/// the identity and inequality suites.  The report lists one pass/fail row
/// per check; all_pass mirrors the CLI exit-code contract.
VerifyOutcome verify_instance(const ReversibleChain& chain,
                              const Partition& part,
                              const VerifyOptions& options = {},
                              const Json& metadata = Json::object());

}  // namespace decomp_mc
