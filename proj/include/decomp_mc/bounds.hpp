#pragma once

#include <string>
#include <vector>

#include "decomp_mc/chain.hpp"

namespace decomp_mc {

enum class Rule { thm1, cor2, cor3, thm4, cor5, cor6 };

const char* rule_name(Rule rule);
Rule rule_from_name(const std::string& name);

struct BoundResult {
  Rule rule;
  double bar_constant = 0.0;
  double min_constant = 0.0;
  double gamma_or_gamma_hat = 0.0;
  double value = 0.0;
  std::string parse_notes;
};

/// Poincare decomposition bound.  thm1 (gamma) and cor2 (gamma_hat) evaluate
/// min{ bar/3, bar*min/(3*gamma + bar) }; cor3 requires gamma_hat = 0 and
/// returns min{ bar, min }.  min_constant may be +inf (all restrictions
/// singletons), in which case the bar term alone survives.
BoundResult poincare_bound(Rule rule, double bar_lambda, double lambda_min,
                           double gamma);

/// Log-Sobolev analogue: thm4/cor5/cor6 with alpha in place of lambda.
BoundResult lsob_bound(Rule rule, double bar_alpha, double alpha_min,
                       double gamma);

/// Halving recurrence for the spectral gap of the heat-bath Ising path on n
/// sites (site updates at probability 1/n):
///   lambda_k >= min{ 1/(3 cosh(beta)^2 n), lambda_{floor(k/2)} / (1 + (3/4)(e^{2 beta}+1)) }
/// Base cases k <= 3 are computed exactly by the spectral module (gap of the
/// k-site chain rescaled to the n-clock).
struct IsingRecursionResult {
  double bound = 0.0;      // lower bound on the gap of the n-site chain
  double exponent = 0.0;   // c = 1 + log2(1 + (3/4)(e^{2 beta} + 1))
  double projection_cap = 0.0;
  double contraction = 0.0;
  struct Level {
    int k = 0;
    double value = 0.0;
    bool base = false;
    bool capped = false;  // the projection cap was the binding term
  };
  std::vector<Level> levels;  // smallest k first
};

IsingRecursionResult ising_recursion(double beta, int n, int depth_cap = 64);

/// g_Delta(lambda) = 6 min{1/lambda, (1+lambda)^Delta - 1, 1} (1+lambda)^2
///                   ln((1+lambda)^{Delta+2} / min{1, lambda}).
double g_delta(int Delta, double fugacity);

/// Log-Sobolev lower bound for the resampling chain on three points:
/// value = (1 - 2 pi_min)/ln((1 - pi_min)/pi_min), parsed so that the bound
/// respects alpha <= lambda/2 (the printed denominator reads as
/// ln(1/pi_min - 1)); weaker = 1/(3 ln(1/pi_min)); value >= weaker.
/// pi_min = 1/2 exactly returns 1/2 by continuity with degenerate_half set.
struct AlphaK3Bound {
  double value = 0.0;
  double weaker = 0.0;
  bool degenerate_half = false;
};

AlphaK3Bound alpha_k3_bound(const Distribution& pi_bar);
AlphaK3Bound alpha_k3_from_min(double pi_min);

/// alpha_k3 / (2 (1 + fugacity)).
double claim7_bound(double alpha_k3, double fugacity);

/// Log-Sobolev recurrence for the hard-core Glauber dynamics on the
/// branching-Delta tree of depth d with clock N:
///   alpha_d >= min{ alpha_{d-2}, alpha_{d-1}/(1+G), alpha_hat/N }
/// with alpha_hat = claim7(alpha_k3(worst-case pi_min)) evaluated at the
/// worst-case block masses and G = min{1/lambda,(1+lambda)^Delta-1,1} *
/// (1+lambda) / alpha_hat; base cases alpha_0, alpha_1 are computed
/// numerically on the actual depth-0/1 chains with the same clock N.
struct HardcoreRecursionResult {
  double bound = 0.0;
  double exponent = 0.0;  // 1 + log_Delta(1 + g_Delta(lambda))
  double alpha_hat = 0.0;
  double g = 0.0;
  struct Level {
    int depth = 0;
    double value = 0.0;
    bool base = false;
    std::string binding;  // which recurrence term was smallest
  };
  std::vector<Level> levels;
};

HardcoreRecursionResult hardcore_recursion(int Delta, int d, double fugacity,
                                           double N);

}  // namespace decomp_mc
