#include "decomp_mc/bounds.hpp"

#include <cmath>
#include <limits>

#include "decomp_mc/spectral.hpp"
#include "decomp_mc/zoo.hpp"

namespace decomp_mc {

namespace {

constexpr const char* kDenominatorNote =
    "decomposition term evaluated as bar*min/(3*gamma + bar)";
constexpr const char* kK3ParseNote =
    "denominator parsed as ln((1 - pi_min)/pi_min)";

BoundResult decomposition_bound(Rule rule, double bar, double min_c, double gamma) {
  if (!(bar > 0.0)) fail(Errc::bad_input, "bar constant must be positive");
  if (!(min_c > 0.0)) fail(Errc::bad_input, "min constant must be positive");
  if (!(gamma >= 0.0)) fail(Errc::bad_input, "gamma must be >= 0");
  BoundResult res;
  res.rule = rule;
  res.bar_constant = bar;
  res.min_constant = min_c;
  res.gamma_or_gamma_hat = gamma;
  if (rule == Rule::cor3 || rule == Rule::cor6) {
    if (gamma != 0.0) {
      fail(Errc::cor3_nonzero_gamma,
           std::string(rule_name(rule)) + " requires gamma_hat = 0");
    }
    res.value = std::min(bar, min_c);
  } else {
    res.value = std::min(bar / 3.0, bar * min_c / (3.0 * gamma + bar));
    res.parse_notes = kDenominatorNote;
  }
  return res;
}

}  // namespace

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::thm1: return "thm1";
    case Rule::cor2: return "cor2";
    case Rule::cor3: return "cor3";
    case Rule::thm4: return "thm4";
    case Rule::cor5: return "cor5";
    case Rule::cor6: return "cor6";
  }
  return "?";
}

Rule rule_from_name(const std::string& name) {
  if (name == "thm1") return Rule::thm1;
  if (name == "cor2") return Rule::cor2;
  if (name == "cor3") return Rule::cor3;
  if (name == "thm4") return Rule::thm4;
  if (name == "cor5") return Rule::cor5;
  if (name == "cor6") return Rule::cor6;
  fail(Errc::bad_input, "unknown rule '" + name + "'");
}

BoundResult poincare_bound(Rule rule, double bar_lambda, double lambda_min,
                           double gamma) {
  if (rule != Rule::thm1 && rule != Rule::cor2 && rule != Rule::cor3) {
    fail(Errc::bad_input, "poincare_bound accepts rules thm1, cor2, cor3");
  }
  return decomposition_bound(rule, bar_lambda, lambda_min, gamma);
}

BoundResult lsob_bound(Rule rule, double bar_alpha, double alpha_min,
                       double gamma) {
  if (rule != Rule::thm4 && rule != Rule::cor5 && rule != Rule::cor6) {
    fail(Errc::bad_input, "lsob_bound accepts rules thm4, cor5, cor6");
  }
  return decomposition_bound(rule, bar_alpha, alpha_min, gamma);
}

IsingRecursionResult ising_recursion(double beta, int n, int depth_cap) {
  if (n < 2) fail(Errc::bad_input, "ising recursion needs n >= 2");
  if (beta < 0.0) fail(Errc::bad_input, "beta must be >= 0");
  IsingRecursionResult res;
  double cosh2 = std::cosh(beta) * std::cosh(beta);
  res.projection_cap = 1.0 / (3.0 * cosh2 * n);
  res.contraction = 1.0 + 0.75 * (std::exp(2.0 * beta) + 1.0);
  res.exponent = 1.0 + std::log2(res.contraction);

  std::vector<int> sizes;  // n, n/2, ..., down to the exact base
  int k = n;
  while (k > 3) {
    sizes.push_back(k);
    k /= 2;
    if (static_cast<int>(sizes.size()) > depth_cap) {
      fail(Errc::bad_input, "recursion depth exceeds depth_cap");
    }
  }
  // exact base: gap of the k-site chain, rescaled from the k-clock to the
  // n-clock (each site fires at probability 1/n)
  double base = double(k) / double(n) * spectral_gap(ising_segment(k, beta, +1, +1, k)).gap;
  res.levels.push_back({k, base, true, false});
  double lambda = base;
  for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
    double contracted = lambda / res.contraction;
    bool capped = res.projection_cap <= contracted;
    lambda = std::min(res.projection_cap, contracted);
    res.levels.push_back({*it, lambda, false, capped});
  }
  res.bound = lambda;
  return res;
}

double g_delta(int Delta, double fugacity) {
  if (Delta < 1) fail(Errc::bad_input, "Delta must be >= 1");
  if (!(fugacity > 0.0)) fail(Errc::bad_input, "fugacity must be positive");
  double lam = fugacity;
  double cap = std::min({1.0 / lam, std::pow(1.0 + lam, Delta) - 1.0, 1.0});
  double log_term =
      (Delta + 2) * std::log1p(lam) - std::log(std::min(1.0, lam));
  return 6.0 * cap * (1.0 + lam) * (1.0 + lam) * log_term;
}

AlphaK3Bound alpha_k3_from_min(double pi_min) {
  if (!(pi_min > 0.0 && pi_min <= 0.5)) {
    fail(Errc::bad_input, "pi_min must lie in (0, 1/2]");
  }
  AlphaK3Bound res;
  res.weaker = 1.0 / (3.0 * std::log(1.0 / pi_min));
  if (std::abs(pi_min - 0.5) < 1e-12) {
    res.value = 0.5;  // limit of (1-2p)/ln((1-p)/p) as p -> 1/2
    res.degenerate_half = true;
    return res;
  }
  res.value = (1.0 - 2.0 * pi_min) / std::log((1.0 - pi_min) / pi_min);
  return res;
}

AlphaK3Bound alpha_k3_bound(const Distribution& pi_bar) {
  if (pi_bar.size() != 3) fail(Errc::bad_input, "need a 3-point distribution");
  double pi_min = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < 3; ++i) {
    if (!(pi_bar[i] > 0.0)) fail(Errc::bad_input, "weights must be positive");
    pi_min = std::min(pi_min, pi_bar[i]);
  }
  return alpha_k3_from_min(pi_min);
}

double claim7_bound(double alpha_k3, double fugacity) {
  if (!(alpha_k3 > 0.0)) fail(Errc::bad_input, "alpha_k3 must be positive");
  if (!(fugacity >= 0.0)) fail(Errc::bad_input, "fugacity must be >= 0");
  return alpha_k3 / (2.0 * (1.0 + fugacity));
}

HardcoreRecursionResult hardcore_recursion(int Delta, int d, double fugacity,
                                           double N) {
  if (Delta < 2) fail(Errc::bad_input, "hardcore recursion needs branching factor >= 2");
  if (d < 0) fail(Errc::bad_input, "depth must be >= 0");
  const int n = tree_size(Delta, d);
  if (N < n) fail(Errc::bad_input, "N must be >= |T_d|");
  const double lam = fugacity;

  HardcoreRecursionResult res;
  res.g = g_delta(Delta, lam);
  res.exponent = 1.0 + std::log(1.0 + res.g) / std::log(double(Delta));
  // worst-case block masses: 1/pi_min <= (1+lam)^{Delta+2}/min{1, lam}
  double pi_min_wc = std::min(1.0, lam) / std::pow(1.0 + lam, Delta + 2);
  res.alpha_hat = claim7_bound(alpha_k3_from_min(pi_min_wc).value, lam);
  double ratio_cap = std::min({1.0 / lam, std::pow(1.0 + lam, Delta) - 1.0, 1.0});
  double G = ratio_cap * (1.0 + lam) / res.alpha_hat;

  auto base_alpha = [&](int depth) {
    ZooInstance inst = hardcore_tree(Delta, depth, lam, N);
    return log_sobolev_constant(inst.chain, 32, 0).alpha_estimate;
  };
  double a_prev2 = base_alpha(0);
  res.levels.push_back({0, a_prev2, true, "exact"});
  if (d == 0) {
    res.bound = a_prev2;
    return res;
  }
  double a_prev1 = base_alpha(1);
  res.levels.push_back({1, a_prev1, true, "exact"});
  double a = a_prev1;
  for (int k = 2; k <= d; ++k) {
    double t1 = a_prev2;
    double t2 = a_prev1 / (1.0 + G);
    double t3 = res.alpha_hat / N;
    a = std::min({t1, t2, t3});
    std::string binding = a == t1 ? "alpha_{d-2}" : (a == t2 ? "contracted" : "alpha_hat/N");
    res.levels.push_back({k, a, false, binding});
    a_prev2 = a_prev1;
    a_prev1 = a;
  }
  res.bound = a;
  return res;
}

}  // namespace decomp_mc
