#pragma once

#include <cstdint>
#include "decomp_mc/chain.hpp"

namespace decomp_mc {

/// Optimal Poincare constant with an eigenvector witness.  gap = 1 - mu2
/// where mu2 is the second-largest eigenvalue of the symmetrized kernel
/// S(x,y) = sqrt(pi(x)/pi(y)) P(x,y); the witness attains the gap as a
/// Rayleigh quotient dirichlet_form(f)/variance(f).
struct SpectralCertificate {
  double gap = 0.0;
  double second_eigenvalue = 0.0;
  Vector witness;
};

SpectralCertificate spectral_gap(const ReversibleChain& chain);

/// Numerical upper estimate of the log-Sobolev constant: the smallest ratio
/// dirichlet_form(f)/lsob_entropy(f) found by projected-gradient descent from
/// deterministic seeds (spectral witness, near-constant perturbations of it,
/// +-state indicators) plus `starts` random initializations.  Deterministic
/// given seed.  half_gap = gap/2 is the analytic upper bound alpha <= lambda/2.
struct LsobCertificate {
  double alpha_estimate = 0.0;
  double half_gap = 0.0;
  Vector witness;
};

LsobCertificate log_sobolev_constant(const ReversibleChain& chain,
                                     int starts = 32, std::uint64_t seed = 0);

/// Best Dirichlet/entropy ratio for a chain given by (pi, P) without
/// requiring P to be stochastic beyond symmetry of pi(x)P(x,y): used for the
/// formal comparison devices whose row sums may exceed 1.
double lsob_ratio_minimum(const Vector& pi, const Matrix& P, int starts,
                          std::uint64_t seed);

/// (1/gap)(ln(1/pi_x) + ln(1/eps)): the Poincare mixing-time expression with
/// the big-O constant fixed to 1.  An order-of-magnitude estimate, not a
/// certified bound; emitters flag it as such.
double mixing_time_poincare(double gap, double pi_x, double eps);
double mixing_time_poincare(const ReversibleChain& chain, Index x, double eps);

/// (1/alpha)(ln ln(1/pi_x) + ln(1/eps)) with constant 1.  Requires
/// pi_x <= 1/e; throws state_too_heavy otherwise.
double mixing_time_lsob(double alpha, double pi_x, double eps);
double mixing_time_lsob(const ReversibleChain& chain, Index x, double eps,
                        int starts = 32, std::uint64_t seed = 0);

/// Half the l1 distance.
double tv_distance(const Vector& a, const Vector& b);

/// Smallest t <= t_max with ||P^t(x,.) - pi||_TV <= eps, by iterated
/// row-vector products.  Throws not_mixed_within if no such t.
int tv_mixing_time_exact(const ReversibleChain& chain, Index x, double eps,
                         int t_max);

}  // namespace decomp_mc
