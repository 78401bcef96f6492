#pragma once

#include <vector>

#include "decomp_mc/chain.hpp"

namespace decomp_mc {

/// Assignment of each state to one of m blocks.  Valid against a chain when
/// every block is nonempty, m >= 2, the projection chain and all restriction
/// chains are irreducible, and singleton blocks occur only when m > 2 (a
/// singleton restriction carries no Poincare content and is treated as
/// lambda_i = alpha_i = +inf by consumers).
struct Partition {
  std::vector<int> block_of;
  int m = 0;

  Index size() const { return static_cast<Index>(block_of.size()); }
};

/// Builds a partition from block indices; checks contiguous nonempty blocks
/// and m >= 2.  Chain-dependent validity is checked by validate_partition.
Partition make_partition(std::vector<int> block_of);

std::vector<std::vector<Index>> blocks_of(const Partition& part);

void validate_partition(const ReversibleChain& chain, const Partition& part);

/// Projection chain on [m]: pibar(i) = sum_{x in block i} pi(x),
/// Pbar(i,j) = pibar(i)^{-1} sum_{x in i, y in j} pi(x) P(x,y).
ReversibleChain project(const ReversibleChain& chain, const Partition& part);

/// Restriction chain on block i: off-diagonal entries copied from P, escape
/// mass folded into the loop, stationary distribution pi_i = pi/pibar(i).
/// Rejects singleton blocks.
ReversibleChain restrict_block(const ReversibleChain& chain,
                               const Partition& part, int i);

/// gamma: worst-case one-step probability of leaving the current block.
double escape_probability(const ReversibleChain& chain, const Partition& part);

/// hat pi_i^j(x) = pi_i(x) P(x, Omega_j) / Pbar(i,j); requires Pbar(i,j) > 0.
Distribution hat_distribution(const ReversibleChain& chain,
                              const Partition& part, int i, int j);

/// Smallest eta >= 0 with (1-eta) pi_i <= hat pi_i^j <= (1+eta) pi_i
/// pointwise over all ordered pairs (i,j) with Pbar(i,j) > 0.
double eta(const ReversibleChain& chain, const Partition& part);

/// gamma_hat = 2 eta max_i sum_{j != i} Pbar(i,j).
double gamma_hat(const ReversibleChain& chain, const Partition& part);

/// C_ij = sum_{x in i, y in j} pi(x) P(x,y) (f(x)-f(y))^2 for i != j;
/// diagonal entries are zero.  Symmetric by detailed balance.
Matrix cross_terms(const ReversibleChain& chain, const Partition& part,
                   const Vector& f);

/// Residuals |LHS - RHS| of the three decomposition identities
/// (variance, Dirichlet form, entropy).
double check_variance_decomposition(const ReversibleChain& chain,
                                    const Partition& part, const Vector& f);
double check_dirichlet_decomposition(const ReversibleChain& chain,
                                     const Partition& part, const Vector& f);
double check_entropy_decomposition(const ReversibleChain& chain,
                                   const Partition& part, const Vector& f);

struct DecompositionReport {
  ReversibleChain projection;
  std::vector<ReversibleChain> restrictions;  // singleton blocks stored as 1-state chains
  double gamma = 0.0;
  double eta = 0.0;
  double gamma_hat = 0.0;
};

DecompositionReport build_decomposition(const ReversibleChain& chain,
                                        const Partition& part);

}  // namespace decomp_mc
