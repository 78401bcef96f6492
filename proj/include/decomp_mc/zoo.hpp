#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decomp_mc/chain.hpp"
#include "decomp_mc/decomp.hpp"

namespace decomp_mc {

struct ZooMetadata {
  std::string name;
  std::map<std::string, double> params;
  // matroid instances carry rank r and ground-set size m for the
  // bases-exchange clock 1/(rm)
  int rank = 0;
  int ground = 0;
};

struct ZooInstance {
  ReversibleChain chain;
  Partition canonical_partition;
  ZooMetadata metadata;
};

/// n-cycle walk: step probability `step` in each direction, loop by
/// complementation, uniform stationary distribution.
ReversibleChain cycle_chain(int n, double step);

/// Two-state chain with cross probabilities q01 and q10.
ReversibleChain two_state_chain(double q01, double q10);

/// Chain with P(i,j) = pi(j) for all i (resampling from pi each step).
ReversibleChain dsc_chain(const Distribution& pi);

/// Two n-cycles joined by one bridge edge of probability p (0 < p <= 1/3),
/// within-cycle steps 1/3; canonical partition = the two cycles.
ZooInstance pince_nez(int n, double p);

/// Product chain: one coordinate moves per step, combined loop
/// P_X(x,x) + P_Y(y,y) - 1 (must be nonnegative, else negative_loop).
/// States are ordered X-major; canonical partition indexed by X.
ZooInstance product_chain(const ReversibleChain& X, const ReversibleChain& Y);

/// Single-site heat-bath chain for the ferromagnetic Ising model on a path
/// of `sites` vertices with virtual boundary spins fixed to +1; site update
/// probability 1/clock.  State bit i set means spin +1 at vertex i.
ReversibleChain ising_segment(int sites, double beta, int spin_left,
                              int spin_right, int clock);

/// Ising path heat-bath chain (clock = n) with the canonical midpoint-spin
/// partition (block 0: spin +1 at floor(n/2)).
ZooInstance ising_path(int n, double beta);

/// Hamiltonian of a path configuration including both boundary edges.
double ising_energy(std::uint64_t config, int sites, int spin_left, int spin_right);

/// Walk on the n-dimensional Boolean cube: every coordinate flip and the
/// loop have probability 1/(n+1); canonical partition on the last coordinate.
ZooInstance boolean_cube(int n);

/// Bases-exchange walk on the spanning trees of the given graph; canonical
/// partition distinguishes trees avoiding/containing edge
/// edges[distinguished] (block 0 avoids it).  States are enumerated trees.
ZooInstance graphic_matroid_walk(const std::vector<std::pair<int, int>>& edges,
                                 int distinguished, int max_bases = 400);

/// Enumerated spanning trees as sorted edge-index sets (desk scale).
std::vector<std::vector<int>> spanning_trees(
    const std::vector<std::pair<int, int>>& edges, int max_bases = 400);

/// Cross-block weights with uniform row sums pi(Omega_1) and column sums
/// pi(Omega_0), supported on existing transitions.
struct FractionalMatching {
  Matrix w;  // |Omega_0| x |Omega_1|
  std::vector<Index> omega0, omega1;
};

/// Solves the transportation feasibility problem by max-flow with a
/// deterministic lexicographic augmenting order.  Requires a two-block
/// partition; throws no_fractional_matching when infeasible.
FractionalMatching fractional_matching(const ReversibleChain& chain,
                                       const Partition& part);
FractionalMatching fractional_matching(const ZooInstance& instance);

/// Replaces the cross-block transitions of a matroid walk by
/// w(x,y)/(rm) (boosted = false) or w(x,y)/(rm min{pi(O0), pi(O1)})
/// (boosted = true); within-block transitions unchanged, loops recomputed.
ReversibleChain thin_matroid_chain(const ZooInstance& instance,
                                   const FractionalMatching& w, bool boosted);

/// Glauber dynamics on the independent sets of the depth-d branching-Delta
/// tree with fugacity and clock parameter N >= |T_d|.  Canonical partition:
/// root occupied / root free but addable / root blocked (two blocks if d=0).
ZooInstance hardcore_tree(int Delta, int d, double fugacity, double N);

/// Vertex count of the depth-d tree with branching factor Delta.
int tree_size(int Delta, int d);

/// Three-state comparison chain with the v-site move probabilities on the
/// 1-2 edge and ratio-capped probabilities on the 2-3 edge; requires
/// pi_bar(1) = fugacity * pi_bar(2) (stationarity) and nonnegative loops.
ReversibleChain hardcore_aux_chain(const Distribution& pi_bar, double fugacity);

/// Best Dirichlet/entropy ratio of the comparison device above, defined even
/// when its loop masses would be negative (the rate matrix is halved and the
/// ratio doubled; loops never enter either functional).
double hardcore_aux_alpha(const Distribution& pi_bar, double fugacity,
                          int starts = 32, std::uint64_t seed = 0);

}  // namespace decomp_mc
