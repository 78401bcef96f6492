#pragma once

#include <random>

#include "decomp_mc/chain.hpp"
#include "decomp_mc/decomp.hpp"

namespace decomp_mc {

/// Random walk on a complete weighted graph with uniform(0,1) edge weights
/// and a diagonal weight: reversible by construction, stationary mass
/// proportional to row sums.  loop_floor > 0 mixes in laziness so every loop
/// probability is at least that value.
ReversibleChain random_reversible_chain(int n, std::mt19937_64& rng,
                                        double loop_floor = 0.0);

/// Random partition into 2..max_blocks blocks, resampled until it validates
/// against the chain (complete-graph chains always validate quickly).
Partition random_partition(const ReversibleChain& chain, int max_blocks,
                           std::mt19937_64& rng);

Vector random_test_function(Index n, std::mt19937_64& rng);

}  // namespace decomp_mc
