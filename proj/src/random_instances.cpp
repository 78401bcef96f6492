#include "decomp_mc/random_instances.hpp"

namespace decomp_mc {

ReversibleChain random_reversible_chain(int n, std::mt19937_64& rng,
                                        double loop_floor) {
  if (n < 2) fail(Errc::bad_input, "need at least 2 states");
  if (loop_floor < 0.0 || loop_floor >= 1.0) {
    fail(Errc::bad_input, "loop_floor must lie in [0, 1)");
  }
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Matrix W(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      double w = unif(rng);
      W(x, y) = w;
      W(y, x) = w;
    }
  }
  Vector deg = W.rowwise().sum();
  Matrix P(n, n);
  for (int x = 0; x < n; ++x) P.row(x) = W.row(x) / deg(x);
  if (loop_floor > 0.0) {
    P = loop_floor * Matrix::Identity(n, n) + (1.0 - loop_floor) * P;
  }
  Vector pi = deg / deg.sum();
  return build_chain(std::move(P), pi);
}

Partition random_partition(const ReversibleChain& chain, int max_blocks,
                           std::mt19937_64& rng) {
  if (max_blocks < 2) fail(Errc::bad_input, "need at least 2 blocks");
  const Index n = chain.size();
  std::uniform_int_distribution<int> nblocks(2, max_blocks);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    int m = nblocks(rng);
    if (m > n) continue;
    std::uniform_int_distribution<int> pick(0, m - 1);
    std::vector<int> block(static_cast<size_t>(n));
    for (Index x = 0; x < n; ++x) block[static_cast<size_t>(x)] = pick(rng);
    try {
      Partition part = make_partition(std::move(block));
      validate_partition(chain, part);
      return part;
    } catch (const Error&) {
      continue;
    }
  }
  fail(Errc::invalid_partition, "could not sample a valid partition");
}

Vector random_test_function(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector f(n);
  for (Index i = 0; i < n; ++i) f(i) = gauss(rng);
  return f;
}

}  // namespace decomp_mc
