#include "decomp_mc/decomp.hpp"

#include <algorithm>
#include <cmath>

namespace decomp_mc {

namespace {

void check_match(const ReversibleChain& chain, const Partition& part) {
  if (part.size() != chain.size()) {
    fail(Errc::invalid_partition,
         "partition length does not match chain state count");
  }
}

// pibar(i) and the block lists
struct Aggregates {
  std::vector<std::vector<Index>> blocks;
  Vector pibar;
};

Aggregates aggregates(const ReversibleChain& chain, const Partition& part) {
  Aggregates a;
  a.blocks = blocks_of(part);
  a.pibar = Vector::Zero(part.m);
  for (Index x = 0; x < chain.size(); ++x) {
    a.pibar(part.block_of[static_cast<size_t>(x)]) += chain.pi(x);
  }
  return a;
}

Matrix projection_matrix(const ReversibleChain& chain, const Partition& part,
                         const Aggregates& a) {
  Matrix Pbar = Matrix::Zero(part.m, part.m);
  for (Index x = 0; x < chain.size(); ++x) {
    int i = part.block_of[static_cast<size_t>(x)];
    for (Index y = 0; y < chain.size(); ++y) {
      Pbar(i, part.block_of[static_cast<size_t>(y)]) += chain.pi(x) * chain.P(x, y);
    }
  }
  for (int i = 0; i < part.m; ++i) Pbar.row(i) /= a.pibar(i);
  return Pbar;
}

bool subgraph_irreducible(const Matrix& P, const std::vector<Index>& block) {
  const Index k = static_cast<Index>(block.size());
  if (k <= 1) return true;
  auto reach = [&](bool forward) {
    std::vector<char> seen(block.size(), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    Index count = 1;
    while (!stack.empty()) {
      Index u = stack.back();
      stack.pop_back();
      for (Index v = 0; v < k; ++v) {
        if (seen[static_cast<size_t>(v)] || v == u) continue;
        double w = forward ? P(block[static_cast<size_t>(u)], block[static_cast<size_t>(v)])
                           : P(block[static_cast<size_t>(v)], block[static_cast<size_t>(u)]);
        if (w > 0.0) {
          seen[static_cast<size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == k;
  };
  return reach(true) && reach(false);
}

double block_escape(const ReversibleChain& chain, const Partition& part, Index x) {
  int i = part.block_of[static_cast<size_t>(x)];
  double s = 0.0;
  for (Index y = 0; y < chain.size(); ++y) {
    if (part.block_of[static_cast<size_t>(y)] != i) s += chain.P(x, y);
  }
  return s;
}

double escape_to(const ReversibleChain& chain, const Partition& part, Index x, int j) {
  double s = 0.0;
  for (Index y = 0; y < chain.size(); ++y) {
    if (part.block_of[static_cast<size_t>(y)] == j) s += chain.P(x, y);
  }
  return s;
}

}  // namespace

Partition make_partition(std::vector<int> block_of) {
  if (block_of.empty()) fail(Errc::invalid_partition, "empty partition");
  int m = 0;
  for (int b : block_of) {
    if (b < 0) fail(Errc::invalid_partition, "negative block index");
    m = std::max(m, b + 1);
  }
  std::vector<Index> sizes(static_cast<size_t>(m), 0);
  for (int b : block_of) ++sizes[static_cast<size_t>(b)];
  for (int i = 0; i < m; ++i) {
    if (sizes[static_cast<size_t>(i)] == 0) {
      fail(Errc::invalid_partition, "block " + std::to_string(i) + " is empty");
    }
  }
  if (m < 2) fail(Errc::invalid_partition, "a partition needs at least two blocks");
  return Partition{std::move(block_of), m};
}

std::vector<std::vector<Index>> blocks_of(const Partition& part) {
  std::vector<std::vector<Index>> blocks(static_cast<size_t>(part.m));
  for (Index x = 0; x < part.size(); ++x) {
    blocks[static_cast<size_t>(part.block_of[static_cast<size_t>(x)])].push_back(x);
  }
  return blocks;
}

void validate_partition(const ReversibleChain& chain, const Partition& part) {
  check_match(chain, part);
  Aggregates a = aggregates(chain, part);
  bool has_singleton = false;
  for (const auto& blk : a.blocks) has_singleton |= blk.size() == 1;
  if (has_singleton && part.m <= 2) {
    fail(Errc::invalid_partition,
         "singleton blocks are allowed only in partitions with more than two blocks");
  }
  Matrix Pbar = projection_matrix(chain, part, a);
  if (!is_irreducible(Pbar)) {
    fail(Errc::projection_not_irreducible, "projection chain is not irreducible");
  }
  for (int i = 0; i < part.m; ++i) {
    const auto& blk = a.blocks[static_cast<size_t>(i)];
    if (blk.size() > 1 && !subgraph_irreducible(chain.P, blk)) {
      fail(Errc::restriction_not_irreducible,
           "restriction chain on block " + std::to_string(i) + " is not irreducible");
    }
  }
}

ReversibleChain project(const ReversibleChain& chain, const Partition& part) {
  validate_partition(chain, part);
  Aggregates a = aggregates(chain, part);
  Matrix Pbar = projection_matrix(chain, part, a);
  Vector pibar = a.pibar / a.pibar.sum();
  return build_chain(std::move(Pbar), pibar);
}

ReversibleChain restrict_block(const ReversibleChain& chain,
                               const Partition& part, int i) {
  check_match(chain, part);
  if (i < 0 || i >= part.m) fail(Errc::bad_input, "block index out of range");
  Aggregates a = aggregates(chain, part);
  const auto& blk = a.blocks[static_cast<size_t>(i)];
  const Index k = static_cast<Index>(blk.size());
  if (k == 1) {
    fail(Errc::restriction_not_irreducible,
         "singleton restriction has no Poincare content");
  }
  Matrix Pi(k, k);
  for (Index u = 0; u < k; ++u) {
    double off = 0.0;
    for (Index v = 0; v < k; ++v) {
      if (u == v) continue;
      Pi(u, v) = chain.P(blk[static_cast<size_t>(u)], blk[static_cast<size_t>(v)]);
      off += Pi(u, v);
    }
    Pi(u, u) = 1.0 - off;  // escape mass folded into the loop
  }
  Vector pii(k);
  for (Index u = 0; u < k; ++u) pii(u) = chain.pi(blk[static_cast<size_t>(u)]);
  pii /= pii.sum();
  if (!is_irreducible(Pi)) {
    fail(Errc::restriction_not_irreducible,
         "restriction chain on block " + std::to_string(i) + " is not irreducible");
  }
  std::vector<std::string> labels;
  if (!chain.labels.empty()) {
    for (Index u = 0; u < k; ++u) {
      labels.push_back(chain.labels[static_cast<size_t>(blk[static_cast<size_t>(u)])]);
    }
  }
  return build_chain(std::move(Pi), pii, std::move(labels));
}

double escape_probability(const ReversibleChain& chain, const Partition& part) {
  check_match(chain, part);
  double g = 0.0;
  for (Index x = 0; x < chain.size(); ++x) {
    g = std::max(g, block_escape(chain, part, x));
  }
  return g;
}

Distribution hat_distribution(const ReversibleChain& chain,
                              const Partition& part, int i, int j) {
  check_match(chain, part);
  if (i < 0 || i >= part.m || j < 0 || j >= part.m || i == j) {
    fail(Errc::bad_input, "hat distribution needs distinct blocks i != j");
  }
  Aggregates a = aggregates(chain, part);
  const auto& blk = a.blocks[static_cast<size_t>(i)];
  Vector hat(static_cast<Index>(blk.size()));
  double total = 0.0;
  for (size_t u = 0; u < blk.size(); ++u) {
    hat(static_cast<Index>(u)) = chain.pi(blk[u]) * escape_to(chain, part, blk[u], j);
    total += hat(static_cast<Index>(u));
  }
  if (total <= 0.0) {
    fail(Errc::undefined_hat, "hat distribution undefined: Pbar(i,j) = 0");
  }
  return Distribution(hat / total);
}

double eta(const ReversibleChain& chain, const Partition& part) {
  check_match(chain, part);
  for (Index x = 0; x < chain.size(); ++x) {
    if (chain.pi(x) < 1e-300) {
      fail(Errc::eta_underflow,
           "stationary weight underflow: eta ratio comparison would be garbage");
    }
  }
  Aggregates a = aggregates(chain, part);
  double worst = 0.0;
  for (int i = 0; i < part.m; ++i) {
    const auto& blk = a.blocks[static_cast<size_t>(i)];
    for (int j = 0; j < part.m; ++j) {
      if (j == i) continue;
      // Pbar(i,j) = pibar(i)^{-1} sum_x pi(x) P(x, Omega_j)
      double pbar_ij = 0.0;
      for (Index x : blk) pbar_ij += chain.pi(x) * escape_to(chain, part, x, j);
      pbar_ij /= a.pibar(i);
      if (pbar_ij <= 0.0) continue;
      // hat pi / pi_i = P(x, Omega_j) / Pbar(i,j)
      for (Index x : blk) {
        double ratio = escape_to(chain, part, x, j) / pbar_ij;
        worst = std::max(worst, std::abs(ratio - 1.0));
      }
    }
  }
  return worst;
}

double gamma_hat(const ReversibleChain& chain, const Partition& part) {
  check_match(chain, part);
  Aggregates a = aggregates(chain, part);
  double max_row = 0.0;
  for (int i = 0; i < part.m; ++i) {
    double escape_mass = 0.0;
    for (Index x : a.blocks[static_cast<size_t>(i)]) {
      escape_mass += chain.pi(x) * block_escape(chain, part, x);
    }
    max_row = std::max(max_row, escape_mass / a.pibar(i));
  }
  return 2.0 * eta(chain, part) * max_row;
}

Matrix cross_terms(const ReversibleChain& chain, const Partition& part,
                   const Vector& f) {
  check_match(chain, part);
  if (f.size() != chain.size()) fail(Errc::length_mismatch, "cross_terms length mismatch");
  Matrix C = Matrix::Zero(part.m, part.m);
  for (Index x = 0; x < chain.size(); ++x) {
    int i = part.block_of[static_cast<size_t>(x)];
    for (Index y = 0; y < chain.size(); ++y) {
      int j = part.block_of[static_cast<size_t>(y)];
      if (i == j) continue;
      double w = chain.pi(x) * chain.P(x, y);
      if (w == 0.0) continue;
      double d = f(x) - f(y);
      C(i, j) += w * d * d;
    }
  }
  return C;
}

double check_variance_decomposition(const ReversibleChain& chain,
                                    const Partition& part, const Vector& f) {
  check_match(chain, part);
  if (f.size() != chain.size()) fail(Errc::length_mismatch, "length mismatch");
  Aggregates a = aggregates(chain, part);
  double mu = chain.pi.dot(f);
  double lhs = 0.0;
  for (Index x = 0; x < chain.size(); ++x) {
    double d = f(x) - mu;
    lhs += chain.pi(x) * d * d;
  }
  double rhs = 0.0;
  for (int i = 0; i < part.m; ++i) {
    const auto& blk = a.blocks[static_cast<size_t>(i)];
    double mui = 0.0;
    for (Index x : blk) mui += chain.pi(x) * f(x);
    mui /= a.pibar(i);
    double vari = 0.0;
    for (Index x : blk) {
      double d = f(x) - mui;
      vari += chain.pi(x) / a.pibar(i) * d * d;
    }
    double db = mui - mu;
    rhs += a.pibar(i) * vari + a.pibar(i) * db * db;
  }
  return std::abs(lhs - rhs);
}

double check_dirichlet_decomposition(const ReversibleChain& chain,
                                     const Partition& part, const Vector& f) {
  check_match(chain, part);
  if (f.size() != chain.size()) fail(Errc::length_mismatch, "length mismatch");
  double lhs = dirichlet_form(chain, f);
  // pibar(i) E_{pi_i}(f,f) equals the within-block half-sum directly
  double within = 0.0;
  for (Index x = 0; x < chain.size(); ++x) {
    int i = part.block_of[static_cast<size_t>(x)];
    for (Index y = 0; y < chain.size(); ++y) {
      if (y == x || part.block_of[static_cast<size_t>(y)] != i) continue;
      double w = chain.pi(x) * chain.P(x, y);
      if (w == 0.0) continue;
      double d = f(x) - f(y);
      within += 0.5 * w * d * d;
    }
  }
  Matrix C = cross_terms(chain, part, f);
  double cross = 0.5 * C.sum();
  return std::abs(lhs - (within + cross));
}

double check_entropy_decomposition(const ReversibleChain& chain,
                                   const Partition& part, const Vector& f) {
  check_match(chain, part);
  if (f.size() != chain.size()) fail(Errc::length_mismatch, "length mismatch");
  Aggregates a = aggregates(chain, part);
  double s = 0.0;
  for (Index x = 0; x < chain.size(); ++x) s += chain.pi(x) * f(x) * f(x);
  if (s <= 0.0) return 0.0;  // f identically zero: both sides vanish
  double lhs = lsob_entropy(chain.stationary(), f);
  double rhs = 0.0;
  for (int i = 0; i < part.m; ++i) {
    const auto& blk = a.blocks[static_cast<size_t>(i)];
    const Index k = static_cast<Index>(blk.size());
    Vector pii(k), fi(k);
    double si = 0.0;
    for (Index u = 0; u < k; ++u) {
      pii(u) = chain.pi(blk[static_cast<size_t>(u)]) / a.pibar(i);
      fi(u) = f(blk[static_cast<size_t>(u)]);
      si += pii(u) * fi(u) * fi(u);
    }
    if (si > 0.0) {
      rhs += a.pibar(i) * lsob_entropy(Distribution(pii / pii.sum()), fi);
      rhs += a.pibar(i) * si * (std::log(si) - std::log(s));
    }
    // si == 0: both the block entropy and the cross term vanish (0 ln 0 = 0)
  }
  return std::abs(lhs - rhs);
}

DecompositionReport build_decomposition(const ReversibleChain& chain,
                                        const Partition& part) {
  validate_partition(chain, part);
  DecompositionReport rep;
  rep.projection = project(chain, part);
  Aggregates a = aggregates(chain, part);
  for (int i = 0; i < part.m; ++i) {
    if (a.blocks[static_cast<size_t>(i)].size() == 1) {
      rep.restrictions.push_back(build_chain(Matrix::Ones(1, 1)));
    } else {
      rep.restrictions.push_back(restrict_block(chain, part, i));
    }
  }
  rep.gamma = escape_probability(chain, part);
  rep.eta = eta(chain, part);
  rep.gamma_hat = gamma_hat(chain, part);
  return rep;
}

}  // namespace decomp_mc
