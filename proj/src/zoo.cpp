#include "decomp_mc/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>

#include "decomp_mc/spectral.hpp"

namespace decomp_mc {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<size_t>(ra)] = rb;
    return true;
  }
};

int vertex_count(const std::vector<std::pair<int, int>>& edges) {
  int v = 0;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0) fail(Errc::bad_input, "negative vertex index");
    if (a == b) fail(Errc::bad_input, "self-loop edges are not supported");
    v = std::max({v, a + 1, b + 1});
  }
  return v;
}

bool spans(const std::vector<std::pair<int, int>>& edges,
           const std::vector<int>& subset, int nv) {
  UnionFind uf(nv);
  int merges = 0;
  for (int e : subset) {
    if (uf.unite(edges[static_cast<size_t>(e)].first,
                 edges[static_cast<size_t>(e)].second)) {
      ++merges;
    }
  }
  return merges == nv - 1;
}

}  // namespace

ReversibleChain cycle_chain(int n, double step) {
  if (n < 3) fail(Errc::bad_input, "cycle needs at least 3 states");
  if (!(step > 0.0) || 2.0 * step > 1.0) {
    fail(Errc::bad_input, "cycle step probability must lie in (0, 1/2]");
  }
  Matrix P = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    P(x, (x + 1) % n) = step;
    P(x, (x + n - 1) % n) = step;
    P(x, x) = 1.0 - 2.0 * step;
  }
  return build_chain(std::move(P), Vector::Constant(n, 1.0 / n));
}

ReversibleChain two_state_chain(double q01, double q10) {
  if (!(q01 > 0.0 && q01 <= 1.0 && q10 > 0.0 && q10 <= 1.0)) {
    fail(Errc::bad_input, "cross probabilities must lie in (0, 1]");
  }
  Matrix P(2, 2);
  P << 1.0 - q01, q01, q10, 1.0 - q10;
  Vector pi(2);
  pi << q10 / (q01 + q10), q01 / (q01 + q10);
  return build_chain(std::move(P), pi);
}

ReversibleChain dsc_chain(const Distribution& pi) {
  const Index n = pi.size();
  if (n < 2) fail(Errc::bad_input, "need at least two states");
  Matrix P(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) P(i, j) = pi[j];
  }
  return build_chain(std::move(P), pi.weights());
}

ZooInstance pince_nez(int n, double p) {
  if (n < 3) fail(Errc::bad_input, "pince-nez needs cycles of at least 3 vertices");
  if (!(p > 0.0 && p <= 1.0 / 3.0)) {
    fail(Errc::bad_input, "bridge probability must lie in (0, 1/3]");
  }
  const int N = 2 * n;
  Matrix P = Matrix::Zero(N, N);
  auto idx = [n](int cyc, int v) { return cyc * n + v; };
  for (int cyc = 0; cyc < 2; ++cyc) {
    for (int v = 0; v < n; ++v) {
      P(idx(cyc, v), idx(cyc, (v + 1) % n)) = 1.0 / 3.0;
      P(idx(cyc, v), idx(cyc, (v + n - 1) % n)) = 1.0 / 3.0;
    }
  }
  P(idx(0, 0), idx(1, 0)) = p;
  P(idx(1, 0), idx(0, 0)) = p;
  for (int x = 0; x < N; ++x) {
    double off = P.row(x).sum();
    P(x, x) = 1.0 - off;
  }
  ReversibleChain chain = build_chain(std::move(P), Vector::Constant(N, 1.0 / N));
  std::vector<int> block(static_cast<size_t>(N), 0);
  for (int x = n; x < N; ++x) block[static_cast<size_t>(x)] = 1;
  ZooInstance inst{std::move(chain), make_partition(std::move(block)), {}};
  inst.metadata.name = "pince-nez";
  inst.metadata.params = {{"n", double(n)}, {"p", p}};
  return inst;
}

ZooInstance product_chain(const ReversibleChain& X, const ReversibleChain& Y) {
  const Index nx = X.size(), ny = Y.size();
  if (nx < 2 || ny < 2) fail(Errc::bad_input, "product factors need >= 2 states");
  for (Index x = 0; x < nx; ++x) {
    for (Index y = 0; y < ny; ++y) {
      if (X.P(x, x) + Y.P(y, y) < 1.0 - kIdentityTol) {
        fail(Errc::negative_loop,
             "product loop P_X(x,x) + P_Y(y,y) - 1 is negative");
      }
    }
  }
  const Index N = nx * ny;
  Matrix P = Matrix::Zero(N, N);
  Vector pi(N);
  auto idx = [ny](Index x, Index y) { return x * ny + y; };
  for (Index x = 0; x < nx; ++x) {
    for (Index y = 0; y < ny; ++y) {
      Index s = idx(x, y);
      pi(s) = X.pi(x) * Y.pi(y);
      for (Index x2 = 0; x2 < nx; ++x2) {
        if (x2 != x) P(s, idx(x2, y)) = X.P(x, x2);
      }
      for (Index y2 = 0; y2 < ny; ++y2) {
        if (y2 != y) P(s, idx(x, y2)) = Y.P(y, y2);
      }
      P(s, s) = std::max(0.0, X.P(x, x) + Y.P(y, y) - 1.0);
    }
  }
  pi /= pi.sum();
  ReversibleChain chain = build_chain(std::move(P), pi);
  std::vector<int> block(static_cast<size_t>(N));
  for (Index x = 0; x < nx; ++x) {
    for (Index y = 0; y < ny; ++y) block[static_cast<size_t>(idx(x, y))] = int(x);
  }
  ZooInstance inst{std::move(chain), make_partition(std::move(block)), {}};
  inst.metadata.name = "product";
  inst.metadata.params = {{"nx", double(nx)}, {"ny", double(ny)}};
  return inst;
}

double ising_energy(std::uint64_t config, int sites, int spin_left, int spin_right) {
  auto spin = [config](int i) { return (config >> i) & 1u ? 1 : -1; };
  double h = 0.0;
  for (int i = 0; i + 1 < sites; ++i) {
    h += (1 - spin(i) * spin(i + 1)) / 2.0;
  }
  h += (1 - spin_left * spin(0)) / 2.0;
  h += (1 - spin(sites - 1) * spin_right) / 2.0;
  return h;
}

ReversibleChain ising_segment(int sites, double beta, int spin_left,
                              int spin_right, int clock) {
  if (sites < 1 || sites > 20) fail(Errc::bad_input, "ising segment needs 1..20 sites");
  if (beta < 0.0) fail(Errc::bad_input, "inverse temperature must be >= 0");
  if (clock < sites) fail(Errc::bad_input, "clock must be >= number of sites");
  if (std::abs(spin_left) != 1 || std::abs(spin_right) != 1) {
    fail(Errc::bad_input, "boundary spins must be +-1");
  }
  const Index N = Index(1) << sites;
  Matrix P = Matrix::Zero(N, N);
  Vector pi(N);
  double z = 0.0;
  for (Index s = 0; s < N; ++s) {
    pi(s) = std::exp(-beta * ising_energy(std::uint64_t(s), sites, spin_left, spin_right));
    z += pi(s);
  }
  pi /= z;
  for (Index s = 0; s < N; ++s) {
    auto spin_at = [&](int i) {
      if (i < 0) return spin_left;
      if (i >= sites) return spin_right;
      return (s >> i) & 1 ? 1 : -1;
    };
    for (int i = 0; i < sites; ++i) {
      int nbr_sum = spin_at(i - 1) + spin_at(i + 1);
      double p_plus = 1.0 / (1.0 + std::exp(-beta * nbr_sum));
      Index flipped = s ^ (Index(1) << i);
      bool is_plus = (s >> i) & 1;
      // heat-bath update at site i with probability 1/clock
      P(s, flipped) += (is_plus ? 1.0 - p_plus : p_plus) / clock;
    }
    P(s, s) = 1.0 - P.row(s).sum();
  }
  return build_chain(std::move(P), pi);
}

ZooInstance ising_path(int n, double beta) {
  if (n < 2) fail(Errc::bad_input, "ising path needs at least 2 sites");
  ReversibleChain chain = ising_segment(n, beta, +1, +1, n);
  const int mid = n / 2;
  const Index N = chain.size();
  std::vector<int> block(static_cast<size_t>(N));
  for (Index s = 0; s < N; ++s) {
    block[static_cast<size_t>(s)] = (s >> mid) & 1 ? 0 : 1;  // block 0: spin +1 at midpoint
  }
  ZooInstance inst{std::move(chain), make_partition(std::move(block)), {}};
  inst.metadata.name = "ising-path";
  inst.metadata.params = {{"n", double(n)}, {"beta", beta}, {"midpoint", double(mid)}};
  return inst;
}

ZooInstance boolean_cube(int n) {
  if (n < 2 || n > 20) fail(Errc::bad_input, "cube dimension must lie in 2..20");
  const Index N = Index(1) << n;
  Matrix P = Matrix::Zero(N, N);
  const double q = 1.0 / (n + 1);
  for (Index s = 0; s < N; ++s) {
    for (int i = 0; i < n; ++i) P(s, s ^ (Index(1) << i)) = q;
    P(s, s) = q;
  }
  ReversibleChain chain = build_chain(std::move(P), Vector::Constant(N, 1.0 / N));
  std::vector<int> block(static_cast<size_t>(N));
  for (Index s = 0; s < N; ++s) block[static_cast<size_t>(s)] = int((s >> (n - 1)) & 1);
  ZooInstance inst{std::move(chain), make_partition(std::move(block)), {}};
  inst.metadata.name = "cube";
  inst.metadata.params = {{"n", double(n)}};
  return inst;
}

std::vector<std::vector<int>> spanning_trees(
    const std::vector<std::pair<int, int>>& edges, int max_bases) {
  const int nv = vertex_count(edges);
  const int m = static_cast<int>(edges.size());
  const int r = nv - 1;
  if (nv < 2) fail(Errc::bad_input, "graph needs at least two vertices");
  {
    std::vector<int> all(static_cast<size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    if (!spans(edges, all, nv)) fail(Errc::disconnected, "graph is not connected");
  }
  std::vector<std::vector<int>> trees;
  std::vector<int> pick;
  // lexicographic enumeration of r-subsets, pruned by acyclicity
  auto rec = [&](auto&& self, int next, UnionFind uf) -> void {
    if (static_cast<int>(pick.size()) == r) {
      trees.push_back(pick);
      if (static_cast<int>(trees.size()) > max_bases) {
        fail(Errc::too_many_bases,
             "more than " + std::to_string(max_bases) + " spanning trees");
      }
      return;
    }
    int need = r - static_cast<int>(pick.size());
    for (int e = next; e + need <= m; ++e) {
      UnionFind uf2 = uf;
      if (!uf2.unite(edges[static_cast<size_t>(e)].first,
                     edges[static_cast<size_t>(e)].second)) {
        continue;  // would close a cycle
      }
      pick.push_back(e);
      self(self, e + 1, uf2);
      pick.pop_back();
    }
  };
  rec(rec, 0, UnionFind(nv));
  return trees;
}

ZooInstance graphic_matroid_walk(const std::vector<std::pair<int, int>>& edges,
                                 int distinguished, int max_bases) {
  const int nv = vertex_count(edges);
  const int m = static_cast<int>(edges.size());
  const int r = nv - 1;
  if (distinguished < 0 || distinguished >= m) {
    fail(Errc::bad_input, "distinguished edge index out of range");
  }
  std::vector<std::vector<int>> trees = spanning_trees(edges, max_bases);
  const Index B = static_cast<Index>(trees.size());
  std::map<std::uint64_t, Index> index_of;
  auto mask_of = [](const std::vector<int>& t) {
    std::uint64_t mk = 0;
    for (int e : t) mk |= std::uint64_t(1) << e;
    return mk;
  };
  if (m > 63) fail(Errc::bad_input, "ground sets beyond 63 edges are not supported");
  for (Index i = 0; i < B; ++i) index_of[mask_of(trees[static_cast<size_t>(i)])] = i;

  Matrix P = Matrix::Zero(B, B);
  const double step = 1.0 / (double(r) * double(m));
  for (Index i = 0; i < B; ++i) {
    std::uint64_t mk = mask_of(trees[static_cast<size_t>(i)]);
    for (int e = 0; e < m; ++e) {
      if (mk & (std::uint64_t(1) << e)) continue;
      for (int f : trees[static_cast<size_t>(i)]) {
        std::uint64_t nk = (mk | (std::uint64_t(1) << e)) & ~(std::uint64_t(1) << f);
        auto it = index_of.find(nk);
        if (it != index_of.end()) P(i, it->second) += step;
      }
    }
    P(i, i) = 1.0 - P.row(i).sum();
  }
  ReversibleChain chain = build_chain(std::move(P), Vector::Constant(B, 1.0 / double(B)));
  std::vector<int> block(static_cast<size_t>(B));
  for (Index i = 0; i < B; ++i) {
    block[static_cast<size_t>(i)] =
        (mask_of(trees[static_cast<size_t>(i)]) >> distinguished) & 1 ? 1 : 0;
  }
  ZooInstance inst{std::move(chain), make_partition(std::move(block)), {}};
  inst.metadata.name = "matroid";
  inst.metadata.params = {{"bases", double(B)}, {"e", double(distinguished)}};
  inst.metadata.rank = r;
  inst.metadata.ground = m;
  return inst;
}

FractionalMatching fractional_matching(const ReversibleChain& chain,
                                       const Partition& part) {
  if (part.m != 2) fail(Errc::bad_input, "fractional matching needs a 2-block partition");
  if (part.size() != chain.size()) {
    fail(Errc::invalid_partition, "partition length does not match chain");
  }
  auto blocks = blocks_of(part);
  const auto& o0 = blocks[0];
  const auto& o1 = blocks[1];
  double pibar0 = 0.0, pibar1 = 0.0;
  for (Index x : o0) pibar0 += chain.pi(x);
  for (Index y : o1) pibar1 += chain.pi(y);

  // max-flow on source -> Omega_0 -> Omega_1 -> sink with BFS augmenting
  // paths scanned in index order (deterministic output)
  const Index n0 = static_cast<Index>(o0.size());
  const Index n1 = static_cast<Index>(o1.size());
  const Index V = n0 + n1 + 2;
  const Index S = n0 + n1, T = n0 + n1 + 1;
  Matrix cap = Matrix::Zero(V, V);
  for (Index u = 0; u < n0; ++u) cap(S, u) = pibar1;
  for (Index v = 0; v < n1; ++v) cap(n0 + v, T) = pibar0;
  for (Index u = 0; u < n0; ++u) {
    for (Index v = 0; v < n1; ++v) {
      if (chain.P(o0[static_cast<size_t>(u)], o1[static_cast<size_t>(v)]) > 0.0) {
        cap(u, n0 + v) = 1.0;  // effectively unbounded: at most total mass flows
      }
    }
  }
  Matrix flow = Matrix::Zero(V, V);
  const double tol = 1e-14;
  while (true) {
    std::vector<Index> parent(static_cast<size_t>(V), -1);
    parent[static_cast<size_t>(S)] = S;
    std::deque<Index> queue{S};
    while (!queue.empty() && parent[static_cast<size_t>(T)] < 0) {
      Index u = queue.front();
      queue.pop_front();
      for (Index v = 0; v < V; ++v) {
        if (parent[static_cast<size_t>(v)] >= 0) continue;
        if (cap(u, v) - flow(u, v) + flow(v, u) > tol) {
          parent[static_cast<size_t>(v)] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[static_cast<size_t>(T)] < 0) break;
    double push = std::numeric_limits<double>::infinity();
    for (Index v = T; v != S; v = parent[static_cast<size_t>(v)]) {
      Index u = parent[static_cast<size_t>(v)];
      push = std::min(push, cap(u, v) - flow(u, v) + flow(v, u));
    }
    for (Index v = T; v != S; v = parent[static_cast<size_t>(v)]) {
      Index u = parent[static_cast<size_t>(v)];
      double back = std::min(push, flow(v, u));
      flow(v, u) -= back;
      flow(u, v) += push - back;
    }
  }
  double total = flow.row(S).sum();
  double want = double(n0) * pibar1;
  if (total < want - 1e-10) {
    fail(Errc::no_fractional_matching,
         "max-flow " + std::to_string(total) + " below required " +
             std::to_string(want) + ": cross transitions cannot support a fractional matching");
  }
  FractionalMatching fm;
  fm.omega0 = o0;
  fm.omega1 = o1;
  fm.w = Matrix::Zero(n0, n1);
  for (Index u = 0; u < n0; ++u) {
    for (Index v = 0; v < n1; ++v) {
      double f = flow(u, n0 + v) - flow(n0 + v, u);
      fm.w(u, v) = f > tol ? f : 0.0;
    }
  }
  return fm;
}

FractionalMatching fractional_matching(const ZooInstance& instance) {
  return fractional_matching(instance.chain, instance.canonical_partition);
}

ReversibleChain thin_matroid_chain(const ZooInstance& instance,
                                   const FractionalMatching& fm, bool boosted) {
  const int r = instance.metadata.rank;
  const int m = instance.metadata.ground;
  if (r <= 0 || m <= 0) {
    fail(Errc::bad_input, "instance does not carry a bases-exchange clock (rank, ground)");
  }
  const ReversibleChain& chain = instance.chain;
  double pibar0 = 0.0, pibar1 = 0.0;
  for (Index x : fm.omega0) pibar0 += chain.pi(x);
  for (Index y : fm.omega1) pibar1 += chain.pi(y);
  const double denom =
      double(r) * double(m) * (boosted ? std::min(pibar0, pibar1) : 1.0);
  Matrix P = chain.P;
  const Index n0 = static_cast<Index>(fm.omega0.size());
  const Index n1 = static_cast<Index>(fm.omega1.size());
  for (Index u = 0; u < n0; ++u) {
    for (Index v = 0; v < n1; ++v) {
      double p = fm.w(u, v) / denom;
      P(fm.omega0[static_cast<size_t>(u)], fm.omega1[static_cast<size_t>(v)]) = p;
      P(fm.omega1[static_cast<size_t>(v)], fm.omega0[static_cast<size_t>(u)]) = p;
    }
  }
  const double cap = 1.0 / (double(r) * double(m));
  for (Index x = 0; x < chain.size(); ++x) {
    double off = 0.0;
    for (Index y = 0; y < chain.size(); ++y) {
      if (y == x) continue;
      off += P(x, y);
      if (!boosted && P(x, y) > chain.P(x, y) + 1e-15) {
        fail(Errc::bad_input, "thinned transition exceeds the original probability");
      }
      if (boosted && P(x, y) > cap + 1e-15) {
        fail(Errc::bad_input, "boosted transition exceeds 1/(rm)");
      }
    }
    double loop = 1.0 - off;
    if (loop < -kIdentityTol) {
      fail(Errc::negative_loop, "thinning produced a negative loop probability");
    }
    P(x, x) = std::max(0.0, loop);
  }
  return build_chain(std::move(P), chain.pi);
}

int tree_size(int Delta, int d) {
  if (Delta < 1 || d < 0) fail(Errc::bad_input, "need Delta >= 1 and d >= 0");
  if (Delta == 1) return d + 1;
  long long n = 0, layer = 1;
  for (int k = 0; k <= d; ++k) {
    n += layer;
    layer *= Delta;
    if (n > 1'000'000) fail(Errc::bad_input, "tree too large");
  }
  return static_cast<int>(n);
}

ZooInstance hardcore_tree(int Delta, int d, double fugacity, double N) {
  if (!(fugacity > 0.0)) fail(Errc::bad_input, "fugacity must be positive");
  const int n = tree_size(Delta, d);
  if (n > 62) fail(Errc::bad_input, "tree too large for desk-scale enumeration");
  if (N < n) fail(Errc::bad_input, "clock parameter N must be >= |T_d|");
  // level-order vertex numbering; parent of vertex v > 0 is (v-1)/Delta
  std::vector<int> parent(static_cast<size_t>(n), -1);
  for (int v = 1; v < n; ++v) parent[static_cast<size_t>(v)] = (v - 1) / Delta;

  // enumerate independent sets as bitmasks, ascending
  std::vector<std::uint64_t> states;
  {
    std::vector<std::pair<int, std::uint64_t>> stack{{0, 0}};
    while (!stack.empty()) {
      auto [v, mask] = stack.back();
      stack.pop_back();
      if (v == n) {
        states.push_back(mask);
        continue;
      }
      stack.push_back({v + 1, mask});  // v excluded
      int par = parent[static_cast<size_t>(v)];
      if (par < 0 || !(mask & (std::uint64_t(1) << par))) {
        stack.push_back({v + 1, mask | (std::uint64_t(1) << v)});  // v included
      }
      if (states.size() > 200000) fail(Errc::bad_input, "state space too large");
    }
    std::sort(states.begin(), states.end());
  }
  const Index S = static_cast<Index>(states.size());
  std::map<std::uint64_t, Index> index_of;
  for (Index i = 0; i < S; ++i) index_of[states[static_cast<size_t>(i)]] = i;

  Vector pi(S);
  double z = 0.0;
  for (Index i = 0; i < S; ++i) {
    pi(i) = std::pow(fugacity, double(std::popcount(states[static_cast<size_t>(i)])));
    z += pi(i);
  }
  pi /= z;

  const double p_del = 1.0 / ((1.0 + fugacity) * N);
  const double p_add = fugacity / ((1.0 + fugacity) * N);
  Matrix P = Matrix::Zero(S, S);
  for (Index i = 0; i < S; ++i) {
    std::uint64_t mask = states[static_cast<size_t>(i)];
    for (int v = 0; v < n; ++v) {
      std::uint64_t bit = std::uint64_t(1) << v;
      if (mask & bit) {
        P(i, index_of.at(mask & ~bit)) += p_del;
      } else {
        auto it = index_of.find(mask | bit);
        if (it != index_of.end()) P(i, it->second) += p_add;
      }
    }
    P(i, i) = 1.0 - P.row(i).sum();
  }
  ReversibleChain chain = build_chain(std::move(P), pi);

  std::vector<int> block(static_cast<size_t>(S));
  for (Index i = 0; i < S; ++i) {
    std::uint64_t mask = states[static_cast<size_t>(i)];
    if (mask & 1) {
      block[static_cast<size_t>(i)] = 0;  // root occupied
    } else if (index_of.count(mask | 1)) {
      block[static_cast<size_t>(i)] = 1;  // root addable
    } else {
      block[static_cast<size_t>(i)] = 2;  // root blocked by a child
    }
  }
  ZooInstance inst{std::move(chain), make_partition(std::move(block)), {}};
  inst.metadata.name = "hardcore";
  inst.metadata.params = {{"delta", double(Delta)},
                          {"d", double(d)},
                          {"lambda", fugacity},
                          {"N", N},
                          {"n", double(n)},
                          {"states", double(S)}};
  return inst;
}

namespace {

Matrix hardcore_aux_rates(const Distribution& pi_bar, double fugacity) {
  if (pi_bar.size() != 3) fail(Errc::bad_input, "aux chain needs a 3-point distribution");
  for (Index i = 0; i < 3; ++i) {
    if (!(pi_bar[i] > 0.0)) fail(Errc::bad_input, "aux chain weights must be positive");
  }
  if (!(fugacity > 0.0)) fail(Errc::bad_input, "fugacity must be positive");
  // stationarity of pi_bar forces pi_bar(0) = fugacity * pi_bar(1)
  if (std::abs(pi_bar[0] - fugacity * pi_bar[1]) >
      kBuildTol * std::max(1.0, pi_bar[0])) {
    fail(Errc::bad_input,
         "pi_bar is not stationary for the comparison chain: "
         "pi_bar(1) must equal fugacity * pi_bar(2)");
  }
  Matrix P = Matrix::Zero(3, 3);
  P(0, 1) = 1.0 / (1.0 + fugacity);
  P(1, 0) = fugacity / (1.0 + fugacity);
  P(1, 2) = std::min(1.0, pi_bar[2] / pi_bar[1]);
  P(2, 1) = std::min(1.0, pi_bar[1] / pi_bar[2]);
  return P;
}

}  // namespace

ReversibleChain hardcore_aux_chain(const Distribution& pi_bar, double fugacity) {
  Matrix P = hardcore_aux_rates(pi_bar, fugacity);
  for (Index i = 0; i < 3; ++i) {
    double off = P.row(i).sum();
    if (off > 1.0 + kIdentityTol) {
      fail(Errc::negative_loop,
           "comparison chain row " + std::to_string(i) +
               " has transition mass " + std::to_string(off) +
               " > 1; loop would be negative");
    }
    P(i, i) = std::max(0.0, 1.0 - off);
  }
  return build_chain(std::move(P), pi_bar.weights());
}

double hardcore_aux_alpha(const Distribution& pi_bar, double fugacity,
                          int starts, std::uint64_t seed) {
  // only the off-diagonal rates and pi enter the Dirichlet form and the
  // entropy, so the ratio is well defined even when the rows exceed 1
  Matrix P = hardcore_aux_rates(pi_bar, fugacity);
  return lsob_ratio_minimum(pi_bar.weights(), P, starts, seed);
}

}  // namespace decomp_mc
