#include "decomp_mc/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace decomp_mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  Index x, y;
  double w;  // (pi(x)P(x,y) + pi(y)P(y,x)) / 2
};

// Weighted-graph view of the Dirichlet form.  Works for any nonnegative
// rate matrix with pi(x)P(x,y) symmetric, stochastic or not, which is what
// the formal comparison devices need.
struct DirichletGraph {
  Index n;
  Vector pi;
  std::vector<Edge> edges;

  DirichletGraph(const Vector& pi_in, const Matrix& P) : n(pi_in.size()), pi(pi_in) {
    for (Index x = 0; x < n; ++x) {
      for (Index y = x + 1; y < n; ++y) {
        double w = 0.5 * (pi(x) * P(x, y) + pi(y) * P(y, x));
        if (w > 0.0) edges.push_back({x, y, w});
      }
    }
  }

  double dirichlet(const Vector& f) const {
    double e = 0.0;
    for (const Edge& ed : edges) {
      double d = f(ed.x) - f(ed.y);
      e += ed.w * d * d;
    }
    return e;
  }

  void add_dirichlet_grad(const Vector& f, Vector& g) const {
    for (const Edge& ed : edges) {
      double d = 2.0 * ed.w * (f(ed.x) - f(ed.y));
      g(ed.x) += d;
      g(ed.y) -= d;
    }
  }

  double entropy(const Vector& f, double* s_out = nullptr) const {
    double s = 0.0;
    for (Index i = 0; i < n; ++i) s += pi(i) * f(i) * f(i);
    if (s_out) *s_out = s;
    if (!(s > 0.0)) return 0.0;
    double acc = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (pi(i) == 0.0) continue;
      double delta = (f(i) * f(i) - s) / s;
      acc += pi(i) * detail::entropy_phi(delta);
    }
    return s * acc;
  }

  // ratio E/L; +inf when L is numerically zero (|f| constant)
  double ratio(const Vector& f) const {
    double L = entropy(f);
    if (!(L > 1e-300)) return kInf;
    return dirichlet(f) / L;
  }

  // gradient of E/L at f; requires L > 0
  Vector ratio_grad(const Vector& f, double R, double L, double s) const {
    Vector dE = Vector::Zero(n);
    add_dirichlet_grad(f, dE);
    Vector dL = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (f(i) == 0.0 || pi(i) == 0.0) continue;
      double delta = (f(i) * f(i) - s) / s;
      if (delta <= -1.0) continue;
      dL(i) = 2.0 * pi(i) * f(i) * std::log1p(delta);
    }
    return (dE - R * dL) / L;
  }

  double pi_dot(const Vector& a, const Vector& b) const {
    double d = 0.0;
    for (Index i = 0; i < n; ++i) d += pi(i) * a(i) * b(i);
    return d;
  }
};

struct DescentResult {
  double ratio = kInf;
  Vector f;
};

// Projected gradient descent for E/L on the pi-sphere with backtracking line
// search; stops when the relative ratio improvement drops below 1e-10.
DescentResult descend(const DirichletGraph& g, Vector f, int max_iter = 2000) {
  DescentResult out;
  double s0 = g.pi_dot(f, f);
  if (!(s0 > 0.0)) return out;
  f /= std::sqrt(s0);
  double R = g.ratio(f);
  if (!std::isfinite(R)) return out;
  double t = 1.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    double s = 0.0;
    double L = g.entropy(f, &s);
    if (!(L > 1e-300)) break;
    Vector grad = g.ratio_grad(f, R, L, s);
    // tangent component on the sphere {sum pi f^2 = 1}
    grad -= g.pi_dot(grad, f) * f;
    double gn2 = g.pi_dot(grad, grad);
    if (!(gn2 > 1e-24 * std::max(1.0, R * R))) break;
    bool improved = false;
    double r_prev = R;
    for (int k = 0; k < 60; ++k) {
      Vector fn = f - t * grad;
      double sn = g.pi_dot(fn, fn);
      if (sn > 0.0) {
        fn /= std::sqrt(sn);
        double Rn = g.ratio(fn);
        if (Rn < R - 1e-4 * t * gn2) {
          f = std::move(fn);
          R = Rn;
          if (k == 0) t *= 2.0;
          improved = true;
          break;
        }
      }
      t *= 0.5;
      if (t < 1e-300) break;
    }
    if (!improved) break;
    if (r_prev - R <= 1e-10 * std::max(R, 1e-300)) break;
  }
  out.ratio = R;
  out.f = std::move(f);
  return out;
}

// Second-smallest eigenpair of the symmetrized Laplacian-like operator
// B = D^{-1/2} (D_w - W) D^{-1/2}; for stochastic P this is I - S with
// S(x,y) = sqrt(P(x,y)P(y,x)).  Returns the back-transformed direction.
Vector gap_direction(const Vector& pi, const Matrix& P, double* lambda2 = nullptr) {
  const Index n = pi.size();
  Matrix W = Matrix::Zero(n, n);
  Vector deg = Vector::Zero(n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (x == y) continue;
      double w = 0.5 * (pi(x) * P(x, y) + pi(y) * P(y, x));
      W(x, y) = w;
      deg(x) += w;
    }
  }
  Matrix B = Matrix::Zero(n, n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      B(x, y) = (x == y ? deg(x) : -W(x, y)) / std::sqrt(pi(x) * pi(y));
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(B);
  if (es.info() != Eigen::Success) {
    fail(Errc::eigen_failure, "symmetric eigensolver did not converge");
  }
  if (lambda2) *lambda2 = es.eigenvalues()(1);
  Vector v = es.eigenvectors().col(1);
  Vector f(n);
  for (Index x = 0; x < n; ++x) f(x) = v(x) / std::sqrt(pi(x));
  // deterministic sign: first component of largest magnitude is positive
  Index imax = 0;
  f.cwiseAbs().maxCoeff(&imax);
  if (f(imax) < 0.0) f = -f;
  return f;
}

LsobCertificate lsob_minimize(const Vector& pi, const Matrix& P, int starts,
                              std::uint64_t seed) {
  const Index n = pi.size();
  if (n < 2) {
    fail(Errc::optimizer_stall,
         "no nonconstant test function exists on fewer than two states");
  }
  if (starts < 1) fail(Errc::bad_input, "starts must be >= 1");
  DirichletGraph graph(pi, P);

  std::vector<Vector> seeds;
  Vector witness = gap_direction(pi, P);
  seeds.push_back(witness);
  // near-constant perturbations along the gap witness: their ratio sits at
  // lambda/2 + O(eps^2), which is the optimum whenever alpha = lambda/2 is
  // attained only in the constant limit
  double wn = std::sqrt(graph.pi_dot(witness, witness));
  if (wn > 0.0) {
    Vector unit = witness / wn;
    seeds.push_back(Vector::Ones(n) + 1e-5 * unit);
    seeds.push_back(Vector::Ones(n) - 1e-5 * unit);
  }
  // +-indicator seeds (f and -f give the same ratio, so one sign suffices
  // per state); strided subset on large chains
  Index stride = n <= 64 ? 1 : (n + 63) / 64;
  for (Index x = 0; x < n; x += stride) {
    Vector e = Vector::Zero(n);
    e(x) = 1.0;
    seeds.push_back(std::move(e));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < starts; ++k) {
    Vector r(n);
    for (Index i = 0; i < n; ++i) r(i) = gauss(rng);
    seeds.push_back(std::move(r));
  }

  LsobCertificate cert;
  cert.alpha_estimate = kInf;
  for (const Vector& s : seeds) {
    DescentResult res = descend(graph, s);
    if (res.ratio < cert.alpha_estimate) {
      cert.alpha_estimate = res.ratio;
      cert.witness = res.f;
    }
  }
  if (!std::isfinite(cert.alpha_estimate)) {
    fail(Errc::optimizer_stall, "no feasible nonconstant start found");
  }
  return cert;
}

}  // namespace

SpectralCertificate spectral_gap(const ReversibleChain& chain) {
  const Index n = chain.size();
  if (n < 2) {
    fail(Errc::bad_input, "spectral gap undefined for a single-state chain");
  }
  double lambda2 = 0.0;
  Vector witness = gap_direction(chain.pi, chain.P, &lambda2);
  SpectralCertificate cert;
  cert.gap = lambda2;  // eigenvalue of I - S, i.e. 1 - mu2 directly
  cert.second_eigenvalue = 1.0 - lambda2;
  cert.witness = std::move(witness);
  return cert;
}

LsobCertificate log_sobolev_constant(const ReversibleChain& chain, int starts,
                                     std::uint64_t seed) {
  if (chain.size() < 2) {
    fail(Errc::optimizer_stall,
         "no feasible nonconstant start on a single-state chain");
  }
  LsobCertificate cert = lsob_minimize(chain.pi, chain.P, starts, seed);
  cert.half_gap = 0.5 * spectral_gap(chain).gap;
  return cert;
}

double lsob_ratio_minimum(const Vector& pi, const Matrix& P, int starts,
                          std::uint64_t seed) {
  return lsob_minimize(pi, P, starts, seed).alpha_estimate;
}

double mixing_time_poincare(double gap, double pi_x, double eps) {
  if (!(gap > 0.0)) fail(Errc::bad_input, "gap must be positive");
  if (!(pi_x > 0.0 && pi_x <= 1.0)) fail(Errc::bad_input, "pi(x) must lie in (0,1]");
  if (!(eps > 0.0 && eps < 1.0)) fail(Errc::bad_input, "eps must lie in (0,1)");
  return (std::log(1.0 / pi_x) + std::log(1.0 / eps)) / gap;
}

double mixing_time_poincare(const ReversibleChain& chain, Index x, double eps) {
  if (x < 0 || x >= chain.size()) fail(Errc::bad_input, "state out of range");
  return mixing_time_poincare(spectral_gap(chain).gap, chain.pi(x), eps);
}

double mixing_time_lsob(double alpha, double pi_x, double eps) {
  if (!(alpha > 0.0)) fail(Errc::bad_input, "alpha must be positive");
  if (!(eps > 0.0 && eps < 1.0)) fail(Errc::bad_input, "eps must lie in (0,1)");
  if (!(pi_x > 0.0)) fail(Errc::bad_input, "pi(x) must be positive");
  if (pi_x > std::exp(-1.0)) {
    fail(Errc::state_too_heavy, "pi(x) must be <= 1/e for the log-Sobolev estimate");
  }
  return (std::log(std::log(1.0 / pi_x)) + std::log(1.0 / eps)) / alpha;
}

double mixing_time_lsob(const ReversibleChain& chain, Index x, double eps,
                        int starts, std::uint64_t seed) {
  if (x < 0 || x >= chain.size()) fail(Errc::bad_input, "state out of range");
  double alpha = log_sobolev_constant(chain, starts, seed).alpha_estimate;
  return mixing_time_lsob(alpha, chain.pi(x), eps);
}

double tv_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) fail(Errc::length_mismatch, "tv_distance length mismatch");
  return 0.5 * (a - b).cwiseAbs().sum();
}

int tv_mixing_time_exact(const ReversibleChain& chain, Index x, double eps,
                         int t_max) {
  if (x < 0 || x >= chain.size()) fail(Errc::bad_input, "state out of range");
  if (t_max < 1) fail(Errc::bad_input, "t_max must be >= 1");
  Vector mu = Vector::Zero(chain.size());
  mu(x) = 1.0;
  for (int t = 0; t <= t_max; ++t) {
    if (tv_distance(mu, chain.pi) <= eps) return t;
    if (t < t_max) mu = chain.P.transpose() * mu;
  }
  fail(Errc::not_mixed_within,
       "total variation distance did not reach eps within t_max steps");
}

}  // namespace decomp_mc
