#include "decomp_mc/chain.hpp"

#include <Eigen/LU>
#include <cmath>
#include <vector>

namespace decomp_mc {

namespace detail {

// (1+d)*log1p(d) - d, the integrand of the entropy functional after
// factoring out E_pi f^2.  Nonnegative for d >= -1; phi(-1) = 1 encodes the
// 0 ln 0 = 0 convention.  Series branch avoids cancellation for small d.
double entropy_phi(double d) {
  if (d < -1.0) d = -1.0;
  if (d == -1.0) return 1.0;
  double a = std::abs(d);
  if (a <= 1e-4) {
    // sum_{k>=2} (-1)^k d^k / (k(k-1))
    double d2 = d * d;
    return d2 * (1.0 / 2.0 + d * (-1.0 / 6.0 + d * (1.0 / 12.0 + d * (-1.0 / 20.0))));
  }
  return (1.0 + d) * std::log1p(d) - d;
}

}  // namespace detail

namespace {

void check_lengths(Index a, Index b, const char* what) {
  if (a != b) {
    fail(Errc::length_mismatch,
         std::string(what) + ": length mismatch (" + std::to_string(a) +
             " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Distribution::Distribution(Vector weights) : w_(std::move(weights)) {
  if (w_.size() == 0) fail(Errc::bad_input, "empty distribution");
  for (Index i = 0; i < w_.size(); ++i) {
    if (w_(i) < -kIdentityTol || !std::isfinite(w_(i))) {
      fail(Errc::bad_input, "distribution weight " + std::to_string(i) +
                                " is negative or not finite");
    }
    if (w_(i) < 0.0) w_(i) = 0.0;
  }
  double s = w_.sum();
  if (std::abs(s - 1.0) > kIdentityTol) {
    fail(Errc::bad_input,
         "distribution weights sum to " + std::to_string(s) + ", expected 1");
  }
}

bool is_irreducible(const Matrix& P) {
  const Index n = P.rows();
  if (n <= 1) return true;
  auto reach = [&](bool forward) {
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    Index count = 1;
    while (!stack.empty()) {
      Index u = stack.back();
      stack.pop_back();
      for (Index v = 0; v < n; ++v) {
        if (seen[static_cast<size_t>(v)] || v == u) continue;
        double w = forward ? P(u, v) : P(v, u);
        if (w > 0.0) {
          seen[static_cast<size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach(true) && reach(false);
}

double detailed_balance_residual(const Matrix& P, const Vector& pi) {
  const Index n = P.rows();
  double worst = 0.0;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      worst = std::max(worst, std::abs(pi(x) * P(x, y) - pi(y) * P(y, x)));
    }
  }
  return worst;
}

Vector stationary_distribution(const Matrix& P) {
  const Index n = P.rows();
  if (n == 1) return Vector::Ones(1);
  // pi P = pi  <=>  (P^T - I) pi = 0; replace the first equation with the
  // normalization sum(pi) = 1.
  Matrix A = P.transpose() - Matrix::Identity(n, n);
  A.row(0).setOnes();
  Vector b = Vector::Zero(n);
  b(0) = 1.0;
  Vector pi = A.partialPivLu().solve(b);
  double s = pi.sum();
  if (!std::isfinite(s) || s <= 0.0) {
    fail(Errc::eigen_failure, "stationary solve failed");
  }
  if (s != 1.0) pi /= s;
  return pi;
}

ReversibleChain build_chain(Matrix P, std::optional<Vector> pi,
                            std::vector<std::string> labels) {
  const Index n = P.rows();
  if (n == 0 || P.cols() != n) {
    fail(Errc::bad_input, "transition matrix must be square and nonempty");
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (!(P(x, y) >= 0.0) || !std::isfinite(P(x, y))) {
        fail(Errc::bad_input, "transition probabilities must be finite and >= 0");
      }
    }
    double row = P.row(x).sum();
    if (std::abs(row - 1.0) > kBuildTol) {
      fail(Errc::not_stochastic, "row " + std::to_string(x) + " sums to " +
                                     std::to_string(row) + ", expected 1");
    }
  }
  if (!labels.empty() && static_cast<Index>(labels.size()) != n) {
    fail(Errc::bad_input, "label count does not match state count");
  }
  if (!is_irreducible(P)) {
    fail(Errc::not_irreducible,
         "digraph of positive off-diagonal transitions is not strongly connected");
  }

  Vector stat;
  if (pi.has_value()) {
    stat = std::move(*pi);
    check_lengths(stat.size(), n, "stationary distribution");
    double s = stat.sum();
    if (std::abs(s - 1.0) > kBuildTol) {
      fail(Errc::bad_input, "stationary distribution sums to " +
                                std::to_string(s) + ", expected 1");
    }
    if (std::abs(s - 1.0) > 1e-15) stat /= s;
  } else {
    stat = stationary_distribution(P);
  }
  for (Index x = 0; x < n; ++x) {
    if (!(stat(x) > 0.0)) {
      fail(Errc::bad_input, "stationary weight of state " + std::to_string(x) +
                                " is not strictly positive");
    }
  }
  double bal = detailed_balance_residual(P, stat);
  if (bal > kBuildTol) {
    fail(Errc::not_reversible, "detailed balance violated by " +
                                   std::to_string(bal) + " (tolerance 1e-9)");
  }
  return ReversibleChain{std::move(P), std::move(stat), std::move(labels)};
}

double expectation(const Distribution& pi, const Vector& f) {
  check_lengths(pi.size(), f.size(), "expectation");
  return pi.weights().dot(f);
}

double variance(const Distribution& pi, const Vector& f) {
  check_lengths(pi.size(), f.size(), "variance");
  double mu = pi.weights().dot(f);
  double v = 0.0;
  for (Index i = 0; i < f.size(); ++i) {
    double d = f(i) - mu;
    v += pi[i] * d * d;
  }
  return v;
}

double dirichlet_form(const ReversibleChain& chain, const Vector& f) {
  check_lengths(chain.size(), f.size(), "dirichlet_form");
  const Index n = chain.size();
  double e = 0.0;
  for (Index x = 0; x < n; ++x) {
    double px = chain.pi(x);
    for (Index y = 0; y < n; ++y) {
      if (x == y) continue;
      double w = px * chain.P(x, y);
      if (w == 0.0) continue;
      double d = f(x) - f(y);
      e += w * d * d;
    }
  }
  return 0.5 * e;
}

double lsob_entropy(const Distribution& pi, const Vector& f) {
  check_lengths(pi.size(), f.size(), "lsob_entropy");
  double s = 0.0;
  for (Index i = 0; i < f.size(); ++i) s += pi[i] * f(i) * f(i);
  if (s <= 0.0) {
    fail(Errc::all_zero_function,
         "lsob_entropy undefined: f vanishes on the support of pi");
  }
  // L = s * sum_x pi(x) phi((f(x)^2 - s)/s); the per-term subtraction of
  // delta keeps the sum accurate near |f| constant, where L ~ 0.
  double acc = 0.0;
  for (Index i = 0; i < f.size(); ++i) {
    if (pi[i] == 0.0) continue;
    double delta = (f(i) * f(i) - s) / s;
    acc += pi[i] * detail::entropy_phi(delta);
  }
  return s * acc;
}

}  // namespace decomp_mc
