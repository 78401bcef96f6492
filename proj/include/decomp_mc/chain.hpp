#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "decomp_mc/errors.hpp"

namespace decomp_mc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tolerance ladder: user-facing construction accepts noise up to kBuildTol;
// algebraic identities on constructed objects are asserted at kIdentityTol.
inline constexpr double kBuildTol = 1e-9;
inline constexpr double kIdentityTol = 1e-12;

/// Probability distribution on a finite set: nonnegative weights summing to
/// one (within kIdentityTol).  Entries may be zero; chains require strictly
/// positive stationary weights and check that separately.
class Distribution {
 public:
  explicit Distribution(Vector weights);

  const Vector& weights() const { return w_; }
  double operator[](Index i) const { return w_(i); }
  Index size() const { return w_.size(); }

 private:
  Vector w_;
};

/// Finite reversible Markov chain: row-stochastic transition matrix P and
/// strictly positive stationary distribution pi satisfying detailed balance
/// pi(x)P(x,y) = pi(y)P(y,x).  Immutable after construction; build through
/// build_chain so the invariants are checked.
struct ReversibleChain {
  Matrix P;
  Vector pi;
  std::vector<std::string> labels;  // optional, empty or size n

  Index size() const { return P.rows(); }
  double min_loop() const { return P.diagonal().minCoeff(); }
  Distribution stationary() const { return Distribution(pi); }
};

/// Solves pi P = pi, sum(pi) = 1 by a direct linear solve (no aperiodicity
/// assumption).  P must be row-stochastic and irreducible.
Vector stationary_distribution(const Matrix& P);

/// Validates and assembles a chain.  When pi is absent it is computed as the
/// unique solution of pi P = pi.  Throws Error with code not_stochastic,
/// not_irreducible or not_reversible (validation tolerance kBuildTol).
ReversibleChain build_chain(Matrix P, std::optional<Vector> pi = std::nullopt,
                            std::vector<std::string> labels = {});

/// True if the digraph of strictly positive off-diagonal entries of P is
/// strongly connected.
bool is_irreducible(const Matrix& P);

/// Largest absolute detailed-balance violation max_xy |pi(x)P(x,y) - pi(y)P(y,x)|.
double detailed_balance_residual(const Matrix& P, const Vector& pi);

double expectation(const Distribution& pi, const Vector& f);
double variance(const Distribution& pi, const Vector& f);

namespace detail {
// (1+d)ln(1+d) - d for d >= -1, evaluated without cancellation; phi(-1) = 1.
// lsob_entropy(pi, f) = s * sum_x pi(x) phi((f(x)^2 - s)/s) with s = E_pi f^2.
double entropy_phi(double d);
}  // namespace detail

/// (1/2) sum_{x,y} pi(x) P(x,y) (f(x) - f(y))^2
double dirichlet_form(const ReversibleChain& chain, const Vector& f);

/// E_pi[f^2 (ln f^2 - ln E_pi f^2)] with the convention 0 ln 0 = 0.
/// Nonnegative; zero exactly when |f| is constant on the support of pi.
/// Throws all_zero_function when E_pi f^2 = 0.
double lsob_entropy(const Distribution& pi, const Vector& f);

}  // namespace decomp_mc
