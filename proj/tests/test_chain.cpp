#include <cmath>
#include <random>

#include "doctest.h"

#include "decomp_mc/chain.hpp"
#include "decomp_mc/random_instances.hpp"

using namespace decomp_mc;

namespace {

Matrix two_state(double q01, double q10) {
  Matrix P(2, 2);
  P << 1 - q01, q01, q10, 1 - q10;
  return P;
}

}  // namespace

TEST_CASE("build_chain computes the stationary distribution") {
  SUBCASE("symmetric two-state chain is uniform") {
    Matrix P(2, 2);
    P << 0.5, 0.5, 0.5, 0.5;
    ReversibleChain c = build_chain(P);
    CHECK(c.pi(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.pi(1) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("rank-one rows give pi equal to the common row") {
    Matrix P(2, 2);
    P << 2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0;
    ReversibleChain c = build_chain(P);
    CHECK(c.pi(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(c.pi(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(detailed_balance_residual(c.P, c.pi) <= 1e-15);
  }
}

TEST_CASE("build_chain rejects bad inputs") {
  SUBCASE("identity matrix is not irreducible") {
    try {
      build_chain(Matrix::Identity(2, 2));
      FAIL("expected NotIrreducible");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_irreducible);
    }
  }
  SUBCASE("row sums beyond 1e-9 are rejected") {
    Matrix P(2, 2);
    P << 0.5, 0.5 + 1e-7, 0.5, 0.5;
    try {
      build_chain(P);
      FAIL("expected NotStochastic");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_stochastic);
    }
  }
  SUBCASE("asymmetric rotation violates detailed balance") {
    Matrix P(3, 3);
    P << 0.2, 0.6, 0.2, 0.2, 0.2, 0.6, 0.6, 0.2, 0.2;
    try {
      build_chain(P);
      FAIL("expected NotReversible");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_reversible);
    }
  }
  SUBCASE("provided pi must be positive") {
    Matrix P = two_state(0.5, 0.5);
    Vector pi(2);
    pi << 1.0, 0.0;
    try {
      build_chain(P, pi);
      FAIL("expected positivity error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::bad_input);
    }
  }
}

TEST_CASE("expectation") {
  Distribution uni(Vector::Constant(2, 0.5));
  Vector f(2);
  f << 0, 1;
  CHECK(expectation(uni, f) == doctest::Approx(0.5));

  Vector c = Vector::Constant(5, 3.25);
  Distribution any(Vector::Constant(5, 0.2));
  CHECK(expectation(any, c) == doctest::Approx(3.25));

  Vector w(2);
  w << 2.0 / 3.0, 1.0 / 3.0;
  Vector g(2);
  g << 3, 0;
  CHECK(expectation(Distribution(w), g) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(expectation(uni, c), Error);
}

TEST_CASE("variance") {
  Distribution uni(Vector::Constant(2, 0.5));
  Vector f(2);
  f << 0, 1;
  CHECK(variance(uni, Vector::Constant(2, 7.0)) == doctest::Approx(0.0));
  CHECK(variance(uni, f) == doctest::Approx(0.25));
  Vector w(2);
  w << 0.9, 0.1;
  CHECK(variance(Distribution(w), f) == doctest::Approx(0.09).epsilon(1e-14));
}

TEST_CASE("dirichlet form") {
  ReversibleChain c = build_chain(two_state(0.5, 0.5));
  Vector f(2);
  f << 0, 1;
  CHECK(dirichlet_form(c, Vector::Constant(2, 4.0)) == doctest::Approx(0.0));
  CHECK(dirichlet_form(c, f) == doctest::Approx(0.25));

  // 4-cycle with step 1/3, one-hot function
  Matrix P = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    P(i, (i + 1) % 4) = 1.0 / 3.0;
    P(i, (i + 3) % 4) = 1.0 / 3.0;
    P(i, i) = 1.0 / 3.0;
  }
  ReversibleChain cyc = build_chain(P);
  Vector onehot = Vector::Zero(4);
  onehot(0) = 1.0;
  CHECK(dirichlet_form(cyc, onehot) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("dirichlet form is shift invariant") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    ReversibleChain c = random_reversible_chain(6, rng);
    Vector f = random_test_function(6, rng);
    double a = dirichlet_form(c, f);
    double b = dirichlet_form(c, f + Vector::Constant(6, 17.5));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
  }
}

TEST_CASE("lsob entropy") {
  Distribution uni(Vector::Constant(2, 0.5));
  SUBCASE("constant function has zero entropy") {
    CHECK(lsob_entropy(uni, Vector::Constant(2, 3.0)) == 0.0);
    Vector sgn(2);
    sgn << 2.0, -2.0;  // |f| constant
    CHECK(lsob_entropy(uni, sgn) <= 1e-12);
  }
  SUBCASE("one-hot on two uniform states") {
    Vector f(2);
    f << 1, 0;
    CHECK(lsob_entropy(uni, f) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("ratio E/L is scale invariant") {
    ReversibleChain c = build_chain(two_state(0.3, 0.3));
    Vector f(2);
    f << 0.4, 1.9;
    double r1 = dirichlet_form(c, f) / lsob_entropy(c.stationary(), f);
    Vector g = 37.5 * f;
    double r2 = dirichlet_form(c, g) / lsob_entropy(c.stationary(), g);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
  }
  SUBCASE("all-zero function is rejected") {
    try {
      lsob_entropy(uni, Vector::Zero(2));
      FAIL("expected AllZeroFunction");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::all_zero_function);
    }
  }
  SUBCASE("nonnegative on random data, zero only for constant modulus") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 200; ++k) {
      Vector w = Vector::Random(5).cwiseAbs() + Vector::Constant(5, 0.01);
      w /= w.sum();
      Vector f = random_test_function(5, rng);
      double L = lsob_entropy(Distribution(w), f);
      CHECK(L >= 0.0);
      CHECK(L > 1e-12);  // random f never has constant modulus
    }
  }
}

TEST_CASE("functional values agree with independent double-loop evaluation") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 25; ++k) {
    ReversibleChain c = random_reversible_chain(8, rng);
    Vector f = random_test_function(8, rng);

    double mu = 0.0;
    for (int x = 0; x < 8; ++x) mu += c.pi(x) * f(x);
    double var = 0.0;
    for (int x = 0; x < 8; ++x) var += c.pi(x) * (f(x) - mu) * (f(x) - mu);
    double dir = 0.0;
    for (int x = 0; x < 8; ++x) {
      for (int y = 0; y < 8; ++y) {
        dir += 0.5 * c.pi(x) * c.P(x, y) * (f(x) - f(y)) * (f(x) - f(y));
      }
    }
    double s = 0.0;
    for (int x = 0; x < 8; ++x) s += c.pi(x) * f(x) * f(x);
    double ent = 0.0;
    for (int x = 0; x < 8; ++x) {
      double fx2 = f(x) * f(x);
      if (fx2 > 0.0) ent += c.pi(x) * fx2 * (std::log(fx2) - std::log(s));
    }

    CHECK(variance(c.stationary(), f) == doctest::Approx(var).epsilon(1e-12));
    CHECK(dirichlet_form(c, f) == doctest::Approx(dir).epsilon(1e-12));
    CHECK(lsob_entropy(c.stationary(), f) == doctest::Approx(ent).epsilon(1e-10));
    CHECK(detailed_balance_residual(c.P, c.pi) <= 1e-12);
  }
}

TEST_CASE("distribution invariants") {
  Vector bad(2);
  bad << 0.6, 0.6;
  CHECK_THROWS_AS(Distribution(bad), Error);
  Vector neg(2);
  neg << 1.5, -0.5;
  CHECK_THROWS_AS(Distribution(neg), Error);
  Vector hat(3);
  hat << 1.0, 0.0, 0.0;  // zero entries are fine
  CHECK(Distribution(hat).size() == 3);
}
