#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "decomp_mc/random_instances.hpp"
#include "decomp_mc/spectral.hpp"
#include "decomp_mc/zoo.hpp"

using namespace decomp_mc;

TEST_CASE("spectral gap of small chains") {
  SUBCASE("two-state symmetric: gap = 2q") {
    ReversibleChain c = two_state_chain(0.25, 0.25);
    CHECK(spectral_gap(c).gap == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("8-cycle with 1/3 steps") {
    ReversibleChain c = cycle_chain(8, 1.0 / 3.0);
    double expected = 2.0 / 3.0 * (1.0 - std::cos(2.0 * std::numbers::pi / 8.0));
    CHECK(std::abs(spectral_gap(c).gap - expected) <= 1e-9);
  }
  SUBCASE("Boolean cube n=3: gap = 2/(n+1)") {
    CHECK(std::abs(spectral_gap(boolean_cube(3).chain).gap - 0.5) <= 1e-12);
  }
}

TEST_CASE("gap witness attains the Rayleigh quotient") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    ReversibleChain c = random_reversible_chain(9, rng);
    SpectralCertificate cert = spectral_gap(c);
    CHECK(cert.gap > 0.0);
    CHECK(cert.gap <= 2.0 + 1e-12);
    double rayleigh =
        dirichlet_form(c, cert.witness) / variance(c.stationary(), cert.witness);
    CHECK(std::abs(rayleigh - cert.gap) <= 1e-8);
    CHECK(cert.second_eigenvalue == doctest::Approx(1.0 - cert.gap).epsilon(1e-12));
  }
}

TEST_CASE("variational characterization of the gap") {
  // gap lower-bounds the Rayleigh quotient over 10,000 random nonconstant
  // functions, and the witness attains it, so the minimum over the candidate
  // set equals the gap
  std::mt19937_64 rng(11);
  ReversibleChain c = random_reversible_chain(12, rng);
  SpectralCertificate cert = spectral_gap(c);
  double min_quotient = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10000; ++k) {
    Vector f = random_test_function(12, rng);
    double var = variance(c.stationary(), f);
    if (var <= 1e-12) continue;
    double q = dirichlet_form(c, f) / var;
    CHECK(q >= cert.gap - 1e-9);
    min_quotient = std::min(min_quotient, q);
  }
  double witness_quotient =
      dirichlet_form(c, cert.witness) / variance(c.stationary(), cert.witness);
  min_quotient = std::min(min_quotient, witness_quotient);
  CHECK(std::abs(min_quotient - cert.gap) <= 1e-6);
}

TEST_CASE("log-Sobolev estimates") {
  SUBCASE("two-state symmetric: alpha = q") {
    for (double q : {0.5, 0.25, 0.1, 0.01}) {
      ReversibleChain c = two_state_chain(q, q);
      LsobCertificate cert = log_sobolev_constant(c, 8, 1);
      CHECK(std::abs(cert.alpha_estimate - q) <= 1e-4);
      CHECK(cert.alpha_estimate <= cert.half_gap + 1e-8);
      double ratio = dirichlet_form(c, cert.witness) /
                     lsob_entropy(c.stationary(), cert.witness);
      CHECK(std::abs(ratio - cert.alpha_estimate) <= 1e-8);
    }
  }
  SUBCASE("cube n=2: alpha = 1/(n+1)") {
    LsobCertificate cert = log_sobolev_constant(boolean_cube(2).chain, 16, 2);
    CHECK(std::abs(cert.alpha_estimate - 1.0 / 3.0) <= 1e-3);
  }
  SUBCASE("alpha <= gap/2 across a battery of chains") {
    std::mt19937_64 rng(5);
    std::vector<ReversibleChain> chains;
    chains.push_back(two_state_chain(0.7, 0.1));
    chains.push_back(cycle_chain(5, 0.3));
    chains.push_back(boolean_cube(3).chain);
    chains.push_back(ising_path(3, 0.8).chain);
    for (int k = 0; k < 6; ++k) chains.push_back(random_reversible_chain(7, rng));
    for (const auto& c : chains) {
      LsobCertificate cert = log_sobolev_constant(c, 8, 3);
      CHECK(cert.alpha_estimate > 0.0);
      CHECK(cert.alpha_estimate <= cert.half_gap + 1e-8);
    }
  }
  SUBCASE("deterministic given seed") {
    ReversibleChain c = random_reversible_chain(
        6, *[] { static std::mt19937_64 r(77); return &r; }());
    LsobCertificate a = log_sobolev_constant(c, 12, 42);
    LsobCertificate b = log_sobolev_constant(c, 12, 42);
    CHECK(a.alpha_estimate == b.alpha_estimate);
    CHECK((a.witness - b.witness).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single state stalls") {
    ReversibleChain one = build_chain(Matrix::Ones(1, 1));
    CHECK_THROWS_AS(log_sobolev_constant(one), Error);
  }
}

TEST_CASE("mixing time estimates") {
  SUBCASE("poincare expression") {
    CHECK(mixing_time_poincare(0.5, 0.5, 0.5) ==
          doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
    // doubling 1/eps adds exactly ln(2)/gap
    double a = mixing_time_poincare(0.25, 0.3, 0.2);
    double b = mixing_time_poincare(0.25, 0.3, 0.1);
    CHECK(b - a == doctest::Approx(std::log(2.0) / 0.25).epsilon(1e-12));
    // both logarithms vanish in the eps -> 1, pi(x) -> 1 limit
    CHECK(mixing_time_poincare(0.5, 1.0 - 1e-12, 1.0 - 1e-12) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("log-Sobolev expression") {
    CHECK(mixing_time_lsob(0.5, std::exp(-std::exp(1.0)), std::exp(-1.0)) ==
          doctest::Approx(4.0).epsilon(1e-12));
    try {
      mixing_time_lsob(0.5, 0.5, 0.1);
      FAIL("expected StateTooHeavy");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::state_too_heavy);
    }
    // decreasing in eps
    double t1 = mixing_time_lsob(0.5, 0.01, 0.1);
    double t2 = mixing_time_lsob(0.5, 0.01, 0.2);
    CHECK(t2 < t1);
  }
}

TEST_CASE("exact total-variation mixing time") {
  SUBCASE("eps >= 1 mixes instantly") {
    ReversibleChain c = two_state_chain(0.25, 0.25);
    CHECK(tv_mixing_time_exact(c, 0, 1.0, 10) == 0);
  }
  SUBCASE("q = 1/2 mixes in one step") {
    ReversibleChain c = two_state_chain(0.5, 0.5);
    CHECK(tv_mixing_time_exact(c, 0, 0.1, 10) == 1);
  }
  SUBCASE("matches independent matrix-power evolution on the pince-nez") {
    ZooInstance inst = pince_nez(4, 1.0 / 3.0);
    int t = tv_mixing_time_exact(inst.chain, 0, 0.25, 1000);
    // brute force: full matrix powers
    Matrix Pt = Matrix::Identity(8, 8);
    int expected = -1;
    for (int s = 0; s <= 1000; ++s) {
      double tv = 0.5 * (Pt.row(0).transpose() - inst.chain.pi).cwiseAbs().sum();
      if (tv <= 0.25) {
        expected = s;
        break;
      }
      Pt = Pt * inst.chain.P;
    }
    CHECK(t == expected);
    CHECK(t > 0);
  }
  SUBCASE("reports when the horizon is too short") {
    ReversibleChain c = two_state_chain(0.01, 0.01);
    try {
      tv_mixing_time_exact(c, 0, 1e-6, 3);
      FAIL("expected NotMixedWithin");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_mixed_within);
    }
  }
}

TEST_CASE("exact mixing never exceeds the Poincare estimate in the lazy regime") {
  // zoo chains with min loop probability >= 1/4
  std::vector<ReversibleChain> chains;
  chains.push_back(boolean_cube(2).chain);
  chains.push_back(boolean_cube(3).chain);
  chains.push_back(pince_nez(4, 1.0 / 12.0).chain);
  chains.push_back(pince_nez(6, 1.0 / 12.0).chain);
  chains.push_back(ising_path(2, 0.0).chain);
  chains.push_back(ising_path(3, 0.0).chain);
  {
    std::vector<std::pair<int, int>> k4;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) k4.push_back({a, b});
    }
    chains.push_back(graphic_matroid_walk(k4, 0).chain);
  }
  for (const auto& c : chains) {
    REQUIRE(c.min_loop() >= 0.25 - 1e-12);
    for (double eps : {0.25, 0.1}) {
      Index x0 = 0;
      Index xmin;
      c.pi.minCoeff(&xmin);
      for (Index x : {x0, xmin}) {
        int exact = tv_mixing_time_exact(c, x, eps, 200000);
        double estimate = mixing_time_poincare(c, x, eps);
        CHECK(exact <= static_cast<int>(std::ceil(estimate)));
      }
    }
  }
}
