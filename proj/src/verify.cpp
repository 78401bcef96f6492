#include "decomp_mc/verify.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "decomp_mc/random_instances.hpp"

namespace decomp_mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CheckRow {
  std::string name;
  bool pass;
  double residual;
  double tolerance;
};

Json finite_or_null(double v) {
  if (std::isfinite(v)) return Json(v);
  return Json(nullptr);
}

// local views of one block: stationary weights, hat distribution, values
struct BlockView {
  std::vector<Index> states;
  Vector pi_local;   // normalized to the block
  double pibar = 0.0;
};

double local_mean(const Vector& w, const Vector& vals) { return w.dot(vals); }

double local_var(const Vector& w, const Vector& vals) {
  double mu = w.dot(vals);
  double v = 0.0;
  for (Index i = 0; i < w.size(); ++i) {
    double d = vals(i) - mu;
    v += w(i) * d * d;
  }
  return v;
}

double local_mean_sq(const Vector& w, const Vector& vals) {
  double s = 0.0;
  for (Index i = 0; i < w.size(); ++i) s += w(i) * vals(i) * vals(i);
  return s;
}

}  // namespace

VerifyOutcome verify_instance(const ReversibleChain& chain, const Partition& part,
                              const VerifyOptions& opt, const Json& metadata) {
  using Clock = std::chrono::steady_clock;
  auto t_start = Clock::now();

  DecompositionReport rep = build_decomposition(chain, part);
  const int m = part.m;
  auto blocks = blocks_of(part);

  std::vector<BlockView> views(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    BlockView& bv = views[static_cast<size_t>(i)];
    bv.states = blocks[static_cast<size_t>(i)];
    Vector w(static_cast<Index>(bv.states.size()));
    for (size_t u = 0; u < bv.states.size(); ++u) {
      w(static_cast<Index>(u)) = chain.pi(bv.states[u]);
      bv.pibar += chain.pi(bv.states[u]);
    }
    bv.pi_local = w / w.sum();
  }

  auto t_decomp = Clock::now();

  // ---- spectral oracles -------------------------------------------------
  SpectralCertificate full_gap = spectral_gap(chain);
  LsobCertificate full_alpha = log_sobolev_constant(chain, opt.lsob_starts, opt.seed);
  SpectralCertificate proj_gap = spectral_gap(rep.projection);
  LsobCertificate proj_alpha =
      log_sobolev_constant(rep.projection, opt.lsob_starts, opt.seed + 1);

  MeasuredQuantities q;
  q.gap = full_gap.gap;
  q.alpha = full_alpha.alpha_estimate;
  q.lambda_bar = proj_gap.gap;
  q.alpha_bar = proj_alpha.alpha_estimate;
  q.lambda_min = kInf;
  q.alpha_min = kInf;
  for (size_t i = 0; i < rep.restrictions.size(); ++i) {
    const ReversibleChain& r = rep.restrictions[i];
    if (r.size() < 2) continue;  // singleton: lambda_i = alpha_i = +inf
    q.lambda_min = std::min(q.lambda_min, spectral_gap(r).gap);
    q.alpha_min = std::min(
        q.alpha_min,
        log_sobolev_constant(r, opt.lsob_starts, opt.seed + 2 + i).alpha_estimate);
  }
  q.gamma = rep.gamma;
  q.eta = rep.eta;
  q.gamma_hat = rep.gamma_hat;
  q.min_loop = chain.min_loop();

  auto t_spectral = Clock::now();

  // ---- bounds ------------------------------------------------------------
  bool hat_zero = q.gamma_hat <= opt.gamma_hat_zero;
  std::vector<BoundResult> poincare_rules;
  poincare_rules.push_back(poincare_bound(Rule::thm1, q.lambda_bar, q.lambda_min, q.gamma));
  poincare_rules.push_back(poincare_bound(Rule::cor2, q.lambda_bar, q.lambda_min, q.gamma_hat));
  if (hat_zero) {
    poincare_rules.push_back(poincare_bound(Rule::cor3, q.lambda_bar, q.lambda_min, 0.0));
  }
  std::vector<BoundResult> lsob_rules;
  lsob_rules.push_back(lsob_bound(Rule::thm4, q.alpha_bar, q.alpha_min, q.gamma));
  lsob_rules.push_back(lsob_bound(Rule::cor5, q.alpha_bar, q.alpha_min, q.gamma_hat));
  if (hat_zero) {
    lsob_rules.push_back(lsob_bound(Rule::cor6, q.alpha_bar, q.alpha_min, 0.0));
  }

  std::vector<CheckRow> checks;
  auto add_check = [&checks](const std::string& name, double residual, double tol) {
    checks.push_back({name, residual <= tol, residual, tol});
  };

  // ---- structural identities ----------------------------------------------
  add_check("detailed_balance", detailed_balance_residual(chain.P, chain.pi),
            kIdentityTol);
  {
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      const BlockView& bv = views[static_cast<size_t>(i)];
      for (size_t u = 0; u < bv.states.size(); ++u) {
        worst = std::max(worst, std::abs(bv.pibar * bv.pi_local(static_cast<Index>(u)) -
                                         chain.pi(bv.states[u])));
      }
    }
    add_check("mass_reconstruction", worst, kIdentityTol);
  }
  {
    double worst = 0.0;
    for (const auto& r : rep.restrictions) {
      for (Index x = 0; x < r.size(); ++x) {
        worst = std::max(worst, std::abs(r.P.row(x).sum() - 1.0));
      }
    }
    add_check("restriction_row_sums", worst, kIdentityTol);
  }

  // ---- witness consistency -------------------------------------------------
  {
    double var = variance(chain.stationary(), full_gap.witness);
    double ray = var > 0.0 ? dirichlet_form(chain, full_gap.witness) / var : kInf;
    add_check("gap_witness_rayleigh", std::abs(ray - q.gap), 1e-8);
    double ent = lsob_entropy(chain.stationary(), full_alpha.witness);
    double lray = ent > 0.0 ? dirichlet_form(chain, full_alpha.witness) / ent : kInf;
    add_check("alpha_witness_ratio", std::abs(lray - q.alpha), 1e-8);
    add_check("alpha_le_half_gap", q.alpha - 0.5 * q.gap, opt.tol_alpha_half_gap);
  }

  // ---- hat distributions and eta ------------------------------------------
  struct PairView {
    int i, j;
    Vector hat;  // on block i
  };
  std::vector<PairView> pairs;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (rep.projection.P(i, j) <= 0.0) continue;
      pairs.push_back({i, j, hat_distribution(chain, part, i, j).weights()});
    }
  }
  {
    double worst = 0.0;
    for (const auto& pv : pairs) {
      worst = std::max(worst, std::abs(pv.hat.sum() - 1.0));
    }
    add_check("hat_normalization", worst, kIdentityTol);
  }
  if (hat_zero) {
    double worst = 0.0;
    for (const auto& pv : pairs) {
      const BlockView& bv = views[static_cast<size_t>(pv.i)];
      for (Index u = 0; u < pv.hat.size(); ++u) {
        worst = std::max(worst, std::abs(pv.hat(u) - bv.pi_local(u)));
      }
    }
    add_check("gamma_hat_zero_implies_hat_equals_pi", worst, kIdentityTol);
  }

  // ---- identity and inequality suites over random test functions -----------
  std::mt19937_64 rng(opt.seed);
  {
    double worst4 = 0.0, worst5 = 0.0, worst25 = 0.0;
    int draws = std::max(8, opt.property_draws / 10);
    for (int k = 0; k < draws; ++k) {
      Vector f = random_test_function(chain.size(), rng);
      double var = variance(chain.stationary(), f);
      double dir = dirichlet_form(chain, f);
      double ent = lsob_entropy(chain.stationary(), f);
      worst4 = std::max(worst4, check_variance_decomposition(chain, part, f) /
                                    std::max(1.0, var));
      worst5 = std::max(worst5, check_dirichlet_decomposition(chain, part, f) /
                                    std::max(1.0, dir));
      worst25 = std::max(worst25, check_entropy_decomposition(chain, part, f) /
                                      std::max(1.0, ent));
    }
    add_check("identity_variance_decomposition", worst4, opt.tol_identity);
    add_check("identity_dirichlet_decomposition", worst5, opt.tol_identity);
    add_check("identity_entropy_decomposition", worst25, opt.tol_entropy);
  }

  if (!pairs.empty()) {
    double v12 = 0.0, v21 = 0.0, v29 = 0.0, v31 = 0.0, v38 = 0.0;
    for (int k = 0; k < opt.property_draws; ++k) {
      Vector f = random_test_function(chain.size(), rng);
      const PairView& pv = pairs[static_cast<size_t>(k) % pairs.size()];
      const BlockView& bi = views[static_cast<size_t>(pv.i)];
      const BlockView& bj = views[static_cast<size_t>(pv.j)];
      Vector fi(static_cast<Index>(bi.states.size()));
      for (size_t u = 0; u < bi.states.size(); ++u) {
        fi(static_cast<Index>(u)) = f(bi.states[u]);
      }
      Vector fj(static_cast<Index>(bj.states.size()));
      for (size_t u = 0; u < bj.states.size(); ++u) {
        fj(static_cast<Index>(u)) = f(bj.states[u]);
      }
      double mean_i = local_mean(bi.pi_local, fi);
      double mean_hat = local_mean(pv.hat, fi);
      double var_i = local_var(bi.pi_local, fi);

      // second-moment comparison against the mean of the block
      double lhs12 = (mean_hat - mean_i) * (mean_hat - mean_i);
      double rhs12 = 0.0;
      for (Index u = 0; u < fi.size(); ++u) {
        double d = fi(u) - mean_i;
        rhs12 += pv.hat(u) * d * d;
      }
      v12 = std::max(v12, lhs12 - rhs12);

      v21 = std::max(v21, lhs12 - 2.0 * q.eta * var_i);

      // cross-block Jensen bound through the joint transition distribution
      Vector hat_ji;
      for (const auto& other : pairs) {
        if (other.i == pv.j && other.j == pv.i) {
          hat_ji = other.hat;
          break;
        }
      }
      if (hat_ji.size() > 0) {
        double sq_ij = local_mean_sq(pv.hat, fi);
        double sq_ji = local_mean_sq(hat_ji, fj);
        double lhs29 = std::sqrt(sq_ij) - std::sqrt(sq_ji);
        lhs29 *= lhs29;
        double rhs29 = 0.0;
        double joint_norm = bi.pibar * rep.projection.P(pv.i, pv.j);
        for (size_t u = 0; u < bi.states.size(); ++u) {
          for (size_t v = 0; v < bj.states.size(); ++v) {
            double w = chain.pi(bi.states[u]) * chain.P(bi.states[u], bj.states[v]);
            if (w == 0.0) continue;
            double d = fi(static_cast<Index>(u)) - fj(static_cast<Index>(v));
            rhs29 += w / joint_norm * d * d;
          }
        }
        v29 = std::max(v29, lhs29 - rhs29);
      }

      // independent-coupling Jensen bound within the block
      double sq_i = local_mean_sq(bi.pi_local, fi);
      double sq_hat = local_mean_sq(pv.hat, fi);
      double lhs31 = std::sqrt(sq_i) - std::sqrt(sq_hat);
      lhs31 *= lhs31;
      double rhs31 = 0.0;
      for (Index u = 0; u < fi.size(); ++u) {
        for (Index v = 0; v < fi.size(); ++v) {
          double w = bi.pi_local(u) * pv.hat(v);
          if (w == 0.0) continue;
          double d = fi(u) - fi(v);
          rhs31 += w * d * d;
        }
      }
      v31 = std::max(v31, lhs31 - rhs31);

      v38 = std::max(v38, lhs31 - 2.0 * q.eta * var_i);
    }
    add_check("inequality_12_hat_mean_vs_second_moment", v12, opt.tol_inequality);
    add_check("inequality_21_hat_mean_vs_eta_variance", v21, opt.tol_inequality);
    add_check("inequality_29_cross_block_jensen", v29, opt.tol_inequality);
    add_check("inequality_31_independent_coupling", v31, opt.tol_inequality);
    add_check("inequality_38_sqrt_moments_vs_eta_variance", v38, opt.tol_inequality);
  }

  // ---- soundness of every evaluated rule -----------------------------------
  for (const auto& b : poincare_rules) {
    add_check(std::string("soundness_") + rule_name(b.rule), b.value - q.gap,
              opt.tol_gap_soundness);
  }
  for (const auto& b : lsob_rules) {
    add_check(std::string("soundness_") + rule_name(b.rule), b.value - q.alpha,
              opt.tol_alpha_soundness);
  }

  auto t_end = Clock::now();

  // ---- report ---------------------------------------------------------------
  VerifyOutcome out;
  out.measured = q;
  Json j;
  j["instance"] = metadata;
  j["seed"] = opt.seed;
  j["states"] = chain.size();
  j["blocks"] = m;
  Json measured;
  measured["gap"] = q.gap;
  measured["alpha_estimate"] = q.alpha;
  measured["lambda_bar"] = q.lambda_bar;
  measured["alpha_bar"] = q.alpha_bar;
  measured["lambda_min"] = finite_or_null(q.lambda_min);
  measured["alpha_min"] = finite_or_null(q.alpha_min);
  measured["gamma"] = q.gamma;
  measured["eta"] = q.eta;
  measured["gamma_hat"] = q.gamma_hat;
  measured["min_loop"] = q.min_loop;
  measured["estimate_flags"] = Json{{"alpha_is_upper_estimate", true}};
  j["measured"] = std::move(measured);
  Json bounds = Json::object();
  for (const auto& b : poincare_rules) bounds[rule_name(b.rule)] = bound_to_json(b);
  for (const auto& b : lsob_rules) bounds[rule_name(b.rule)] = bound_to_json(b);
  j["bounds"] = std::move(bounds);
  Json rows = Json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass &= c.pass;
    rows.push_back(Json{{"name", c.name},
                        {"pass", c.pass},
                        {"residual", c.residual},
                        {"tolerance", c.tolerance}});
  }
  j["checks"] = std::move(rows);
  j["all_pass"] = all_pass;
  if (opt.timings) {
    auto ms = [](auto a, auto b) {
      return std::chrono::duration<double, std::milli>(b - a).count();
    };
    j["runtime_ms"] = Json{{"decomposition", ms(t_start, t_decomp)},
                           {"spectral", ms(t_decomp, t_spectral)},
                           {"suites", ms(t_spectral, t_end)},
                           {"total", ms(t_start, t_end)}};
  }
  out.report = std::move(j);
  out.all_pass = all_pass;
  return out;
}

}  // namespace decomp_mc
