// decomp-mc: generators, exact oracles, decomposition reports, bound
// evaluation and verification for finite reversible Markov chains.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "decomp_mc/json_io.hpp"
#include "decomp_mc/random_instances.hpp"
#include "decomp_mc/verify.hpp"

namespace dm = decomp_mc;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DECOMP_MC_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw dm::Error(dm::Errc::bad_input, "DECOMP_MC_SEED is not an integer");
    }
  }
  return 0;
}

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

void emit(const dm::Json& j, const OutputOptions& opt) {
  std::string text = opt.format == "csv" ? dm::flatten_csv(j) : dm::dump_json(j);
  if (opt.out_path.empty()) {
    std::cout << text;
  } else if (opt.format == "csv") {
    std::ofstream f(opt.out_path);
    if (!f) throw dm::Error(dm::Errc::bad_input, "cannot write " + opt.out_path);
    f << text;
  } else {
    dm::write_json_file(opt.out_path, j);
  }
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& spec) {
  // "K4", "C5" or an explicit "0-1,1-2,2-0" list
  std::vector<std::pair<int, int>> edges;
  if ((spec[0] == 'K' || spec[0] == 'C') && spec.size() <= 3) {
    int n = std::stoi(spec.substr(1));
    if (n < 3 || n > 12) {
      throw dm::Error(dm::Errc::bad_input, "named graphs support 3..12 vertices");
    }
    if (spec[0] == 'K') {
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) edges.push_back({a, b});
      }
    } else {
      for (int a = 0; a < n; ++a) edges.push_back({a, (a + 1) % n});
    }
    return edges;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) {
      throw dm::Error(dm::Errc::bad_input, "edge must look like u-v: " + item);
    }
    edges.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
  }
  if (edges.empty()) throw dm::Error(dm::Errc::bad_input, "empty edge list");
  return edges;
}

int find_edge(const std::vector<std::pair<int, int>>& edges, const std::string& spec) {
  auto dash = spec.find('-');
  if (dash == std::string::npos) return std::stoi(spec);
  int u = std::stoi(spec.substr(0, dash));
  int v = std::stoi(spec.substr(dash + 1));
  for (size_t i = 0; i < edges.size(); ++i) {
    if ((edges[i].first == u && edges[i].second == v) ||
        (edges[i].first == v && edges[i].second == u)) {
      return static_cast<int>(i);
    }
  }
  throw dm::Error(dm::Errc::bad_input, "edge " + spec + " not in the edge list");
}

void emit_instance(const dm::ZooInstance& inst, const OutputOptions& out,
                   const std::string& chain_out, const std::string& partition_out) {
  if (!chain_out.empty()) dm::write_json_file(chain_out, dm::chain_to_json(inst.chain));
  if (!partition_out.empty()) {
    dm::write_json_file(partition_out, dm::partition_to_json(inst.canonical_partition));
  }
  if (chain_out.empty() && partition_out.empty()) {
    emit(dm::zoo_instance_to_json(inst), out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decomposition bounds toolkit for finite reversible Markov chains"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputOptions out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--format", out.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out.out_path, "write output to a file instead of stdout");
  app.add_option("--seed", seed, "seed for every randomized component")
      ->each([&seed_set](const std::string&) { seed_set = true; });

  // ---- zoo -----------------------------------------------------------------
  auto* zoo = app.add_subcommand("zoo", "generate a worked-example chain + partition");
  zoo->require_subcommand(1);
  zoo->fallthrough();
  std::string chain_out, partition_out;
  zoo->add_option("--chain-out", chain_out, "write the chain JSON here");
  zoo->add_option("--partition-out", partition_out, "write the partition JSON here");

  auto* pn = zoo->add_subcommand("pince-nez", "two n-cycles joined by one bridge");
  int pn_n = 8;
  double pn_p = 1.0 / 3.0;
  pn->add_option("--n", pn_n)->required();
  pn->add_option("--p", pn_p)->required();

  auto* prod = zoo->add_subcommand("product", "product of two chain files");
  std::string prod_a, prod_b;
  prod->add_option("--chain-a", prod_a)->required();
  prod->add_option("--chain-b", prod_b)->required();

  auto* ising = zoo->add_subcommand("ising-path", "heat-bath Ising chain on a path");
  int ising_n = 3;
  double ising_beta = 0.0;
  ising->add_option("--n", ising_n)->required();
  ising->add_option("--beta", ising_beta)->required();

  auto* cube = zoo->add_subcommand("cube", "walk on the Boolean cube");
  int cube_n = 3;
  cube->add_option("--n", cube_n)->required();

  auto* matroid = zoo->add_subcommand("matroid", "bases-exchange walk on spanning trees");
  std::string matroid_graph, matroid_e = "0";
  matroid->add_option("--graph", matroid_graph, "K4, C5, or an edge list 0-1,1-2,...")
      ->required();
  matroid->add_option("--e", matroid_e, "distinguished edge (index or u-v)");

  auto* hardcore = zoo->add_subcommand("hardcore", "Glauber dynamics on tree independent sets");
  int hc_delta = 2, hc_d = 2;
  double hc_lambda = 1.0, hc_N = -1.0;
  hardcore->add_option("--delta", hc_delta)->required();
  hardcore->add_option("--d", hc_d)->required();
  hardcore->add_option("--lambda", hc_lambda)->required();
  hardcore->add_option("--N", hc_N, "clock parameter (default |T_d|)");

  auto* rnd = zoo->add_subcommand("random", "random reversible chain + partition");
  int rnd_n = 20, rnd_blocks = 3;
  rnd->add_option("--n", rnd_n)->required();
  rnd->add_option("--blocks", rnd_blocks);

  // ---- exact ---------------------------------------------------------------
  auto* exact = app.add_subcommand("exact", "spectral gap and log-Sobolev certificates");
  std::string exact_chain;
  int exact_starts = 32;
  exact->add_option("--chain", exact_chain)->required();
  exact->add_option("--starts", exact_starts, "random multistarts for the optimizer");

  // ---- decompose -------------------------------------------------------------
  auto* decompose = app.add_subcommand("decompose", "projection/restriction report");
  std::string dec_chain, dec_partition;
  decompose->add_option("--chain", dec_chain)->required();
  decompose->add_option("--partition", dec_partition)->required();

  // ---- bound -----------------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "evaluate a decomposition rule");
  std::string bound_rule;
  double bound_bar = 0.0, bound_min = 0.0, bound_gamma = 0.0;
  bound->add_option("--rule", bound_rule, "thm1|cor2|cor3|thm4|cor5|cor6")->required();
  bound->add_option("--bar", bound_bar, "projection constant")->required();
  bound->add_option("--min", bound_min, "worst restriction constant")->required();
  bound->add_option("--gamma", bound_gamma, "gamma (thm1/thm4) or gamma_hat (cor2/cor5)");

  // ---- verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "bind bounds to oracles; exit 0 iff all pass");
  std::string ver_chain, ver_partition;
  dm::VerifyOptions vopt;
  verify->add_option("--chain", ver_chain)->required();
  verify->add_option("--partition", ver_partition)->required();
  verify->add_option("--starts", vopt.lsob_starts);
  verify->add_option("--draws", vopt.property_draws);
  verify->add_flag("--timings", vopt.timings, "include runtime stats in the report");
  verify->add_option("--tol-identity", vopt.tol_identity);
  verify->add_option("--tol-entropy", vopt.tol_entropy);
  verify->add_option("--tol-inequality", vopt.tol_inequality);
  verify->add_option("--tol-gap-soundness", vopt.tol_gap_soundness);
  verify->add_option("--tol-alpha-soundness", vopt.tol_alpha_soundness);
  verify->add_option("--tol-alpha-half-gap", vopt.tol_alpha_half_gap);

  // ---- recurse ---------------------------------------------------------------
  auto* recurse = app.add_subcommand("recurse", "inductive bound traces");
  std::string rec_family;
  double rec_beta = 0.0, rec_lambda = 1.0, rec_N = -1.0;
  int rec_n = 16, rec_delta = 2, rec_d = 2, rec_depth_cap = 64;
  recurse->add_option("--family", rec_family, "ising or hardcore")->required();
  recurse->add_option("--beta", rec_beta);
  recurse->add_option("--n", rec_n);
  recurse->add_option("--depth-cap", rec_depth_cap);
  recurse->add_option("--delta", rec_delta);
  recurse->add_option("--d", rec_d);
  recurse->add_option("--lambda", rec_lambda);
  recurse->add_option("--N", rec_N);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!seed_set) seed = default_seed();

    if (zoo->parsed()) {
      std::optional<dm::ZooInstance> inst;
      if (pn->parsed()) {
        inst = dm::pince_nez(pn_n, pn_p);
      } else if (prod->parsed()) {
        dm::ReversibleChain a = dm::chain_from_json(dm::load_json_file(prod_a));
        dm::ReversibleChain b = dm::chain_from_json(dm::load_json_file(prod_b));
        inst = dm::product_chain(a, b);
      } else if (ising->parsed()) {
        inst = dm::ising_path(ising_n, ising_beta);
      } else if (cube->parsed()) {
        inst = dm::boolean_cube(cube_n);
      } else if (matroid->parsed()) {
        auto edges = parse_edge_list(matroid_graph);
        inst = dm::graphic_matroid_walk(edges, find_edge(edges, matroid_e));
      } else if (hardcore->parsed()) {
        double N = hc_N > 0 ? hc_N : dm::tree_size(hc_delta, hc_d);
        inst = dm::hardcore_tree(hc_delta, hc_d, hc_lambda, N);
      } else if (rnd->parsed()) {
        std::mt19937_64 rng(seed);
        dm::ReversibleChain chain = dm::random_reversible_chain(rnd_n, rng);
        dm::Partition part = dm::random_partition(chain, rnd_blocks, rng);
        dm::ZooInstance r{std::move(chain), std::move(part), {}};
        r.metadata.name = "random";
        r.metadata.params = {{"n", double(rnd_n)},
                             {"blocks", double(rnd_blocks)},
                             {"seed", double(seed)}};
        inst = std::move(r);
      } else {
        throw dm::Error(dm::Errc::bad_input, "unknown generator");
      }
      emit_instance(*inst, out, chain_out, partition_out);
      return 0;
    }

    if (exact->parsed()) {
      dm::ReversibleChain chain = dm::chain_from_json(dm::load_json_file(exact_chain));
      dm::Json j;
      j["spectral"] = dm::spectral_certificate_to_json(dm::spectral_gap(chain));
      j["lsob"] = dm::lsob_certificate_to_json(
          dm::log_sobolev_constant(chain, exact_starts, seed));
      emit(j, out);
      return 0;
    }

    if (decompose->parsed()) {
      dm::ReversibleChain chain = dm::chain_from_json(dm::load_json_file(dec_chain));
      dm::Partition part = dm::partition_from_json(dm::load_json_file(dec_partition));
      emit(dm::decomposition_to_json(dm::build_decomposition(chain, part)), out);
      return 0;
    }

    if (bound->parsed()) {
      dm::Rule rule = dm::rule_from_name(bound_rule);
      dm::BoundResult res =
          (rule == dm::Rule::thm1 || rule == dm::Rule::cor2 || rule == dm::Rule::cor3)
              ? dm::poincare_bound(rule, bound_bar, bound_min, bound_gamma)
              : dm::lsob_bound(rule, bound_bar, bound_min, bound_gamma);
      emit(dm::bound_to_json(res), out);
      return 0;
    }

    if (verify->parsed()) {
      dm::ReversibleChain chain = dm::chain_from_json(dm::load_json_file(ver_chain));
      dm::Partition part = dm::partition_from_json(dm::load_json_file(ver_partition));
      vopt.seed = seed;
      dm::Json meta{{"chain_file", ver_chain}, {"partition_file", ver_partition}};
      dm::VerifyOutcome res = dm::verify_instance(chain, part, vopt, meta);
      emit(res.report, out);
      return res.all_pass ? 0 : 1;
    }

    if (recurse->parsed()) {
      dm::Json j;
      if (rec_family == "ising") {
        dm::IsingRecursionResult res = dm::ising_recursion(rec_beta, rec_n, rec_depth_cap);
        j["family"] = "ising";
        j["beta"] = rec_beta;
        j["n"] = rec_n;
        j["bound"] = res.bound;
        j["exponent"] = res.exponent;
        j["projection_cap"] = res.projection_cap;
        j["contraction"] = res.contraction;
        dm::Json levels = dm::Json::array();
        for (const auto& lv : res.levels) {
          levels.push_back(dm::Json{{"k", lv.k},
                                    {"value", lv.value},
                                    {"base", lv.base},
                                    {"capped_by_projection", lv.capped}});
        }
        j["levels"] = std::move(levels);
        // brute-force cross-check at the deepest level that stays desk-scale
        int check_k = 0;
        for (const auto& lv : res.levels) {
          if (lv.k <= 12 && lv.k > check_k) check_k = lv.k;
        }
        double exact = double(check_k) / double(rec_n) *
                       dm::spectral_gap(dm::ising_segment(check_k, rec_beta, +1, +1, check_k)).gap;
        double bound_at_k = 0.0;
        for (const auto& lv : res.levels) {
          if (lv.k == check_k) bound_at_k = lv.value;
        }
        j["cross_check"] = dm::Json{{"k", check_k},
                                    {"exact_gap", exact},
                                    {"bound", bound_at_k},
                                    {"sound", bound_at_k <= exact + 1e-12}};
      } else if (rec_family == "hardcore") {
        double N = rec_N > 0 ? rec_N : dm::tree_size(rec_delta, rec_d);
        dm::HardcoreRecursionResult res =
            dm::hardcore_recursion(rec_delta, rec_d, rec_lambda, N);
        j["family"] = "hardcore";
        j["delta"] = rec_delta;
        j["d"] = rec_d;
        j["lambda"] = rec_lambda;
        j["N"] = N;
        j["bound"] = res.bound;
        j["exponent"] = res.exponent;
        j["alpha_hat_lower_bound"] = res.alpha_hat;
        j["g_delta"] = res.g;
        dm::Json levels = dm::Json::array();
        for (const auto& lv : res.levels) {
          levels.push_back(dm::Json{{"d", lv.depth},
                                    {"value", lv.value},
                                    {"base", lv.base},
                                    {"binding", lv.binding}});
        }
        j["levels"] = std::move(levels);
        int check_d = -1;
        for (int dd = 0; dd <= rec_d; ++dd) {
          if (dm::tree_size(rec_delta, dd) <= 13) check_d = dd;
        }
        if (check_d >= 0) {
          dm::ZooInstance inst = dm::hardcore_tree(rec_delta, check_d, rec_lambda, N);
          double exact = dm::log_sobolev_constant(inst.chain, 32, seed).alpha_estimate;
          double bound_at_d = 0.0;
          for (const auto& lv : res.levels) {
            if (lv.depth == check_d) bound_at_d = lv.value;
          }
          j["cross_check"] = dm::Json{{"d", check_d},
                                      {"numeric_alpha", exact},
                                      {"bound", bound_at_d},
                                      {"sound", bound_at_d <= exact + 1e-6}};
        }
      } else {
        throw dm::Error(dm::Errc::bad_input, "family must be ising or hardcore");
      }
      emit(j, out);
      return 0;
    }

    throw dm::Error(dm::Errc::bad_input, "no subcommand given");
  } catch (const dm::Error& e) {
    std::cerr << "error [" << dm::errc_name(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
