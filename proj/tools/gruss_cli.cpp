// Command-line harness: property campaigns, single chains, sweeps, distance
// reports and zoo samples.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gruss/bounds.hpp"
#include "gruss/campaign.hpp"
#include "gruss/distance.hpp"
#include "gruss/json_io.hpp"
#include "gruss/linalg.hpp"
#include "gruss/random.hpp"
#include "gruss/zoo.hpp"

namespace {

using namespace gruss;

constexpr int kHold = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// Thrown for anything that should exit with the usage/IO code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_residual(double r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r);
  std::string s = buf;
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

ComplexMatrix load_matrix(const std::string& path) {
  try {
    return matrix_from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

DensityOperator load_state(const std::string& path,
                           const OptimizerSettings& settings) {
  const ComplexMatrix m = load_matrix(path);
  return DensityOperator(m, settings);  // invariant failures are exit 1
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  try {
    write_text_file(out_path, text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<std::size_t> dims;
  std::vector<std::string> families;
  std::optional<double> tol;
  std::string out;
  std::optional<int> threads;
  bool quiet = false;
};

int cmd_verify(const VerifyArgs& args, std::uint64_t default_seed) {
  TrialConfig cfg;
  cfg.seed = default_seed;
  if (!args.config_path.empty()) {
    try {
      const json j = read_json_file(args.config_path);
      cfg = config_from_json(j);
      if (!j.contains("seed")) cfg.seed = default_seed;
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.trials) cfg.trials = *args.trials;
  if (!args.dims.empty()) cfg.dims = args.dims;
  if (!args.families.empty()) {
    cfg.families.clear();
    for (const auto& f : args.families) {
      try {
        cfg.families.push_back(family_from_string(f));
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
  }
  if (args.tol) cfg.tolerances.chain_abs = *args.tol;
  if (!args.out.empty()) cfg.output_path = args.out;
  if (args.threads) cfg.threads = *args.threads;
  try {
    cfg.validate();
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("invalid config: ") + e.what());
  }

  const CampaignResult result = run_campaign(cfg);
  const json report = campaign_to_json(result, cfg);
  if (!cfg.output_path.empty()) {
    try {
      write_text_file(cfg.output_path, report.dump(2) + "\n");
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }
  if (!args.quiet) {
    std::printf("%-20s %8s %8s %8s %14s\n", "suite", "trials", "failures",
                "skipped", "worst_slack");
    for (const auto& s : result.suites)
      std::printf("%-20s %8ld %8ld %8ld %14.4g\n", s.suite.c_str(), s.trials,
                  s.failures, s.skipped, s.worst_slack);
    std::printf("seed %llu, %ld trials, %ld failures\n",
                static_cast<unsigned long long>(cfg.seed), result.total_trials,
                result.total_failures());
    if (cfg.output_path.empty()) std::cout << report.dump(2) << "\n";
  }
  return result.total_failures() == 0 ? kHold : kViolation;
}

// ---- chain --------------------------------------------------------------

struct ChainArgs {
  std::string a, t, p;
  std::string chain = "refined";
  double lambda = 1.0;
  double mu = 1.0;
  std::optional<double> tol;
  std::string out;
};

void print_table(const BoundChainReport& r) {
  std::printf("chain: %s\n", r.chain.c_str());
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    if (i > 0) {
      const ChainLink& l = r.links[i - 1];
      std::printf("    %s  slack %.6g  %s\n",
                  l.relation == Relation::kLessEqual ? "<=" : "==", l.slack,
                  l.holds ? "holds" : "VIOLATED");
    }
    std::printf("  %-30s %.12g\n", r.terms[i].label.c_str(), r.terms[i].value);
  }
  for (const auto& [k, v] : r.metrics) std::printf("  %s = %.12g\n", k.c_str(), v);
  std::printf("all links hold: %s\n", r.all_hold() ? "yes" : "no");
}

int cmd_chain(const ChainArgs& args, std::uint64_t seed) {
  static const std::vector<std::string> kChains = {
      "renaud", "refined", "normal", "transloid", "theorem", "normaloid"};
  if (std::find(kChains.begin(), kChains.end(), args.chain) == kChains.end())
    throw UsageError("unknown chain '" + args.chain + "'");
  OptimizerSettings settings;
  settings.seed = seed;
  const ComplexMatrix a = load_matrix(args.a);
  const ComplexMatrix t = load_matrix(args.t);
  if (a.n() != t.n()) throw UsageError("A and T have different dimensions");

  ChainTolerances tol;
  if (args.tol) tol.ineq_abs = *args.tol;
  try {
    const DensityOperator p = load_state(args.p, settings);
    if (p.matrix().n() != a.n()) throw UsageError("P has a different dimension");
    const PairContext ctx = make_pair_context(a, t, p, settings);
    BoundChainReport r;
    if (args.chain == "renaud") {
      r = renaud_chain(ctx, tol);
    } else if (args.chain == "refined") {
      r = refined_chain(ctx, tol);
    } else if (args.chain == "normal") {
      r = normal_chain(ctx, tol);
    } else if (args.chain == "transloid") {
      CounterRng rng(derive_seed(seed, 0x7a5ULL));
      std::vector<Complex> shifts(8);
      const double scale = 1.0 + ctx.a.norm + ctx.t.norm;
      for (auto& z : shifts) z = scale * rng.complex_normal();
      r = transloid_chain(ctx, shifts, tol);
    } else if (args.chain == "theorem") {
      r = renaud_k_chain(ctx, args.lambda, args.mu, tol);
    } else {
      r = normaloid_corollary_chain(ctx, args.lambda, args.mu, tol);
    }
    json j = report_to_json(r);
    j["meta"]["dims"] = a.n();
    j["meta"]["seed"] = seed;
    j["meta"]["fingerprints"] = {{"A", fingerprint(a)},
                                 {"T", fingerprint(t)},
                                 {"P", fingerprint(p.matrix())}};
    j["meta"]["timestamp"] = utc_timestamp();
    if (args.out != "-") print_table(r);
    if (!args.out.empty()) emit(args.out, j.dump(2) + "\n");
    return r.all_hold() ? kHold : kViolation;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.predicate() << " "
              << format_residual(e.residual()) << "\n";
    return kViolation;
  }
}

// ---- sweep --------------------------------------------------------------

int cmd_sweep(const std::string& a_path, const std::string& t_path, int grid,
              const std::string& out, std::uint64_t seed) {
  if (grid < 2) throw UsageError("--grid must be at least 2");
  const ComplexMatrix a = load_matrix(a_path);
  const ComplexMatrix t = load_matrix(t_path);
  if (a.n() != t.n()) throw UsageError("A and T have different dimensions");
  OptimizerSettings settings;
  settings.seed = seed;
  try {
    const std::vector<SweepRow> rows = sweep_k(a, t, grid, settings);
    emit(out, sweep_to_csv(rows));
    for (const auto& r : rows)
      if (r.slack < -1e-9 * (1.0 + r.bound)) return kViolation;
    return kHold;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.predicate() << " "
              << format_residual(e.residual()) << "\n";
    return kViolation;
  }
}

// ---- distance -----------------------------------------------------------

int cmd_distance(const std::string& path, std::optional<double> tol,
                 const std::string& out, std::uint64_t seed) {
  const ComplexMatrix a = load_matrix(path);
  OptimizerSettings settings;
  settings.seed = seed;
  if (tol) settings.tol_abs = *tol;
  try {
    settings.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const ScalarDistance d = dist_to_scalars(a, settings);
  const SphereDistance s = dist_sphere(a, settings);
  OptimizerSettings many = settings;
  many.restarts = std::max(64, settings.restarts);
  const DistCharacterizations c = dist_characterizations(a, many);
  const double norm = spectral_norm(a);
  const double agree_tol = 1e-6 * (1.0 + norm);
  const bool sphere_agrees = std::abs(s.distance - d.distance) <= agree_tol;
  const bool below = c.commutator_half_sup <= d.distance + 1e-8 &&
                     c.rank_one_proj_sup <= d.distance + 1e-8;
  const bool chars_reach = std::abs(c.commutator_half_sup - d.distance) <= 1e-4 &&
                           std::abs(c.rank_one_proj_sup - d.distance) <= 1e-4;
  json j = {{"c", complex_to_json(d.center)},
            {"d", d.distance},
            {"degenerate", d.degenerate},
            {"certificates",
             {{"lower_bound", d.lower_bound},
              {"grid_lower_bound", d.grid_lower_bound},
              {"converged", d.converged},
              {"iterations", d.iterations},
              {"sphere", s.distance},
              {"sphere_converged", s.converged},
              {"commutator_half_sup", c.commutator_half_sup},
              {"rank_one_proj_sup", c.rank_one_proj_sup},
              {"characterizations_converged", c.converged}}},
            {"agreement",
             {{"sphere", sphere_agrees},
              {"characterizations_below", below},
              {"characterizations_reach", chars_reach}}},
            {"meta", {{"dims", a.n()}, {"seed", seed}, {"fingerprint", fingerprint(a)}}}};
  emit(out, j.dump(2) + "\n");
  return sphere_agrees && below ? kHold : kViolation;
}

// ---- zoo ----------------------------------------------------------------

int cmd_zoo(const std::string& family, std::size_t dim, std::optional<std::size_t> rank,
            const std::string& fixture_name, const std::string& out,
            std::uint64_t seed) {
  ZooSpec spec;
  try {
    spec.family = family_from_string(family);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  spec.dim = dim;
  spec.seed = seed;
  spec.rank = rank;
  if (!fixture_name.empty()) spec.fixture_name = fixture_name;
  if (spec.family == Family::kDensityRankK && !spec.rank) spec.rank = 1;
  ComplexMatrix m;
  try {
    m = generate_matrix(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  emit(out, matrix_to_json(m).dump(2) + "\n");
  return kHold;
}

std::uint64_t parse_seed_env(const char* v) {
  try {
    std::size_t used = 0;
    const unsigned long long s = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return s;
  } catch (const std::exception&) {
    throw UsageError(std::string("GRUSS_SEED is not an unsigned integer: ") + v);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Numerical verification harness for Gruss-type trace inequalities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gruss 0.1.0");

  std::uint64_t default_seed = 42;
  if (const char* env = std::getenv("GRUSS_SEED")) default_seed = parse_seed_env(env);
  std::optional<std::uint64_t> seed_flag;
  auto seed_of = [&] { return seed_flag.value_or(default_seed); };

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "run every property suite");
  verify->add_option("--config", va.config_path, "JSON campaign config");
  verify->add_option("--seed", seed_flag, "master seed (default 42 or $GRUSS_SEED)");
  verify->add_option("--trials", va.trials, "trials per family");
  verify->add_option("--dims", va.dims, "dimensions, e.g. --dims 2,3,4")->delimiter(',');
  verify->add_option("--family", va.families, "restrict to these families")->delimiter(',');
  verify->add_option("--tol", va.tol, "absolute slack allowed on inequality links");
  verify->add_option("--out", va.out, "write the JSON summary here");
  verify->add_option("--threads", va.threads, "worker threads (0 = all cores)");
  verify->add_flag("--quiet", va.quiet, "suppress the summary table");

  ChainArgs ca;
  CLI::App* chain = app.add_subcommand("chain", "evaluate one inequality chain");
  chain->add_option("A", ca.a, "matrix JSON for A")->required();
  chain->add_option("T", ca.t, "matrix JSON for T")->required();
  chain->add_option("P", ca.p, "matrix JSON for the state P")->required();
  chain->add_option("--chain", ca.chain,
                    "renaud | refined | normal | transloid | theorem | normaloid");
  chain->add_option("--lambda", ca.lambda, "lambda in [0, 1]");
  chain->add_option("--mu", ca.mu, "mu in [0, 1]");
  chain->add_option("--tol", ca.tol, "absolute slack allowed on inequality links");
  chain->add_option("--seed", seed_flag, "optimizer seed");
  chain->add_option("--out", ca.out, "write the JSON report here ('-' for stdout)");

  std::string sa, st, sout;
  int grid = 11;
  CLI::App* sweep = app.add_subcommand("sweep", "k(A, T) over a (lambda, mu) grid as CSV");
  sweep->add_option("A", sa, "matrix JSON for A")->required();
  sweep->add_option("T", st, "matrix JSON for T")->required();
  sweep->add_option("--grid", grid, "points per axis (>= 2)");
  sweep->add_option("--seed", seed_flag, "optimizer seed");
  sweep->add_option("--out", sout, "CSV path (default stdout)");

  std::string dpath, dout;
  std::optional<double> dtol;
  CLI::App* distance = app.add_subcommand("distance", "distance to scalar multiples of Id");
  distance->add_option("A", dpath, "matrix JSON")->required();
  distance->add_option("--tol", dtol, "absolute optimizer tolerance");
  distance->add_option("--seed", seed_flag, "optimizer seed");
  distance->add_option("--out", dout, "JSON path (default stdout)");

  std::string zfamily = "ginibre", zfixture, zout;
  std::size_t zdim = 2;
  std::optional<std::size_t> zrank;
  CLI::App* zoo = app.add_subcommand("zoo", "emit a sample matrix as JSON");
  zoo->add_option("--family", zfamily, "matrix family");
  zoo->add_option("--dims", zdim, "dimension");
  zoo->add_option("--rank", zrank, "rank for density_rank_k");
  zoo->add_option("--fixture", zfixture, "fixture name for --family fixture");
  zoo->add_option("--seed", seed_flag, "generator seed");
  zoo->add_option("--out", zout, "JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*verify) return cmd_verify(va, seed_of());
  if (*chain) return cmd_chain(ca, seed_of());
  if (*sweep) return cmd_sweep(sa, st, grid, sout, seed_of());
  if (*distance) return cmd_distance(dpath, dtol, dout, seed_of());
  return cmd_zoo(zfamily, zdim, zrank, zfixture, zout, seed_of());
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const gruss::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.predicate() << " "
              << format_residual(e.residual()) << "\n";
    return kViolation;
  } catch (const gruss::ConvergenceError& e) {
    std::cerr << "optimizer failed: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
