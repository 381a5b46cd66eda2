#include "gruss/campaign.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <optional>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <thread>

#include "gruss/bounds.hpp"
#include "gruss/json_io.hpp"
#include "gruss/linalg.hpp"
#include "gruss/random.hpp"
#include "gruss/variance.hpp"

namespace gruss {

namespace {

constexpr int kGrid = 11;
constexpr std::size_t kMaxRecords = 50;

enum SuiteId {
  kRenaud,
  kRefined,
  kNormal,
  kTransloid,
  kTheorem,
  kNormaloid,
  kDragomir,
  kIdentities,
  kPrasanna,
  kCharacterizations,
  kKantorovich,
  kFixtures,
  kSuiteCount
};

const std::vector<Family> kGenerated = {
    Family::kGinibre,      Family::kHermitian,     Family::kHaarUnitary,
    Family::kNormal,       Family::kDensityFull,   Family::kDensityRankK,
    Family::kRankOneState, Family::kJordan,        Family::kHermitianPd};

const std::vector<Family> kStates = {Family::kDensityFull, Family::kDensityRankK,
                                     Family::kRankOneState};

// Outcome of one suite on one trial.
struct SuiteAcc {
  bool evaluated = false;
  bool skipped = false;
  bool failed = false;
  double worst = std::numeric_limits<double>::infinity();
  double fail_slack = 0.0;
  std::string detail;

  // Holds iff slack >= -tol.
  void check(double slack, double tol, const std::string& what) {
    evaluated = true;
    if (!std::isfinite(slack)) slack = -std::numeric_limits<double>::infinity();
    worst = std::min(worst, slack);
    if (slack < -tol && !failed) {
      failed = true;
      fail_slack = slack;
      detail = what;
    }
  }

  void chain(const BoundChainReport& r, const std::string& where) {
    for (std::size_t i = 0; i < r.links.size(); ++i)
      check(r.links[i].slack, r.links[i].tolerance,
            r.chain + " link " + std::to_string(i) + " (" + r.terms[i].label +
                " -> " + r.terms[i + 1].label + ")" + where);
  }

  void error(const std::string& what) {
    evaluated = true;
    if (!failed) {
      failed = true;
      fail_slack = -std::numeric_limits<double>::infinity();
      detail = what;
    }
  }
};

using TrialOutcome = std::array<SuiteAcc, kSuiteCount>;

std::string grid_point(double l, double m) {
  return " at lambda=" + std::to_string(l) + ", mu=" + std::to_string(m);
}

OptimizerSettings trial_settings(const TrialSpecs& s) {
  OptimizerSettings o;
  o.seed = s.seed;
  return o;
}

template <class F>
void guarded(SuiteAcc& acc, F&& body) {
  try {
    body();
  } catch (const PreconditionError& e) {
    acc.error(std::string("precondition: ") + e.what());
  } catch (const std::exception& e) {
    acc.error(e.what());
  }
}

void run_theorem(TrialOutcome& out, const PairContext& ctx,
                 const ChainTolerances& ctol, const SuiteTolerances& tol) {
  SuiteAcc& acc = out[kTheorem];
  if (ctx.a.dist.degenerate || ctx.t.dist.degenerate) {
    acc.skipped = true;
    return;
  }
  guarded(acc, [&] {
    for (int i = 0; i < kGrid; ++i) {
      const double l = i / double(kGrid - 1);
      const double ha = h_factor(ctx.a, l);
      acc.check(std::min(ha - 1.0, 2.0 - ha), tol.h_range,
                "h_lambda(A) outside [1, 2] at lambda=" + std::to_string(l));
      const double ht = h_factor(ctx.t, l);
      acc.check(std::min(ht - 1.0, 2.0 - ht), tol.h_range,
                "h_mu(T) outside [1, 2] at mu=" + std::to_string(l));
    }
    for (int i = 0; i < kGrid; ++i)
      for (int j = 0; j < kGrid; ++j) {
        const double l = i / double(kGrid - 1), m = j / double(kGrid - 1);
        const BoundChainReport r = renaud_k_chain(ctx, l, m, ctol);
        acc.chain(r, grid_point(l, m));
        const double k = r.metric("k");
        acc.check(std::min(k - 1.0, 4.0 - k), tol.h_range,
                  "k outside [1, 4]" + grid_point(l, m));
        if (i == 0 && j == 0) {
          const double renaud =
              4.0 * ctx.a.range_disc.radius * ctx.t.range_disc.radius;
          acc.check(-std::abs(r.terms.back().value - renaud), tol.k_anchor,
                    "bound at (0, 0) differs from 4 R_A R_T");
        }
      }
  });
}

void run_pair_suites(TrialOutcome& out, const TrialSpecs& specs,
                     const ComplexMatrix& a, const ComplexMatrix& t,
                     const DensityOperator& p, const TrialConfig& cfg,
                     int index) {
  const SuiteTolerances& tol = cfg.tolerances;
  const OptimizerSettings settings = trial_settings(specs);
  ChainTolerances ctol;
  ctol.ineq_abs = tol.chain_abs;
  ctol.ineq_rel = tol.chain_rel;
  ctol.eq = tol.normal_eq;
  ctol.normaloid = tol.normaloid;
  CounterRng rng(derive_seed(specs.seed, 0x5157ULL));

  std::optional<PairContext> built;
  try {
    built.emplace(make_pair_context(a, t, p, settings));
  } catch (const std::exception& e) {
    for (int s = 0; s < kFixtures; ++s) out[s].error(std::string("context: ") + e.what());
    return;
  }
  const PairContext& ctx = *built;
  const double vp = std::abs(ctx.vp);

  guarded(out[kRenaud], [&] {
    out[kRenaud].check(4.0 * ctx.a.range_disc.radius * ctx.t.range_disc.radius - vp,
                       tol.chain_abs, "|V_P| > 4 R_A R_T");
  });

  guarded(out[kRefined], [&] { out[kRefined].chain(refined_chain(ctx, ctol), ""); });

  // Normal, transloid and normaloid chains apply only to normal pairs.
  bool normal_pair = true;
  try {
    const BoundChainReport r = normal_chain(ctx, ctol);
    out[kNormal].chain(r, "");
    const double rr = ctx.a.spectral_disc.radius * ctx.t.spectral_disc.radius;
    out[kNormal].check(rr - vp, tol.normal_abs, "|V_P| > r_A r_T");
    out[kNormal].check(
        -std::abs(ctx.a.dist.distance * ctx.t.dist.distance - rr), tol.normal_eq,
        "dist(A) dist(T) != r_A r_T");
  } catch (const PreconditionError&) {
    normal_pair = false;
    out[kNormal].skipped = true;
  } catch (const std::exception& e) {
    out[kNormal].error(e.what());
  }

  if (normal_pair) {
    guarded(out[kTransloid], [&] {
      const double scale = 1.0 + ctx.a.norm + ctx.t.norm;
      std::vector<Complex> shifts(4);
      for (auto& z : shifts) z = scale * rng.complex_normal();
      out[kTransloid].chain(transloid_chain(ctx, shifts, ctol), "");
    });
    guarded(out[kNormaloid], [&] {
      const auto reports = normaloid_corollary_sweep(ctx, kGrid, ctol);
      for (const auto& r : reports)
        out[kNormaloid].chain(r, grid_point(r.metric("lambda"), r.metric("mu")));
    });
  } else {
    out[kTransloid].skipped = true;
    out[kNormaloid].skipped = true;
  }

  run_theorem(out, ctx, ctol, tol);

  guarded(out[kDragomir], [&] {
    const Complex l = (1.0 + ctx.a.norm) * rng.complex_normal();
    const Complex m = (1.0 + ctx.t.norm) * rng.complex_normal();
    const DragomirBound d = dragomir_bound(a, t, p, l, m);
    out[kDragomir].check(d.middle - vp, tol.chain_abs, "|V_P| > middle bound");
    out[kDragomir].check(d.outer - d.middle, tol.chain_abs, "middle > outer bound");
  });

  guarded(out[kIdentities], [&] {
    const VarianceIdentities v = variance_identities(a, p);
    const double var = variance(a, p);
    SuiteAcc& acc = out[kIdentities];
    acc.check(-std::abs(v.v1 - var), tol.identity, "v1 != variance");
    acc.check(-std::abs(v.v2 - var), tol.identity, "v2 != variance");
    acc.check(-std::abs(v.v3 - var), tol.identity, "v3 != variance");
    const double d = ctx.a.dist.distance;
    acc.check(d * d - v.v3, tol.dist_sq, "v3 > dist^2");
  });

  guarded(out[kPrasanna], [&] {
    SuiteAcc& acc = out[kPrasanna];
    const AudenaertMax m = audenaert_max(a, settings);
    if (!m.converged) {
      acc.error("rank-one variance ascent did not converge");
      return;
    }
    const double gap = std::abs(ctx.a.dist.distance - std::sqrt(m.value));
    acc.check(-gap, tol.prasanna_rel * (1.0 + ctx.a.norm),
              "dist != sqrt(max rank-one variance)");
    if (!ctx.a.dist.converged) acc.error("scalar distance did not converge");
    ZooSpec full;
    full.family = Family::kDensityFull;
    full.dim = a.n();
    full.seed = derive_seed(specs.seed, 0xf011ULL);
    acc.check(m.value - variance(a, generate_state(full)), tol.state_excess,
              "full-rank state exceeds the rank-one max");
    acc.check(m.value - variance(a, p), tol.state_excess,
              "trial state exceeds the rank-one max");
  });

  if (a.n() <= 4 && cfg.characterization_stride > 0 &&
      index % cfg.characterization_stride == 0) {
    guarded(out[kCharacterizations], [&] {
      SuiteAcc& acc = out[kCharacterizations];
      OptimizerSettings s = settings;
      s.restarts = cfg.characterization_restarts;
      const DistCharacterizations c = dist_characterizations(a, s);
      const double d = ctx.a.dist.distance;
      acc.check(d - c.commutator_half_sup, 1e-8, "commutator value above dist");
      acc.check(d - c.rank_one_proj_sup, 1e-8, "projection value above dist");
      acc.check(-std::abs(d - c.commutator_half_sup), tol.characterization,
                "commutator value misses dist");
      acc.check(-std::abs(d - c.rank_one_proj_sup), tol.characterization,
                "projection value misses dist");
    });
  } else {
    out[kCharacterizations].skipped = true;
  }

  if (specs.a.family == Family::kHermitianPd ||
      (specs.a.family == Family::kFixture && specs.a.fixture_name == "kantorovich_tight")) {
    guarded(out[kKantorovich], [&] {
      const CVector x = specs.a.family == Family::kFixture
                            ? *fixture("kantorovich_tight").vector
                            : rng.unit_vector(a.n());
      const KantorovichCheck k = kantorovich_check(a, x);
      out[kKantorovich].check(k.rhs - k.lhs, tol.chain_abs,
                              "Kantorovich lhs above r_A r_{A^-1}");
    });
  } else {
    out[kKantorovich].skipped = true;
  }
}

TrialOutcome run_trial(const TrialConfig& cfg, const TrialSpecs& specs, int index) {
  TrialOutcome out;
  out[kFixtures].skipped = true;
  try {
    const ComplexMatrix a = generate_matrix(specs.a);
    const ComplexMatrix t = generate_matrix(specs.t);
    const DensityOperator p = generate_state(specs.p);
    run_pair_suites(out, specs, a, t, p, cfg, index);
  } catch (const std::exception& e) {
    for (int s = 0; s < kFixtures; ++s) out[s].error(std::string("generation: ") + e.what());
  }
  return out;
}

// Closed-form anchors, evaluated once per campaign.
SuiteAcc run_fixture_anchors(const TrialConfig& cfg) {
  SuiteAcc acc;
  OptimizerSettings s;
  s.seed = cfg.seed;
  guarded(acc, [&] {
    const ScalarDistance d13 = dist_to_scalars(fixture("diag13").matrix, s);
    acc.check(-std::abs(d13.center - Complex(2.0)), 1e-8, "c(diag(1,3)) != 2");
    acc.check(-std::abs(d13.distance - 1.0), 1e-8, "dist(diag(1,3)) != 1");

    const ComplexMatrix& j2 = fixture("jordan2").matrix;
    const OperatorProfile pj = profile_operator(j2, s);
    acc.check(-std::abs(pj.dist.distance - 1.0), 1e-4, "dist(J2) != 1");
    acc.check(-std::abs(numerical_radius(j2, s) - 0.5), 1e-4, "w(J2) != 0.5");
    acc.check(-std::abs(h_factor(pj, 1.0) - 2.0), 1e-4, "h_1(J2) != 2");

    const Fixture& k = fixture("kantorovich_tight");
    const KantorovichCheck kc = kantorovich_check(k.matrix, *k.vector);
    acc.check(-std::abs(kc.lhs - 0.5625), 1e-10, "Kantorovich lhs != 0.5625");
    acc.check(-std::abs(kc.rhs - 0.5625), 1e-10, "Kantorovich rhs != 0.5625");
  });
  return acc;
}

template <class Task>
void parallel_for(std::size_t count, int threads, Task&& task) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, threads));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  if (workers == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
}

double number_or_throw(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ParseError("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("'" + key + "' must be finite");
  return x;
}

}  // namespace

#define GRUSS_TOLERANCE_FIELDS(X)                                          \
  X(chain_abs) X(chain_rel) X(normal_abs) X(normal_eq) X(identity)         \
  X(dist_sq) X(prasanna_rel) X(state_excess) X(characterization)           \
  X(h_range) X(k_anchor) X(normaloid)

void SuiteTolerances::apply(const nlohmann::json& overrides) {
  if (!overrides.is_object()) throw ParseError("'tolerances' must be an object");
  for (const auto& [key, value] : overrides.items()) {
    const double v = number_or_throw(value, key);
    if (v < 0.0) throw ParseError("tolerance '" + key + "' must be non-negative");
    bool known = false;
#define X(name)          \
  if (key == #name) {    \
    name = v;            \
    known = true;        \
  }
    GRUSS_TOLERANCE_FIELDS(X)
#undef X
    if (!known) throw ParseError("unknown tolerance '" + key + "'");
  }
}

nlohmann::json SuiteTolerances::to_json() const {
  nlohmann::json j = nlohmann::json::object();
#define X(name) j[#name] = name;
  GRUSS_TOLERANCE_FIELDS(X)
#undef X
  return j;
}

void TrialConfig::validate() const {
  if (trials < 1) throw PreconditionError("trials must be at least 1", trials);
  if (dims.empty()) throw PreconditionError("dims must not be empty", 0.0);
  for (std::size_t d : dims)
    if (d < 2 || d > 64)
      throw PreconditionError("every dimension must lie in [2, 64]", double(d));
  if (characterization_restarts < 1)
    throw PreconditionError("characterization_restarts must be positive",
                            characterization_restarts);
  if (characterization_stride < 0)
    throw PreconditionError("characterization_stride must be non-negative",
                            characterization_stride);
  if (threads < 0) throw PreconditionError("threads must be non-negative", threads);
}

std::vector<Family> TrialConfig::effective_families() const {
  if (families.empty()) {
    std::vector<Family> all = kGenerated;
    all.push_back(Family::kFixture);
    return all;
  }
  return families;
}

TrialConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  TrialConfig c;
  static const std::vector<std::string> known = {
      "dims", "trials", "families", "seed", "tolerances", "output_path",
      "threads", "characterization_stride", "characterization_restarts"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown config key '" + key + "'");
  try {
    if (j.contains("dims")) {
      if (!j["dims"].is_array()) throw ParseError("'dims' must be an array");
      c.dims.clear();
      for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<long long>() < 0)
          throw ParseError("'dims' entries must be non-negative integers");
        c.dims.push_back(d.get<std::size_t>());
      }
    }
    if (j.contains("trials")) {
      if (!j["trials"].is_number_integer()) throw ParseError("'trials' must be an integer");
      c.trials = j["trials"].get<int>();
    }
    if (j.contains("families")) {
      if (!j["families"].is_array()) throw ParseError("'families' must be an array");
      for (const auto& f : j["families"]) {
        if (!f.is_string()) throw ParseError("'families' entries must be strings");
        try {
          c.families.push_back(family_from_string(f.get<std::string>()));
        } catch (const Error& e) {
          throw ParseError(e.what());
        }
      }
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw ParseError("'seed' must be a non-negative integer");
      c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerances")) c.tolerances.apply(j["tolerances"]);
    if (j.contains("output_path")) {
      if (!j["output_path"].is_string()) throw ParseError("'output_path' must be a string");
      c.output_path = j["output_path"].get<std::string>();
    }
    for (const char* key : {"threads", "characterization_stride", "characterization_restarts"}) {
      if (!j.contains(key)) continue;
      if (!j[key].is_number_integer())
        throw ParseError(std::string("'") + key + "' must be an integer");
      const int v = j[key].get<int>();
      if (std::string(key) == "threads") c.threads = v;
      else if (std::string(key) == "characterization_stride") c.characterization_stride = v;
      else c.characterization_restarts = v;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

TrialSpecs trial_specs(const TrialConfig& config, Family family, int index) {
  const std::uint64_t base =
      derive_seed(derive_seed(config.seed, static_cast<std::uint64_t>(family) + 1),
                  static_cast<std::uint64_t>(index));
  TrialSpecs s;
  s.seed = derive_seed(base, 4);
  std::size_t dim = config.dims[static_cast<std::size_t>(index) % config.dims.size()];

  s.a.family = family;
  s.a.seed = derive_seed(base, 1);
  if (family == Family::kFixture) {
    const auto& all = fixtures();
    const Fixture& f = all[static_cast<std::size_t>(index) % all.size()];
    s.a.fixture_name = f.name;
    dim = f.matrix.n();
  }
  s.a.dim = dim;
  if (family == Family::kDensityRankK) s.a.rank = 1 + static_cast<std::size_t>(index) % dim;
  if (family == Family::kJordan) {
    CounterRng rng(derive_seed(base, 5));
    s.a.eigenvalue = rng.complex_normal();
    // Alternate exact blocks with slightly perturbed ones.
    s.a.perturbation = index % 2 == 0 ? 0.0 : 1e-3;
  }

  // T cycles through the generated families, offset by the A family.
  const std::size_t tf =
      (static_cast<std::size_t>(index) + static_cast<std::size_t>(family)) % kGenerated.size();
  s.t.family = kGenerated[tf];
  s.t.dim = dim;
  s.t.seed = derive_seed(base, 2);
  if (s.t.family == Family::kDensityRankK) s.t.rank = 1 + static_cast<std::size_t>(index / 3) % dim;

  s.p.family = kStates[static_cast<std::size_t>(index) % kStates.size()];
  s.p.dim = dim;
  s.p.seed = derive_seed(base, 3);
  if (s.p.family == Family::kDensityRankK) s.p.rank = 1 + static_cast<std::size_t>(index / 7) % dim;
  return s;
}

long CampaignResult::total_failures() const {
  long n = 0;
  for (const auto& s : suites) n += s.failures;
  return n;
}

const SuiteSummary& CampaignResult::suite(const std::string& name) const {
  for (const auto& s : suites)
    if (s.suite == name) return s;
  throw Error("no suite named '" + name + "'");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "renaud",    "refined",  "normal",   "transloid",
      "theorem",   "normaloid", "dragomir", "variance_identities",
      "prasanna",  "characterizations", "kantorovich", "fixtures"};
  return names;
}

CampaignResult run_campaign(const TrialConfig& config) {
  config.validate();
  const std::vector<Family> families = config.effective_families();
  std::vector<TrialSpecs> specs;
  std::vector<int> indices;
  for (Family f : families)
    for (int i = 0; i < config.trials; ++i) {
      specs.push_back(trial_specs(config, f, i));
      indices.push_back(i);
    }

  std::vector<TrialOutcome> outcomes(specs.size());
  const int threads = config.threads > 0
                          ? config.threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  parallel_for(specs.size(), threads, [&](std::size_t i) {
    outcomes[i] = run_trial(config, specs[i], indices[i]);
  });

  CampaignResult result;
  result.total_trials = static_cast<long>(specs.size());
  const auto& names = suite_names();
  result.suites.resize(kSuiteCount);
  for (int s = 0; s < kSuiteCount; ++s) {
    result.suites[s].suite = names[s];
    result.suites[s].worst_slack = std::numeric_limits<double>::infinity();
  }

  auto fold = [&](int s, const SuiteAcc& acc, const TrialSpecs* trial) {
    SuiteSummary& sum = result.suites[s];
    if (acc.skipped && !acc.evaluated) {
      ++sum.skipped;
      return;
    }
    if (!acc.evaluated) return;
    ++sum.trials;
    sum.worst_slack = std::min(sum.worst_slack, acc.worst);
    if (acc.failed) {
      ++sum.failures;
      if (sum.failure_records.size() < kMaxRecords)
        sum.failure_records.push_back(
            {names[s], trial ? *trial : TrialSpecs{}, acc.fail_slack, acc.detail});
    }
  };
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    for (int s = 0; s < kFixtures; ++s) fold(s, outcomes[i][s], &specs[i]);
  fold(kFixtures, run_fixture_anchors(config), nullptr);
  return result;
}

nlohmann::json campaign_to_json(const CampaignResult& result,
                                const TrialConfig& config,
                                bool include_timestamp) {
  using nlohmann::json;
  auto finite_or_null = [](double v) -> json {
    return std::isfinite(v) ? json(v) : json(nullptr);
  };
  json suites = json::array();
  for (const auto& s : result.suites) {
    json records = json::array();
    for (const auto& f : s.failure_records)
      records.push_back({{"A", zoo_spec_to_json(f.specs.a)},
                         {"T", zoo_spec_to_json(f.specs.t)},
                         {"P", zoo_spec_to_json(f.specs.p)},
                         {"trial_seed", f.specs.seed},
                         {"slack", finite_or_null(f.slack)},
                         {"detail", f.detail}});
    suites.push_back({{"suite", s.suite},
                      {"trials", s.trials},
                      {"failures", s.failures},
                      {"skipped", s.skipped},
                      {"worst_slack", finite_or_null(s.worst_slack)},
                      {"seeds_of_failures", std::move(records)}});
  }
  json families = json::array();
  for (Family f : config.effective_families()) families.push_back(to_string(f));
  json meta = {{"seed", config.seed},
               {"dims", config.dims},
               {"trials_per_family", config.trials},
               {"families", std::move(families)},
               {"total_trials", result.total_trials},
               {"failures", result.total_failures()},
               {"tolerances", config.tolerances.to_json()}};
  if (include_timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta["timestamp"] = buf;
  }
  return {{"suites", std::move(suites)}, {"meta", std::move(meta)}};
}

}  // namespace gruss
