#include "gruss/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gruss/linalg.hpp"

namespace gruss {

namespace {

constexpr int kThetaGrid = 11;

class ChainBuilder {
 public:
  ChainBuilder(std::string name, double tol_ineq, double tol_eq)
      : tol_ineq_(tol_ineq), tol_eq_(tol_eq) {
    report_.chain = std::move(name);
  }

  ChainBuilder& start(std::string label, double value) {
    report_.terms.push_back({std::move(label), value});
    return *this;
  }

  ChainBuilder& le(std::string label, double value) {
    return next(std::move(label), value, Relation::kLessEqual);
  }

  ChainBuilder& eq(std::string label, double value) {
    return next(std::move(label), value, Relation::kEqual);
  }

  BoundChainReport& report() { return report_; }

 private:
  ChainBuilder& next(std::string label, double value, Relation rel) {
    const double prev = report_.terms.back().value;
    ChainLink link;
    link.relation = rel;
    if (rel == Relation::kLessEqual) {
      link.slack = value - prev;
      link.tolerance = tol_ineq_;
    } else {
      link.slack = -std::abs(value - prev);
      link.tolerance = tol_eq_;
    }
    link.holds = link.slack >= -link.tolerance;
    report_.links.push_back(link);
    report_.terms.push_back({std::move(label), value});
    return *this;
  }

  double tol_ineq_;
  double tol_eq_;
  BoundChainReport report_;
};

double ineq_tolerance(const PairContext& ctx, const ChainTolerances& tol) {
  return tol.ineq_abs + tol.ineq_rel * ctx.a.norm * ctx.t.norm;
}

void add_common_notes(BoundChainReport& r, const PairContext& ctx) {
  r.metrics.emplace_back("dim", static_cast<double>(ctx.a.matrix.n()));
  r.metrics.emplace_back("norm_A", ctx.a.norm);
  r.metrics.emplace_back("norm_T", ctx.t.norm);
  r.notes.emplace_back("sup_source", ctx.sup.source);
}

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw PreconditionError(std::string(name) + " must lie in [0, 1]", x);
}

double normality_residual(const ComplexMatrix& a) {
  const ComplexMatrix as = a.adjoint();
  return spectral_norm(a * as - as * a);
}

// The front of every chain: |V_P| <= sup |V| <= dist(A) dist(T).
ChainBuilder chain_head(const std::string& name, const PairContext& ctx,
                        const ChainTolerances& tol) {
  ChainBuilder b(name, ineq_tolerance(ctx, tol), tol.eq);
  b.start("|V_P(A,T)|", std::abs(ctx.vp))
      .le("sup_P |V_P(A,T)|", ctx.sup.value)
      .le("dist(A) dist(T)", ctx.a.dist.distance * ctx.t.dist.distance);
  return b;
}

}  // namespace

bool BoundChainReport::all_hold() const {
  return std::all_of(links.begin(), links.end(),
                     [](const ChainLink& l) { return l.holds; });
}

double BoundChainReport::worst_slack() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& l : links) w = std::min(w, l.slack);
  return w;
}

double BoundChainReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw Error("report has no metric '" + name + "'");
}

OperatorProfile profile_operator(const ComplexMatrix& a,
                                 const OptimizerSettings& settings) {
  OperatorProfile p;
  p.matrix = a;
  p.norm = spectral_norm(a);
  const NumericalRange range(a, settings);
  p.range_disc = range.enclosing_disc();
  p.centered_radius = range.radius_about(p.range_disc.center);
  p.centered_norm = spectral_norm(a.shifted(p.range_disc.center));
  p.dist = dist_to_scalars(a, settings);
  const CVector sigma = spectrum(a, settings);
  p.spectral_disc = smallest_enclosing_disc(sigma);
  return p;
}

PairContext make_pair_context(const ComplexMatrix& a, const ComplexMatrix& t,
                              const DensityOperator& p,
                              const OptimizerSettings& settings) {
  require_same_dim(a, t, "chain");
  require_same_dim(a, p.matrix(), "chain");
  PairContext ctx{profile_operator(a, settings), profile_operator(t, settings),
                  p, v_p(a, t, p), {}};
  ctx.sup = sup_state_estimate(a, t, p, settings);
  return ctx;
}

double renaud_bound(const ComplexMatrix& a, const ComplexMatrix& t,
                    const OptimizerSettings& settings) {
  require_same_dim(a, t, "renaud_bound");
  return 4.0 * numerical_range_disc(a, settings).radius *
         numerical_range_disc(t, settings).radius;
}

BoundChainReport renaud_chain(const PairContext& ctx,
                              const ChainTolerances& tol) {
  ChainBuilder b("renaud", tol.ineq_abs, tol.eq);
  b.start("|V_P(A,T)|", std::abs(ctx.vp))
      .le("4 R_A R_T", 4.0 * ctx.a.range_disc.radius * ctx.t.range_disc.radius);
  BoundChainReport& r = b.report();
  add_common_notes(r, ctx);
  return std::move(r);
}

BoundChainReport refined_chain(const PairContext& ctx,
                               const ChainTolerances& tol) {
  ChainBuilder b = chain_head("refined", ctx, tol);
  b.le("||A-l0|| ||T-m0||", ctx.a.centered_norm * ctx.t.centered_norm)
      .le("4 w(A-l0) w(T-m0)", 4.0 * ctx.a.centered_radius * ctx.t.centered_radius)
      .le("4 R_A R_T", 4.0 * ctx.a.range_disc.radius * ctx.t.range_disc.radius);
  BoundChainReport& r = b.report();
  add_common_notes(r, ctx);
  return std::move(r);
}

BoundChainReport refined_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                               const DensityOperator& p,
                               const OptimizerSettings& settings,
                               const ChainTolerances& tol) {
  return refined_chain(make_pair_context(a, t, p, settings), tol);
}

BoundChainReport normal_chain(const PairContext& ctx,
                              const ChainTolerances& tol) {
  for (const OperatorProfile* op : {&ctx.a, &ctx.t}) {
    const double res = normality_residual(op->matrix);
    if (res > tol.normality * std::max(1.0, op->norm * op->norm))
      throw PreconditionError("normality residual", res);
  }
  ChainBuilder b = chain_head("normal", ctx, tol);
  b.eq("r_A r_T", ctx.a.spectral_disc.radius * ctx.t.spectral_disc.radius);
  BoundChainReport& r = b.report();
  add_common_notes(r, ctx);
  return std::move(r);
}

BoundChainReport normal_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                              const DensityOperator& p,
                              const OptimizerSettings& settings,
                              const ChainTolerances& tol) {
  return normal_chain(make_pair_context(a, t, p, settings), tol);
}

BoundChainReport transloid_chain(const PairContext& ctx,
                                 std::span<const Complex> shifts,
                                 const ChainTolerances& tol) {
  for (const OperatorProfile* op : {&ctx.a, &ctx.t}) {
    const TransloidCheck c = is_transloid_sampled(op->matrix, shifts, tol.normaloid);
    if (!c.passed)
      throw PreconditionError(
          "sampled transloid check failed at shift (" +
              std::to_string(c.worst_shift.real()) + ", " +
              std::to_string(c.worst_shift.imag()) + "), normaloid residual",
          c.worst_residual);
  }
  ChainBuilder b = chain_head("transloid", ctx, tol);
  b.eq("r_A r_T", ctx.a.spectral_disc.radius * ctx.t.spectral_disc.radius);
  BoundChainReport& r = b.report();
  add_common_notes(r, ctx);
  r.metrics.emplace_back("shifts_sampled", static_cast<double>(shifts.size()));
  r.notes.emplace_back("transloid_check",
                       "sampled necessary condition; in finite dimension the "
                       "exercised class coincides with normal matrices");
  return std::move(r);
}

BoundChainReport transloid_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                                 const DensityOperator& p,
                                 std::span<const Complex> shifts,
                                 const OptimizerSettings& settings,
                                 const ChainTolerances& tol) {
  return transloid_chain(make_pair_context(a, t, p, settings), shifts, tol);
}

double h_factor(const OperatorProfile& a, double lambda) {
  require_unit_interval(lambda, "lambda");
  const double eps_deg = 1e-8 * (1.0 + a.norm);
  if (a.dist.degenerate || a.dist.distance <= eps_deg || a.centered_radius <= 0.0)
    throw PreconditionError("operator is a scalar multiple of the identity, dist",
                            a.dist.distance);
  return 2.0 * (1.0 - lambda) + lambda * a.dist.distance / a.centered_radius;
}

double h_factor(const ComplexMatrix& a, double lambda,
                const OptimizerSettings& settings) {
  require_unit_interval(lambda, "lambda");
  return h_factor(profile_operator(a, settings), lambda);
}

BoundChainReport renaud_k_chain(const PairContext& ctx, double lambda,
                                double mu, const ChainTolerances& tol) {
  const double ha = h_factor(ctx.a, lambda);
  const double ht = h_factor(ctx.t, mu);
  const double k = ha * ht;
  ChainBuilder b = chain_head("theorem", ctx, tol);
  b.le("h h w(A-l0) w(T-m0)", k * ctx.a.centered_radius * ctx.t.centered_radius)
      .le("h h R_A R_T", k * ctx.a.range_disc.radius * ctx.t.range_disc.radius);
  BoundChainReport& r = b.report();
  add_common_notes(r, ctx);
  r.metrics.emplace_back("lambda", lambda);
  r.metrics.emplace_back("mu", mu);
  r.metrics.emplace_back("h_lambda", ha);
  r.metrics.emplace_back("h_mu", ht);
  r.metrics.emplace_back("k", k);

  double k_min = std::numeric_limits<double>::infinity();
  double at_l = 0.0, at_m = 0.0;
  for (int i = 0; i < kThetaGrid; ++i)
    for (int j = 0; j < kThetaGrid; ++j) {
      const double li = i / double(kThetaGrid - 1);
      const double mj = j / double(kThetaGrid - 1);
      const double kk = h_factor(ctx.a, li) * h_factor(ctx.t, mj);
      if (kk < k_min) {
        k_min = kk;
        at_l = li;
        at_m = mj;
      }
    }
  r.metrics.emplace_back("k_min", k_min);
  r.metrics.emplace_back("k_min_lambda", at_l);
  r.metrics.emplace_back("k_min_mu", at_m);
  return std::move(r);
}

BoundChainReport renaud_k_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                                const DensityOperator& p, double lambda,
                                double mu, const OptimizerSettings& settings,
                                const ChainTolerances& tol) {
  require_unit_interval(lambda, "lambda");
  require_unit_interval(mu, "mu");
  return renaud_k_chain(make_pair_context(a, t, p, settings), lambda, mu, tol);
}

namespace {

void require_normaloid_shifts(const PairContext& ctx, const ChainTolerances& tol) {
  const NormaloidCheck ca =
      is_normaloid(ctx.a.matrix.shifted(ctx.a.range_disc.center), tol.normaloid);
  if (!ca.normaloid)
    throw PreconditionError("A - lambda0 Id is not normaloid", ca.residual);
  const NormaloidCheck ct =
      is_normaloid(ctx.t.matrix.shifted(ctx.t.range_disc.center), tol.normaloid);
  if (!ct.normaloid)
    throw PreconditionError("T - mu0 Id is not normaloid", ct.residual);
}

BoundChainReport normaloid_report(const PairContext& ctx, double lambda,
                                  double mu, const ChainTolerances& tol) {
  const double factor = (2.0 - lambda) * (2.0 - mu);
  ChainBuilder b = chain_head("normaloid", ctx, tol);
  b.le("(2-l)(2-m) w(A-l0) w(T-m0)",
       factor * ctx.a.centered_radius * ctx.t.centered_radius)
      .le("(2-l)(2-m) R_A R_T",
          factor * ctx.a.range_disc.radius * ctx.t.range_disc.radius);
  BoundChainReport& r = b.report();
  add_common_notes(r, ctx);
  r.metrics.emplace_back("lambda", lambda);
  r.metrics.emplace_back("mu", mu);
  r.metrics.emplace_back("factor", factor);
  return std::move(r);
}

}  // namespace

BoundChainReport normaloid_corollary_chain(const PairContext& ctx,
                                           double lambda, double mu,
                                           const ChainTolerances& tol) {
  require_unit_interval(lambda, "lambda");
  require_unit_interval(mu, "mu");
  require_normaloid_shifts(ctx, tol);
  return normaloid_report(ctx, lambda, mu, tol);
}

std::vector<BoundChainReport> normaloid_corollary_sweep(
    const PairContext& ctx, int grid, const ChainTolerances& tol) {
  if (grid < 2) throw PreconditionError("sweep grid must be at least 2", grid);
  require_normaloid_shifts(ctx, tol);
  std::vector<BoundChainReport> out;
  out.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      out.push_back(normaloid_report(ctx, i / double(grid - 1),
                                     j / double(grid - 1), tol));
  return out;
}

BoundChainReport normaloid_corollary_chain(
    const ComplexMatrix& a, const ComplexMatrix& t, const DensityOperator& p,
    double lambda, double mu, const OptimizerSettings& settings,
    const ChainTolerances& tol) {
  require_unit_interval(lambda, "lambda");
  require_unit_interval(mu, "mu");
  return normaloid_corollary_chain(make_pair_context(a, t, p, settings), lambda,
                                   mu, tol);
}

KantorovichCheck kantorovich_check(const ComplexMatrix& a,
                                   std::span<const Complex> x) {
  if (x.size() != a.n()) throw DimensionError("kantorovich_check: length mismatch");
  const double unit_err = std::abs(norm2(x) - 1.0);
  if (unit_err > 1e-9)
    throw PreconditionError("x is not a unit vector, | ||x|| - 1 |", unit_err);
  const HermitianEig e = hermitian_eig(a);
  const double eps_pd = 1e-12 * std::max(1.0, std::abs(e.values.back()));
  if (e.values.front() < eps_pd)
    throw PreconditionError("A is not positive definite, min eigenvalue",
                            e.values.front());

  const std::size_t n = a.n();
  ComplexMatrix inv(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        inv(i, j) += e.vectors(i, k) * std::conj(e.vectors(j, k)) / e.values[k];

  const Complex ax = dot(a.apply(x), x);
  const Complex ix = dot(inv.apply(x), x);
  CVector sa(e.values.begin(), e.values.end());
  CVector si(n);
  for (std::size_t k = 0; k < n; ++k) si[k] = 1.0 / e.values[k];
  return {std::abs(1.0 - ax * ix), smallest_enclosing_disc(sa).radius *
                                       smallest_enclosing_disc(si).radius};
}

std::vector<SweepRow> sweep_k(const OperatorProfile& a,
                              const OperatorProfile& t, int grid) {
  if (grid < 2) throw PreconditionError("sweep grid must be at least 2", grid);
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(grid) * grid);
  const double lhs = a.dist.distance * t.dist.distance;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      SweepRow row;
      row.lambda = i / double(grid - 1);
      row.mu = j / double(grid - 1);
      row.h_lambda = h_factor(a, row.lambda);
      row.h_mu = h_factor(t, row.mu);
      row.k = row.h_lambda * row.h_mu;
      row.bound = row.k * a.range_disc.radius * t.range_disc.radius;
      row.lhs = lhs;
      row.slack = row.bound - row.lhs;
      rows.push_back(row);
    }
  return rows;
}

std::vector<SweepRow> sweep_k(const ComplexMatrix& a, const ComplexMatrix& t,
                              int grid, const OptimizerSettings& settings) {
  require_same_dim(a, t, "sweep_k");
  if (grid < 2) throw PreconditionError("sweep grid must be at least 2", grid);
  return sweep_k(profile_operator(a, settings), profile_operator(t, settings),
                 grid);
}

}  // namespace gruss
