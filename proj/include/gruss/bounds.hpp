#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gruss/distance.hpp"
#include "gruss/matrix.hpp"
#include "gruss/spectral.hpp"
#include "gruss/variance.hpp"

namespace gruss {

struct ChainTerm {
  std::string label;
  double value = 0.0;
};

/// Relation between consecutive terms i and i+1.
enum class Relation { kLessEqual, kEqual };

struct ChainLink {
  Relation relation = Relation::kLessEqual;
  double slack = 0.0;      // t[i+1] - t[i] for <=, -|t[i+1] - t[i]| for ==
  double tolerance = 0.0;  // holds iff slack >= -tolerance
  bool holds = true;
};

/// One evaluated inequality chain with per-link slacks.
struct BoundChainReport {
  std::string chain;
  std::vector<ChainTerm> terms;
  std::vector<ChainLink> links;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::string>> notes;

  bool all_hold() const;
  /// Smallest raw slack; +inf when there are no links.
  double worst_slack() const;
  double metric(const std::string& name) const;
};

struct ChainTolerances {
  double ineq_abs = 1e-9;
  double ineq_rel = 1e-9;  // scaled by ||A|| ||T||
  double eq = 1e-6;
  double normality = 1e-9;
  double normaloid = 1e-8;
};

/// Everything the chains need about one operator, computed once.
struct OperatorProfile {
  ComplexMatrix matrix;
  double norm = 0.0;
  Disc range_disc;            // (lambda0, R): disc containing W(A)
  double centered_radius = 0.0;  // w(A - lambda0 Id)
  double centered_norm = 0.0;    // ||A - lambda0 Id||
  ScalarDistance dist;        // c(A), dist(A, C Id)
  Disc spectral_disc;         // smallest disc containing sigma(A)
};

OperatorProfile profile_operator(const ComplexMatrix& a,
                                 const OptimizerSettings& settings = {});

/// Shared inputs for the chains on one (A, T, P) triple.
struct PairContext {
  OperatorProfile a;
  OperatorProfile t;
  DensityOperator p;
  Complex vp;
  StateSupEstimate sup;
};

PairContext make_pair_context(const ComplexMatrix& a, const ComplexMatrix& t,
                              const DensityOperator& p,
                              const OptimizerSettings& settings = {});

/// 4 R_A R_T
double renaud_bound(const ComplexMatrix& a, const ComplexMatrix& t,
                    const OptimizerSettings& settings = {});

/// |V_P| <= 4 R_A R_T
BoundChainReport renaud_chain(const PairContext& ctx,
                              const ChainTolerances& tol = {});

/// |V_P| <= sup |V| <= dist dist <= ||A-l0|| ||T-m0|| <= 4 w w <= 4 R_A R_T
BoundChainReport refined_chain(const PairContext& ctx,
                               const ChainTolerances& tol = {});
BoundChainReport refined_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                               const DensityOperator& p,
                               const OptimizerSettings& settings = {},
                               const ChainTolerances& tol = {});

/// |V_P| <= sup |V| <= dist dist == r_A r_T; A and T must be normal.
BoundChainReport normal_chain(const PairContext& ctx,
                              const ChainTolerances& tol = {});
BoundChainReport normal_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                              const DensityOperator& p,
                              const OptimizerSettings& settings = {},
                              const ChainTolerances& tol = {});

/// Same chain as normal_chain, gated by a sampled transloid check.
BoundChainReport transloid_chain(const PairContext& ctx,
                                 std::span<const Complex> shifts,
                                 const ChainTolerances& tol = {});
BoundChainReport transloid_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                                 const DensityOperator& p,
                                 std::span<const Complex> shifts,
                                 const OptimizerSettings& settings = {},
                                 const ChainTolerances& tol = {});

/// h_lambda(A) = 2 (1 - lambda) + lambda ||A - c(A)|| / w(A - lambda0)
double h_factor(const OperatorProfile& a, double lambda);
double h_factor(const ComplexMatrix& a, double lambda,
                const OptimizerSettings& settings = {});

/// |V_P| <= sup <= dist dist <= h h w w <= h h R_A R_T. Reports k = h h and
/// its minimum over the 11 x 11 (lambda, mu) grid.
BoundChainReport renaud_k_chain(const PairContext& ctx, double lambda,
                                double mu, const ChainTolerances& tol = {});
BoundChainReport renaud_k_chain(const ComplexMatrix& a, const ComplexMatrix& t,
                                const DensityOperator& p, double lambda,
                                double mu,
                                const OptimizerSettings& settings = {},
                                const ChainTolerances& tol = {});

/// Chain with factor (2 - lambda)(2 - mu); requires A - lambda0 and
/// T - mu0 normaloid.
BoundChainReport normaloid_corollary_chain(const PairContext& ctx,
                                           double lambda, double mu,
                                           const ChainTolerances& tol = {});
BoundChainReport normaloid_corollary_chain(
    const ComplexMatrix& a, const ComplexMatrix& t, const DensityOperator& p,
    double lambda, double mu, const OptimizerSettings& settings = {},
    const ChainTolerances& tol = {});

/// The corollary chain at every point of the uniform grid^2 on [0, 1]^2,
/// row-major in (lambda, mu). The normaloid preconditions are checked once.
std::vector<BoundChainReport> normaloid_corollary_sweep(
    const PairContext& ctx, int grid, const ChainTolerances& tol = {});

struct KantorovichCheck {
  double lhs = 0.0;  // |1 - <Ax, x><A^{-1}x, x>|
  double rhs = 0.0;  // r_A r_{A^{-1}}
};
/// A Hermitian positive definite, x a unit vector.
KantorovichCheck kantorovich_check(const ComplexMatrix& a,
                                   std::span<const Complex> x);

struct SweepRow {
  double lambda = 0.0;
  double mu = 0.0;
  double h_lambda = 0.0;
  double h_mu = 0.0;
  double k = 0.0;
  double bound = 0.0;  // k R_A R_T
  double lhs = 0.0;    // dist(A) dist(T)
  double slack = 0.0;
};

/// k(A, T) surface over the uniform grid^2 on [0, 1]^2.
std::vector<SweepRow> sweep_k(const OperatorProfile& a,
                              const OperatorProfile& t, int grid);
std::vector<SweepRow> sweep_k(const ComplexMatrix& a, const ComplexMatrix& t,
                              int grid, const OptimizerSettings& settings = {});

}  // namespace gruss
