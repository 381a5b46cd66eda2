#pragma once

#include "gruss/matrix.hpp"

namespace gruss {

/// tr(P A T) - tr(P A) tr(P T)
Complex v_p(const ComplexMatrix& a, const ComplexMatrix& t,
            const DensityOperator& p);

/// tr(|A|^2 P) - |tr(A P)|^2; equals v_p(A*, A, P).
double variance(const ComplexMatrix& a, const DensityOperator& p);

/// The three Hilbert-Schmidt forms of the variance, with X = A P^{1/2} and
/// Y = P^{1/2}:
///   v1 = ||X||_2^2 - |<X, Y>_2|^2
///   v2 = ||X - <X, Y>_2 Y||_2^2
///   v3 = min over lambda of ||X - lambda Y||_2^2
///      = (||X||^2 ||Y||^2 - |<X, Y>|^2) / ||Y||^2
struct VarianceIdentities {
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
};
VarianceIdentities variance_identities(const ComplexMatrix& a,
                                       const DensityOperator& p);

struct AudenaertMax {
  DensityOperator state;  // rank one, x x*
  double value = 0.0;     // max variance over states
  bool converged = false;
};

/// Maximizes the variance over rank-one states with the sphere engine used
/// by dist_sphere; value approximates dist(A, C Id)^2.
AudenaertMax audenaert_max(const ComplexMatrix& a,
                           const OptimizerSettings& settings = {});

/// (X, Y)_{2,P} = <P^{1/2} X, P^{1/2} Y>_2
Complex semi_inner(const ComplexMatrix& x, const ComplexMatrix& y,
                   const DensityOperator& p);

struct DragomirBound {
  double middle = 0.0;
  double outer = 0.0;
};

/// Semi-inner-product bound on |V_P(A, T)| at the shifts (lambda, mu).
DragomirBound dragomir_bound(const ComplexMatrix& a, const ComplexMatrix& t,
                             const DensityOperator& p, Complex lambda,
                             Complex mu);

struct StateSupEstimate {
  double value = 0.0;
  std::string source;  // "given", "rank_one" or "random"
};

/// Lower estimate of sup over states of |V_P(A, T)|: the maximum over the
/// given state, rank-one states from restarted ascent, and random mixed
/// states. Never below |V_P(A, T)| at the given state.
StateSupEstimate sup_state_estimate(const ComplexMatrix& a,
                                    const ComplexMatrix& t,
                                    const DensityOperator& p,
                                    const OptimizerSettings& settings = {},
                                    int random_states = 4);

}  // namespace gruss
