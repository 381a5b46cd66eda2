#pragma once

#include "gruss/matrix.hpp"

namespace gruss {

/// Result of min over complex lambda of ||A - lambda T||.
struct ScalarDistance {
  Complex center;             // the minimizer c(A, T)
  double distance = 0.0;      // objective value at the best evaluated point
  double lower_bound = 0.0;   // certified: true minimum >= lower_bound
  double grid_lower_bound = 0.0;
  bool degenerate = false;    // A is (numerically) a multiple of T
  bool converged = false;     // distance - lower_bound <= tolerance
  int iterations = 0;
};

/// dist(A, C Id) and the center of mass c(A). Convex in lambda: a coarse
/// grid gives a Lipschitz lower bound, then a 2-D ellipsoid cutting-plane
/// method shrinks the region known to contain the minimizer.
ScalarDistance dist_to_scalars(const ComplexMatrix& a,
                               const OptimizerSettings& settings = {});

struct SphereDistance {
  CVector maximizer;
  double distance = 0.0;
  bool converged = false;
  int converged_restarts = 0;
};

/// sqrt(max over unit x of ||Ax||^2 - |<Ax, x>|^2) by restarted ascent.
SphereDistance dist_sphere(const ComplexMatrix& a,
                           const OptimizerSettings& settings = {});

struct LineDistance {
  ScalarDistance direct;      // min over lambda of ||A - lambda T||
  SphereDistance sup;         // sup of ||Ax - <Ax,Tx>/<Tx,Tx> Tx|| over unit x
  bool agree = false;         // |direct - sup| within tolerance
};

/// dist(A, C T). Requires sigma_min(T) >= 1e-8 ||T|| (T bounded below).
LineDistance dist_to_line(const ComplexMatrix& a, const ComplexMatrix& t,
                          const OptimizerSettings& settings = {});

/// <A y, T y> / <T y, T y> at the maximizing vector y of the sup formula.
Complex center_of_mass_limit(const ComplexMatrix& a, const ComplexMatrix& t,
                             const OptimizerSettings& settings = {});

struct DistCharacterizations {
  double commutator_half_sup = 0.0;  // 1/2 sup ||AX - XA||, ||X|| = 1
  double rank_one_proj_sup = 0.0;    // sup ||(Id - Q) A Q||, Q rank one
  bool converged = false;
};

/// Lower-bound characterizations of dist(A, C Id) by direct search.
DistCharacterizations dist_characterizations(
    const ComplexMatrix& a, const OptimizerSettings& settings = {});

}  // namespace gruss
