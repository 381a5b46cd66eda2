#pragma once

#include <functional>
#include <vector>

#include "gruss/matrix.hpp"

namespace gruss {

/// Smooth real objective on the complex unit sphere. Returns f(x) and, when
/// `grad` is non-null, writes the Wirtinger gradient df/d(conj x).
using SphereObjective =
    std::function<double(std::span<const Complex> x, CVector* grad)>;

struct SphereAscentOptions {
  int restarts = 32;
  int max_iters = 2000;
  /// Stop a restart once the tangent gradient norm drops below this.
  double grad_tol = 1e-10;
  std::uint64_t seed = 42;
  /// Extra starting points tried before the random restarts.
  std::vector<CVector> starts;
};

struct SphereAscentResult {
  CVector argmax;
  double value = 0.0;
  /// Whether `value` met grad_tol, either in its restart or after the
  /// extended polishing run given to an unconverged leader.
  bool converged = false;
  int converged_restarts = 0;
  int restarts = 0;
};

/// Riemannian gradient ascent with Barzilai-Borwein steps and Armijo
/// backtracking, repeated from seeded random unit vectors. Restarts are
/// independent; the best value wins, ties broken by lowest restart index.
SphereAscentResult maximize_on_sphere(std::size_t n, const SphereObjective& f,
                                      const SphereAscentOptions& options);

}  // namespace gruss
