#include "gruss/variance.hpp"

#include <algorithm>
#include <cmath>

#include "gruss/distance.hpp"
#include "gruss/linalg.hpp"
#include "gruss/random.hpp"
#include "gruss/sphere_ascent.hpp"

namespace gruss {

Complex v_p(const ComplexMatrix& a, const ComplexMatrix& t,
            const DensityOperator& p) {
  require_same_dim(a, t, "v_p");
  require_same_dim(a, p.matrix(), "v_p");
  const ComplexMatrix& pm = p.matrix();
  return trace_product(pm, a * t) - trace_product(pm, a) * trace_product(pm, t);
}

double variance(const ComplexMatrix& a, const DensityOperator& p) {
  require_same_dim(a, p.matrix(), "variance");
  const Complex first = trace_product(gram(a), p.matrix());
  return first.real() - std::norm(trace_product(a, p.matrix()));
}

VarianceIdentities variance_identities(const ComplexMatrix& a,
                                       const DensityOperator& p) {
  require_same_dim(a, p.matrix(), "variance_identities");
  const ComplexMatrix y = psd_sqrt(p.matrix(), 0.0);
  const ComplexMatrix x = a * y;
  const Complex xy = hs_inner(x, y);
  const double xx = hs_inner(x, x).real();
  const double yy = hs_inner(y, y).real();

  VarianceIdentities out;
  out.v1 = xx - std::norm(xy);
  out.v2 = std::pow((x - y * xy).frobenius_norm(), 2);
  out.v3 = (xx * yy - std::norm(xy)) / yy;
  return out;
}

AudenaertMax audenaert_max(const ComplexMatrix& a,
                           const OptimizerSettings& settings) {
  const SphereDistance s = dist_sphere(a, settings);
  return {DensityOperator::pure(s.maximizer), s.distance * s.distance,
          s.converged};
}

Complex semi_inner(const ComplexMatrix& x, const ComplexMatrix& y,
                   const DensityOperator& p) {
  require_same_dim(x, y, "semi_inner");
  require_same_dim(x, p.matrix(), "semi_inner");
  const ComplexMatrix root = psd_sqrt(p.matrix(), 0.0);
  return hs_inner(root * x, root * y);
}

DragomirBound dragomir_bound(const ComplexMatrix& a, const ComplexMatrix& t,
                             const DensityOperator& p, Complex lambda,
                             Complex mu) {
  require_same_dim(a, t, "dragomir_bound");
  const ComplexMatrix as = a.shifted(lambda);
  const ComplexMatrix ts = t.shifted(mu);
  const ComplexMatrix ts_star = ts.adjoint();
  const double xx = std::max(0.0, semi_inner(as, as, p).real());
  const double yy = std::max(0.0, semi_inner(ts_star, ts_star, p).real());
  const double subtrahend = std::abs(trace_product(p.matrix(), as) *
                                     trace_product(p.matrix(), ts));
  return {std::sqrt(xx) * std::sqrt(yy) - subtrahend,
          spectral_norm(as) * spectral_norm(ts) - subtrahend};
}

StateSupEstimate sup_state_estimate(const ComplexMatrix& a,
                                    const ComplexMatrix& t,
                                    const DensityOperator& p,
                                    const OptimizerSettings& settings,
                                    int random_states) {
  require_same_dim(a, t, "sup_state_estimate");
  const std::size_t n = a.n();
  StateSupEstimate best{std::abs(v_p(a, t, p)), "given"};

  const ComplexMatrix at = a * t;
  SphereObjective obj = [&](std::span<const Complex> x, CVector* grad) {
    const CVector mx = at.apply(x);
    const CVector ax = a.apply(x);
    const CVector tx = t.apply(x);
    const Complex m = dot(mx, x), alpha = dot(ax, x), tau = dot(tx, x);
    const Complex v = m - alpha * tau;
    if (grad != nullptr) {
      const CVector mh = at.apply_adjoint(x);
      const CVector ah = a.apply_adjoint(x);
      const CVector th = t.apply_adjoint(x);
      grad->resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Complex dv = mx[i] - ax[i] * tau - alpha * tx[i];
        const Complex dvbar =
            mh[i] - ah[i] * std::conj(tau) - std::conj(alpha) * th[i];
        (*grad)[i] = std::conj(v) * dv + v * dvbar;
      }
    }
    return std::norm(v);
  };
  SphereAscentOptions opt;
  opt.restarts = std::min(settings.restarts, 8);
  opt.max_iters = std::min(settings.max_iters, 300);
  opt.seed = derive_seed(settings.seed, 0x5a9ULL);
  const double scale = a.frobenius_norm() * t.frobenius_norm();
  opt.grad_tol = 1e-8 * (1.0 + scale * scale);
  const SphereAscentResult r = maximize_on_sphere(n, obj, opt);
  const double rank_one = std::sqrt(std::max(0.0, r.value));
  if (rank_one > best.value) best = {rank_one, "rank_one"};

  CounterRng rng(derive_seed(settings.seed, 0xd1ceULL));
  for (int k = 0; k < random_states; ++k) {
    ComplexMatrix g(n);
    for (auto& z : g.entries()) z = rng.complex_normal();
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    const double val = std::abs(v_p(a, t, DensityOperator(rho)));
    if (val > best.value) best = {val, "random"};
  }
  return best;
}

}  // namespace gruss
