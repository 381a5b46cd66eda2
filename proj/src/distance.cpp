#include "gruss/distance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "gruss/linalg.hpp"
#include "gruss/random.hpp"
#include "gruss/sphere_ascent.hpp"

namespace gruss {

namespace {

// Value and a subgradient in (Re, Im) coordinates packed as a complex number.
struct Subgradient {
  double value;
  Complex grad;
};
using ConvexObjective = std::function<Subgradient(Complex)>;

struct ConvexProblem {
  Complex center;      // the minimizer lies in the disc D(center, radius)
  double radius;
  double lipschitz;    // |f(x) - f(y)| <= lipschitz |x - y|
  double tol_value;
  double tol_point;
  int max_iters;
};

ScalarDistance minimize_convex_2d(const ConvexObjective& f,
                                  const ConvexProblem& pb) {
  ScalarDistance out;

  // Coarse grid: every point of the disc is within h / sqrt(2) of a node.
  constexpr int kGrid = 7;
  const double h = 2.0 * pb.radius / (kGrid - 1);
  double best = std::numeric_limits<double>::infinity();
  Complex best_x = pb.center;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const Complex x = pb.center + Complex(-pb.radius + i * h, -pb.radius + j * h);
      const double v = f(x).value;
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
  out.grid_lower_bound = best - pb.lipschitz * h / std::numbers::sqrt2;
  double lower = out.grid_lower_bound;

  // Ellipsoid {x : (x - c)^T P^{-1} (x - c) <= 1} containing the minimizer.
  double cx = pb.center.real(), cy = pb.center.imag();
  const double r2 = pb.radius * pb.radius * (1.0 + 1e-9) + 1e-300;
  double p11 = r2, p12 = 0.0, p22 = r2;
  auto max_axis = [&] {
    const double tr = 0.5 * (p11 + p22);
    const double det = p11 * p22 - p12 * p12;
    return std::sqrt(std::max(0.0, tr + std::sqrt(std::max(0.0, tr * tr - det))));
  };

  int it = 0;
  for (; it < pb.max_iters; ++it) {
    const Subgradient s = f({cx, cy});
    if (s.value < best) {
      best = s.value;
      best_x = {cx, cy};
    }
    const double gx = s.grad.real(), gy = s.grad.imag();
    const double pgx = p11 * gx + p12 * gy;
    const double pgy = p12 * gx + p22 * gy;
    const double gpg = gx * pgx + gy * pgy;
    if (!(gpg > 0.0)) {
      // Zero subgradient: the current center is optimal.
      lower = std::max(lower, s.value);
      best_x = {cx, cy};
      best = std::min(best, s.value);
      p11 = p22 = p12 = 0.0;
      break;
    }
    const double sq = std::sqrt(gpg);
    lower = std::max(lower, s.value - sq);
    if (best - lower <= pb.tol_value && max_axis() <= pb.tol_point) break;

    const double ux = pgx / sq, uy = pgy / sq;
    cx -= ux / 3.0;
    cy -= uy / 3.0;
    const double k = 4.0 / 3.0;
    p11 = k * (p11 - 2.0 / 3.0 * ux * ux);
    p12 = k * (p12 - 2.0 / 3.0 * ux * uy);
    p22 = k * (p22 - 2.0 / 3.0 * uy * uy);
  }

  // Report the ellipsoid center: the minimizer is within max_axis() of it
  // even where f is flat and the best evaluated point is not.
  const Complex final_center{cx, cy};
  const double fc = f(final_center).value;
  if (fc <= best) best = fc;
  out.center = max_axis() <= pb.tol_point ? final_center : best_x;
  out.distance = best;
  out.lower_bound = std::min(lower, best);
  out.iterations = it;
  out.converged = best - lower <= 100.0 * pb.tol_value;
  return out;
}

Subgradient sigma_max_about(const ComplexMatrix& a, const ComplexMatrix* t,
                            Complex lambda) {
  ComplexMatrix m = a;
  if (t == nullptr) {
    for (std::size_t i = 0; i < m.n(); ++i) m(i, i) -= lambda;
  } else {
    for (std::size_t i = 0; i < m.n(); ++i)
      for (std::size_t j = 0; j < m.n(); ++j) m(i, j) -= lambda * (*t)(i, j);
  }
  const SingularTriple st = top_singular(m);
  // d sigma = -Re(delta u* T v)
  const Complex w = t == nullptr ? dot(st.v, st.u) : dot(t->apply(st.v), st.u);
  return {st.sigma, -std::conj(w)};
}

SphereAscentOptions sphere_options(const OptimizerSettings& s, double scale) {
  SphereAscentOptions o;
  o.restarts = s.restarts;
  o.max_iters = s.max_iters;
  o.seed = s.seed;
  o.grad_tol = 1e-9 * (1.0 + scale);
  return o;
}

// Unit-norm contraction maximizing Re tr(X K): sum of v_i u_i* over the
// nonzero singular triples of K. Singular values come from K*K, so anything
// below sqrt(eps) of the top one is noise and its direction is unreliable.
ComplexMatrix polar_maximizer(const ComplexMatrix& k) {
  const std::size_t n = k.n();
  const HermitianEig e = hermitian_eig_unchecked(gram(k));
  const double top = std::sqrt(std::max(0.0, e.values.back()));
  ComplexMatrix x(n);
  if (top == 0.0) return ComplexMatrix::identity(n);
  CVector v(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double sigma = std::sqrt(std::max(0.0, e.values[c]));
    if (sigma <= 1e-7 * top) continue;
    for (std::size_t i = 0; i < n; ++i) v[i] = e.vectors(i, c);
    CVector u = k.apply(v);
    for (auto& z : u) z /= sigma;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) += v[i] * std::conj(u[j]);
  }
  // Rounding can push ||X|| slightly above 1; rescale to stay feasible.
  const double nx = spectral_norm(x);
  if (nx > 1.0) x *= 1.0 / nx;
  return x;
}

struct CommutatorSearch {
  double value = 0.0;
  bool converged = false;
};

// Alternating ascent on Re u*(AX - XA)v over unit u, v and ||X|| <= 1; each
// half-step is an exact maximization, so the value never decreases.
CommutatorSearch commutator_sup(const ComplexMatrix& a,
                                const OptimizerSettings& settings) {
  const std::size_t n = a.n();
  const double scale = 1.0 + spectral_norm(a);
  CommutatorSearch best;
  int converged_runs = 0;
  for (int r = 0; r < settings.restarts; ++r) {
    CounterRng rng(derive_seed(settings.seed ^ 0xc0ffeeULL, std::uint64_t(r)));
    ComplexMatrix g(n);
    for (auto& z : g.entries()) z = rng.complex_normal();
    ComplexMatrix x = polar_maximizer(g);
    double value = 0.0;
    bool done = false;
    for (int it = 0; it < settings.max_iters; ++it) {
      const SingularTriple st = top_singular(a * x - x * a);
      const bool stalled = st.sigma - value <= 1e-13 * scale;
      value = std::max(value, st.sigma);
      if (stalled && it > 0) {
        done = true;
        break;
      }
      // u*(AX - XA)v = tr(X K) with K = v u* A - A v u*.
      const CVector ua = a.apply_adjoint(st.u);  // A* u
      const CVector av = a.apply(st.v);
      ComplexMatrix k(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          k(i, j) = st.v[i] * std::conj(ua[j]) - av[i] * std::conj(st.u[j]);
      x = polar_maximizer(k);
    }
    if (done) ++converged_runs;
    if (value > best.value) {
      best.value = value;
      best.converged = done;
    }
  }
  best.converged = best.converged && converged_runs > 0;
  return best;
}

}  // namespace

ScalarDistance dist_to_scalars(const ComplexMatrix& a,
                               const OptimizerSettings& settings) {
  settings.validate();
  const std::size_t n = a.n();
  const Complex tau = a.trace() / static_cast<double>(n);
  const ComplexMatrix b = a.shifted(tau);
  const double norm_a = spectral_norm(a);
  const double norm_b = spectral_norm(b);
  const double tol = settings.tol_abs * (1.0 + norm_a);

  if (norm_b <= 1e-12 * (1.0 + norm_a)) {
    ScalarDistance out;
    out.center = tau;
    out.distance = norm_b;
    out.lower_bound = 0.0;
    out.grid_lower_bound = 0.0;
    out.degenerate = true;
    out.converged = true;
    return out;
  }

  // c(B) lies in the closure of W(B), hence |c(B)| <= w(B) <= ||B||.
  ConvexProblem pb{0.0, norm_b, 1.0, 1e-2 * tol, 1e-2 * tol, settings.max_iters};
  ScalarDistance out = minimize_convex_2d(
      [&](Complex z) { return sigma_max_about(b, nullptr, z); }, pb);
  out.center += tau;
  out.converged = out.converged && out.distance - out.lower_bound <= tol;
  return out;
}

SphereDistance dist_sphere(const ComplexMatrix& a,
                           const OptimizerSettings& settings) {
  settings.validate();
  const double scale = a.frobenius_norm();
  SphereObjective phi = [&a](std::span<const Complex> x, CVector* grad) {
    const CVector ax = a.apply(x);
    const Complex mu = dot(ax, x);  // <Ax, x>
    double axx = 0.0;
    for (const auto& z : ax) axx += std::norm(z);
    if (grad != nullptr) {
      const CVector aax = a.apply_adjoint(ax);
      const CVector asx = a.apply_adjoint(x);
      grad->resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        (*grad)[i] = aax[i] - std::conj(mu) * ax[i] - mu * asx[i];
    }
    return axx - std::norm(mu);
  };
  const SphereAscentResult r =
      maximize_on_sphere(a.n(), phi, sphere_options(settings, scale * scale));
  return {r.argmax, std::sqrt(std::max(0.0, r.value)), r.converged,
          r.converged_restarts};
}

LineDistance dist_to_line(const ComplexMatrix& a, const ComplexMatrix& t,
                          const OptimizerSettings& settings) {
  settings.validate();
  require_same_dim(a, t, "dist_to_line");
  const std::vector<double> sv = singular_values(t);
  const double sigma_min = sv.back();
  const double norm_t = sv.front();
  if (!(sigma_min >= 1e-8 * norm_t) || norm_t == 0.0)
    throw PreconditionError("dist_to_line: T is not bounded below, sigma_min(T)",
                            sigma_min);

  const double norm_a = spectral_norm(a);
  const double tol = settings.tol_abs * (1.0 + norm_a);
  LineDistance out;

  // Start at the Hilbert-Schmidt projection coefficient; the minimizer c
  // satisfies |c - l| sigma_min(T) <= 2 ||A - l T||.
  const Complex l = hs_inner(a, t) / hs_inner(t, t).real();
  ComplexMatrix resid = a;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) resid(i, j) -= l * t(i, j);
  const double r0 = spectral_norm(resid);
  if (r0 <= 1e-12 * (1.0 + norm_a)) {
    out.direct.center = l;
    out.direct.distance = r0;
    out.direct.degenerate = true;
    out.direct.converged = true;
  } else {
    ConvexProblem pb{l, 2.0 * r0 / sigma_min, norm_t, 1e-2 * tol, 1e-2 * tol,
                     settings.max_iters};
    out.direct = minimize_convex_2d(
        [&](Complex z) { return sigma_max_about(a, &t, z); }, pb);
    out.direct.converged = out.direct.converged &&
                           out.direct.distance - out.direct.lower_bound <= tol;
  }

  SphereObjective psi = [&a, &t](std::span<const Complex> x, CVector* grad) {
    const CVector ax = a.apply(x);
    const CVector tx = t.apply(x);
    const Complex s = dot(ax, tx);  // <Ax, Tx>
    double q = 0.0, axx = 0.0;
    for (const auto& z : tx) q += std::norm(z);
    for (const auto& z : ax) axx += std::norm(z);
    if (grad != nullptr) {
      const CVector aax = a.apply_adjoint(ax);
      const CVector tax = t.apply_adjoint(ax);
      const CVector atx = a.apply_adjoint(tx);
      const CVector ttx = t.apply_adjoint(tx);
      const double s2 = std::norm(s);
      grad->resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        (*grad)[i] = aax[i] - ((std::conj(s) * tax[i] + s * atx[i]) * q - s2 * ttx[i]) / (q * q);
    }
    return axx - std::norm(s) / q;
  };
  const double scale = a.frobenius_norm();
  const SphereAscentResult r =
      maximize_on_sphere(a.n(), psi, sphere_options(settings, scale * scale));
  out.sup = {r.argmax, std::sqrt(std::max(0.0, r.value)), r.converged,
             r.converged_restarts};
  out.agree = std::abs(out.direct.distance - out.sup.distance) <=
              1e-5 * (1.0 + norm_a);
  return out;
}

Complex center_of_mass_limit(const ComplexMatrix& a, const ComplexMatrix& t,
                             const OptimizerSettings& settings) {
  const LineDistance ld = dist_to_line(a, t, settings);
  if (ld.direct.degenerate) return ld.direct.center;
  const CVector& y = ld.sup.maximizer;
  const CVector ty = t.apply(y);
  return dot(a.apply(y), ty) / dot(ty, ty).real();
}

DistCharacterizations dist_characterizations(const ComplexMatrix& a,
                                             const OptimizerSettings& settings) {
  settings.validate();
  const std::size_t n = a.n();
  DistCharacterizations out;

  const CommutatorSearch comm = commutator_sup(a, settings);
  out.commutator_half_sup = 0.5 * comm.value;

  // ||(Id - Q) A Q|| for Q = x x* equals ||(Id - x x*) A x||.
  SphereObjective proj = [&a](std::span<const Complex> x, CVector* grad) {
    const CVector ax = a.apply(x);
    const Complex mu = dot(ax, x);
    CVector r(ax);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= mu * x[i];
    if (grad != nullptr) {
      const CVector aax = a.apply_adjoint(ax);
      const CVector asx = a.apply_adjoint(x);
      grad->resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        (*grad)[i] = aax[i] - std::conj(mu) * ax[i] - mu * asx[i];
    }
    double s = 0.0;
    for (const auto& z : r) s += std::norm(z);
    return s;
  };
  OptimizerSettings shifted = settings;
  shifted.seed = derive_seed(settings.seed, 0x9e37ULL);
  const double scale = a.frobenius_norm();
  const SphereAscentResult r =
      maximize_on_sphere(n, proj, sphere_options(shifted, scale * scale));
  const ComplexMatrix q = ComplexMatrix::outer(r.argmax, r.argmax);
  const ComplexMatrix comp = (ComplexMatrix::identity(n) - q) * a * q;
  out.rank_one_proj_sup = spectral_norm(comp);
  out.converged = comm.converged && r.converged;
  return out;
}

}  // namespace gruss
