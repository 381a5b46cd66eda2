#include "gruss/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gruss/linalg.hpp"

namespace gruss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGeoSlack = 1e-12;
constexpr double kInvPhi = 0.6180339887498949;

// Householder reduction to upper Hessenberg form.
ComplexMatrix hessenberg(ComplexMatrix h) {
  const std::size_t n = h.n();
  CVector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * xnorm;
    std::fill(v.begin(), v.end(), Complex(0.0));
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    if (normalize(v) == 0.0) continue;
    // H <- (I - 2 v v*) H
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i] * s;
    }
    // H <- H (I - 2 v v*)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

// Both eigenvalues of [[a, b], [c, d]].
std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex delta = 0.5 * (a - d);
  const Complex disc = std::sqrt(delta * delta + b * c);
  return {half_tr + disc, half_tr - disc};
}

CVector hessenberg_qr_eigenvalues(const ComplexMatrix& a,
                                  const OptimizerSettings& settings) {
  ComplexMatrix h = hessenberg(a);
  const std::size_t n = h.n();
  const double scale = std::max(h.frobenius_norm(), 1e-300);
  const double eps = std::numeric_limits<double>::epsilon();
  CVector eig;
  eig.reserve(n);

  std::vector<Complex> gc(n), gs(n);
  long hi = static_cast<long>(n) - 1;
  int iter = 0;
  int total = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(h(0, 0));
      break;
    }
    long l = hi;
    while (l > 0) {
      const double sub = std::abs(h(l, l - 1));
      double ref = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (ref == 0.0) ref = scale;
      if (sub <= eps * ref) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (l == hi - 1) {
      auto [e1, e2] = eig2(h(l, l), h(l, hi), h(hi, l), h(hi, hi));
      eig.push_back(e1);
      eig.push_back(e2);
      hi -= 2;
      iter = 0;
      continue;
    }
    if (++total > settings.max_iters * static_cast<int>(n))
      throw ConvergenceError("spectrum: shifted QR did not converge");
    ++iter;

    Complex mu;
    if (iter % 11 == 0) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + Complex(0.75, 0.43) * std::abs(h(hi, hi - 1));
    } else {
      const Complex a11 = h(hi - 1, hi - 1), a12 = h(hi - 1, hi);
      const Complex a21 = h(hi, hi - 1), a22 = h(hi, hi);
      auto [e1, e2] = eig2(a11, a12, a21, a22);
      mu = std::abs(e1 - a22) < std::abs(e2 - a22) ? e1 : e2;
    }

    for (long k = l; k <= hi; ++k) h(k, k) -= mu;
    for (long k = l; k < hi; ++k) {
      const Complex x = h(k, k);
      const Complex y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Complex c = 1.0, s = 0.0;
      if (r > 0.0) {
        c = x / r;
        s = y / r;
      }
      gc[k] = c;
      gs[k] = s;
      for (long j = k; j <= hi; ++j) {
        const Complex hk = h(k, j);
        const Complex hk1 = h(k + 1, j);
        h(k, j) = std::conj(c) * hk + std::conj(s) * hk1;
        h(k + 1, j) = -s * hk + c * hk1;
      }
    }
    for (long k = l; k < hi; ++k) {
      const Complex c = gc[k];
      const Complex s = gs[k];
      const long last = std::min(k + 1, hi);
      for (long i = l; i <= last; ++i) {
        const Complex hk = h(i, k);
        const Complex hk1 = h(i, k + 1);
        h(i, k) = hk * c + hk1 * s;
        h(i, k + 1) = -hk * std::conj(s) + hk1 * std::conj(c);
      }
    }
    for (long k = l; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

ComplexMatrix rotated_hermitian_part(const ComplexMatrix& a, double theta) {
  const std::size_t n = a.n();
  const Complex e = std::polar(1.0, -theta);
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      h(i, j) = 0.5 * (e * a(i, j) + std::conj(e * a(j, i)));
  return h;
}

Disc disc_from(Complex a) { return {a, 0.0}; }

Disc disc_from(Complex a, Complex b) {
  return {0.5 * (a + b), 0.5 * std::abs(a - b)};
}

Disc disc_from(Complex a, Complex b, Complex c) {
  const Complex bp = b - a;
  const Complex cp = c - a;
  const double d = 2.0 * (bp.real() * cp.imag() - bp.imag() * cp.real());
  const double scale = std::max({std::abs(bp), std::abs(cp), 1e-300});
  if (std::abs(d) <= 1e-14 * scale * scale) {
    // Collinear: the widest pair spans all three.
    Disc best = disc_from(a, b);
    for (const Disc& cand : {disc_from(a, c), disc_from(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double b2 = std::norm(bp);
  const double c2 = std::norm(cp);
  const Complex u((cp.imag() * b2 - bp.imag() * c2) / d,
                  (bp.real() * c2 - cp.real() * b2) / d);
  return {a + u, std::abs(u)};
}

bool inside(const Disc& d, Complex p) {
  return std::abs(p - d.center) <= d.radius + kGeoSlack * (1.0 + d.radius);
}

}  // namespace

CVector spectrum(const ComplexMatrix& a, const OptimizerSettings& settings) {
  if (a.empty()) throw DimensionError("spectrum: empty matrix");
  if (a.hermitian_defect() <= 1e-14 * (1.0 + a.frobenius_norm())) {
    const auto values = hermitian_eig_unchecked(a).values;
    return CVector(values.begin(), values.end());
  }
  return hessenberg_qr_eigenvalues(a, settings);
}

double spectral_radius(const ComplexMatrix& a,
                       const OptimizerSettings& settings) {
  double r = 0.0;
  for (const Complex& z : spectrum(a, settings)) r = std::max(r, std::abs(z));
  return r;
}

Disc smallest_enclosing_disc(std::span<const Complex> points) {
  if (points.empty())
    throw Error("smallest_enclosing_disc: empty point set");
  for (const Complex& p : points)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw Error("smallest_enclosing_disc: non-finite point");

  CVector pts(points.begin(), points.end());
  std::mt19937 shuffle_rng(0x5eedu);
  std::shuffle(pts.begin(), pts.end(), shuffle_rng);

  Disc d = disc_from(pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (inside(d, pts[i])) continue;
    d = disc_from(pts[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(d, pts[j])) continue;
      d = disc_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (inside(d, pts[k])) continue;
        d = disc_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return d;
}

NumericalRange::NumericalRange(const ComplexMatrix& a,
                               const OptimizerSettings& settings)
    : a_(a), settings_(settings) {
  settings_.validate();
  const auto m = static_cast<std::size_t>(settings_.grid_angles);
  boundary_.resize(m);
  support_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    TopEigen top = hermitian_top(rotated_hermitian_part(a_, angle(k)));
    CVector ax = a_.apply(top.vector);
    boundary_[k] = dot(ax, top.vector);
    support_[k] = top.value;
  }
}

double NumericalRange::angle(std::size_t k) const {
  return kTwoPi * static_cast<double>(k) / settings_.grid_angles;
}

double NumericalRange::support_at(double theta, Complex z) const {
  return hermitian_top(rotated_hermitian_part(a_, theta)).value -
         (std::polar(1.0, -theta) * z).real();
}

double NumericalRange::radius_about(Complex z) const {
  const std::size_t m = support_.size();
  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k)
    g[k] = support_[k] - (std::polar(1.0, -angle(k)) * z).real();
  const double best = *std::max_element(g.begin(), g.end());

  // Grid error of a support function is O(||A|| dtheta^2); any local maximum
  // within twice that of the best sample might hide the true maximum.
  const double step = kTwoPi / static_cast<double>(m);
  const double scale = a_.frobenius_norm() + std::abs(z) * std::sqrt(double(a_.n()));
  const double window = 2.0 * scale * step * step;
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < m; ++k) {
    const double prev = g[(k + m - 1) % m];
    const double next = g[(k + 1) % m];
    if (g[k] >= prev && g[k] >= next && g[k] >= best - window) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t i, std::size_t j) { return g[i] > g[j]; });
  if (peaks.size() > 4) peaks.resize(4);

  double w = std::max(best, 0.0);
  for (std::size_t k : peaks) {
    double lo = angle(k) - step;
    double hi = angle(k) + step;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = support_at(x1, z);
    double f2 = support_at(x2, z);
    for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = support_at(x2, z);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = support_at(x1, z);
      }
    }
    w = std::max({w, f1, f2});
  }
  return w;
}

Complex NumericalRange::boundary_at(double theta) const {
  const TopEigen top = hermitian_top(rotated_hermitian_part(a_, theta));
  return dot(a_.apply(top.vector), top.vector);
}

Disc NumericalRange::enclosing_disc() const {
  // The grid SED is only as good as the angular spacing. Zoom in on the
  // farthest samples and add exact boundary points there; each pass moves
  // the sampled disc toward the disc of W(A) itself.
  CVector pts = boundary_;
  const std::size_t m = boundary_.size();
  const double step = kTwoPi / static_cast<double>(m);
  Disc d = smallest_enclosing_disc(pts);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<std::size_t> order(m);
    for (std::size_t k = 0; k < m; ++k) order[k] = k;
    auto dist = [&](std::size_t k) { return std::abs(boundary_[k] - d.center); };
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(m, 8),
                      order.end(),
                      [&](std::size_t i, std::size_t j) { return dist(i) > dist(j); });
    // At most three candidates, one per cluster of neighbouring angles.
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < std::min<std::size_t>(m, 8) && picks.size() < 3; ++i) {
      const std::size_t k = order[i];
      bool near = false;
      for (std::size_t q : picks) {
        const std::size_t gap = k > q ? k - q : q - k;
        near = near || std::min(gap, m - gap) <= 2;
      }
      if (!near) picks.push_back(k);
    }
    for (std::size_t k : picks) {
      double t0 = angle(k);
      double half = step;
      for (int round = 0; round < 4; ++round) {
        double best = -1.0;
        double best_t = t0;
        for (int j = -4; j <= 4; ++j) {
          const double t = t0 + half * j / 4.0;
          const Complex z = boundary_at(t);
          pts.push_back(z);
          if (std::abs(z - d.center) > best) {
            best = std::abs(z - d.center);
            best_t = t;
          }
        }
        t0 = best_t;
        half *= 0.25;
      }
    }
    d = smallest_enclosing_disc(pts);
  }
  return {d.center, std::max(d.radius, radius_about(d.center))};
}

CVector numerical_range_boundary(const ComplexMatrix& a,
                                 const OptimizerSettings& settings) {
  return NumericalRange(a, settings).boundary();
}

double numerical_radius(const ComplexMatrix& a,
                        const OptimizerSettings& settings) {
  return NumericalRange(a, settings).radius_about(0.0);
}

Disc numerical_range_disc(const ComplexMatrix& a,
                          const OptimizerSettings& settings) {
  return NumericalRange(a, settings).enclosing_disc();
}

NormaloidCheck is_normaloid(const ComplexMatrix& a, double tol) {
  const double norm = spectral_norm(a);
  const double residual = norm - spectral_radius(a);
  return {residual <= tol * norm, residual};
}

TransloidCheck is_transloid_sampled(const ComplexMatrix& a,
                                    std::span<const Complex> shifts,
                                    double tol) {
  if (shifts.empty()) throw Error("is_transloid_sampled: no shifts given");
  TransloidCheck out{true, shifts.front(), -1.0};
  for (const Complex& mu : shifts) {
    const NormaloidCheck c = is_normaloid(a.shifted(mu), tol);
    if (c.residual > out.worst_residual) {
      out.worst_residual = c.residual;
      out.worst_shift = mu;
    }
    if (!c.normaloid) out.passed = false;
  }
  return out;
}

}  // namespace gruss
