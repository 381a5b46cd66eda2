#include "gruss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gruss {

namespace {

constexpr int kMaxSweeps = 100;

// Off-diagonal mass of the strict upper triangle.
double off_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.n(); ++p)
    for (std::size_t q = p + 1; q < a.n(); ++q) s += std::norm(a(p, q));
  return s;
}

}  // namespace

HermitianEig hermitian_eig_unchecked(const ComplexMatrix& h) {
  const std::size_t n = h.n();
  if (n == 0) throw DimensionError("hermitian_eig: empty matrix");

  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = h(i, j);
      a(j, i) = std::conj(h(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double stop = 1e-15 * scale;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_norm2(a);
    if (off == 0.0 || std::sqrt(off) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && g <= 1e-18 * std::abs(app) && g <= 1e-18 * std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex e = apq / g;
        const Complex ec = std::conj(e);

        // A <- A J, J = [[c, s], [-s e*, c e*]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
        }
        // A <- J* A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * ec * vkq;
          v(k, q) = s * vkp + c * ec * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEig out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& h, double eps_herm) {
  const double defect = h.hermitian_defect();
  if (defect > eps_herm * (1.0 + h.frobenius_norm()))
    throw PreconditionError("hermitian_eig: input is not Hermitian, ||H - H*||_F",
                            defect);
  return hermitian_eig_unchecked(h);
}

TopEigen hermitian_top(const ComplexMatrix& h) {
  HermitianEig e = hermitian_eig_unchecked(h);
  const std::size_t n = h.n();
  TopEigen top{e.values.back(), CVector(n)};
  for (std::size_t i = 0; i < n; ++i) top.vector[i] = e.vectors(i, n - 1);
  return top;
}

ComplexMatrix gram(const ComplexMatrix& a) {
  const std::size_t n = a.n();
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += std::conj(a(k, i)) * a(k, j);
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  return g;
}

SingularTriple top_singular(const ComplexMatrix& a) {
  TopEigen top = hermitian_top(gram(a));
  SingularTriple t;
  t.v = std::move(top.vector);
  t.u = a.apply(t.v);
  const double r = normalize(t.u);
  t.sigma = r;
  if (r == 0.0) {
    t.u.assign(a.n(), 0.0);
    t.u[0] = 1.0;
  }
  return t;
}

double spectral_norm(const ComplexMatrix& a) {
  return std::sqrt(std::max(0.0, hermitian_top(gram(a)).value));
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  std::vector<double> ev = hermitian_eig_unchecked(gram(a)).values;
  std::vector<double> s(ev.rbegin(), ev.rend());
  for (auto& x : s) x = std::sqrt(std::max(0.0, x));
  return s;
}

namespace {

ComplexMatrix reassemble(const HermitianEig& e, auto&& f) {
  const std::size_t n = e.vectors.n();
  ComplexMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) += fk * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return m;
}

}  // namespace

ComplexMatrix abs_value(const ComplexMatrix& a) {
  return reassemble(hermitian_eig_unchecked(gram(a)),
                    [](double x) { return std::sqrt(std::max(0.0, x)); });
}

ComplexMatrix psd_sqrt(const ComplexMatrix& p, double clamp) {
  return reassemble(hermitian_eig_unchecked(p), [clamp](double x) {
    return x <= clamp ? 0.0 : std::sqrt(x);
  });
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (!(p >= 1.0)) throw Error("schatten_norm: p must be at least 1");
  const std::vector<double> s = singular_values(a);
  const double top = s.front();
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : s) acc += std::pow(x / top, p);
  return top * std::pow(acc, 1.0 / p);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "hs_inner");
  // tr(A B*) = sum_ij A_ij conj(B_ij)
  Complex s = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) s += ea[k] * std::conj(eb[k]);
  return s;
}

TraceFunctionals trace_functionals(const ComplexMatrix& a,
                                   const ComplexMatrix& b, double p) {
  require_same_dim(a, b, "trace_functionals");
  return {a.trace(), schatten_norm(a, p), hs_inner(a, b)};
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t k = 0; k < a.n(); ++k) s += a(i, k) * b(k, i);
  return s;
}

}  // namespace gruss
