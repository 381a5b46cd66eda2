// Reference computations for the tests. Everything here is independent of
// the library's numerics: Eigen supplies decompositions and std::mt19937_64
// supplies randomness, so agreement is meaningful.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "gruss/matrix.hpp"

namespace oracle {

using gruss::Complex;
using gruss::ComplexMatrix;
using Mat = Eigen::MatrixXcd;

inline Mat to_eigen(const ComplexMatrix& a) {
  Mat m(a.n(), a.n());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) m(i, j) = a(i, j);
  return m;
}

inline ComplexMatrix from_eigen(const Mat& m) {
  ComplexMatrix a(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double normal() { return norm_(gen_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  Complex cnormal() { return {normal() / std::sqrt(2.0), normal() / std::sqrt(2.0)}; }

  ComplexMatrix ginibre(std::size_t n) {
    ComplexMatrix a(n);
    for (auto& z : a.entries()) z = cnormal();
    return a;
  }
  ComplexMatrix hermitian(std::size_t n) {
    const ComplexMatrix g = ginibre(n);
    return (g + g.adjoint()) * Complex(0.5);
  }
  ComplexMatrix unitary(std::size_t n) {
    Eigen::HouseholderQR<Mat> qr(to_eigen(ginibre(n)));
    return from_eigen(qr.householderQ() * Mat::Identity(n, n));
  }
  ComplexMatrix normal_matrix(std::size_t n) {
    const ComplexMatrix u = unitary(n);
    std::vector<Complex> d(n);
    for (auto& z : d) z = cnormal();
    return u * ComplexMatrix::diagonal(d) * u.adjoint();
  }
  // G G* / tr with G of shape n x k.
  ComplexMatrix state(std::size_t n, std::size_t k) {
    Mat g(n, k);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cnormal();
    Mat p = g * g.adjoint();
    p /= p.trace().real();
    return from_eigen(p);
  }
  std::vector<Complex> unit_vector(std::size_t n) {
    std::vector<Complex> x(n);
    double s = 0.0;
    for (auto& z : x) {
      z = cnormal();
      s += std::norm(z);
    }
    for (auto& z : x) z /= std::sqrt(s);
    return x;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> norm_;
};

/// Bitwise equality of two matrices.
inline bool same_entries(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.n() == b.n() && std::ranges::equal(a.entries(), b.entries());
}

inline double spectral_norm(const ComplexMatrix& a) {
  return Eigen::JacobiSVD<Mat>(to_eigen(a)).singularValues()(0);
}

inline std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<Mat> es(to_eigen(a), false);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()(i));
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(to_eigen(h), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

inline double spectral_radius(const ComplexMatrix& a) {
  double r = 0.0;
  for (const Complex& z : eigenvalues(a)) r = std::max(r, std::abs(z));
  return r;
}

/// Largest distance from each point of `a` to the nearest point of `b`,
/// symmetrized: a multiset distance good enough for comparing spectra.
inline double matching_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  // Greedy matching on sorted-by-real order is not exact; use assignment by
  // repeated nearest pairs, fine for tiny sizes.
  while (!a.empty()) {
    std::size_t bi = 0, bj = 0;
    double best = INFINITY;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (std::abs(a[i] - b[j]) < best) {
          best = std::abs(a[i] - b[j]);
          bi = i;
          bj = j;
        }
    worst = std::max(worst, best);
    a.erase(a.begin() + static_cast<long>(bi));
    b.erase(b.begin() + static_cast<long>(bj));
  }
  return worst;
}

/// Minimizes a convex function of a complex variable over the square
/// |Re - Re c|, |Im - Im c| <= half by nested golden-section search. The
/// inner minimum over Im is convex in Re, so both searches are exact up to
/// the bracket tolerance.
inline std::pair<Complex, double> convex_minimize(
    const std::function<double(Complex)>& f, Complex center, double half,
    int iters = 90) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto golden = [&](double lo, double hi, auto&& h) {
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = h(x1), f2 = h(x2);
    for (int k = 0; k < iters; ++k) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = h(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = h(x2);
      }
    }
    return 0.5 * (a + b);
  };
  auto inner_arg = [&](double x) {
    return golden(center.imag() - half, center.imag() + half,
                  [&](double y) { return f(Complex(x, y)); });
  };
  const double x = golden(center.real() - half, center.real() + half,
                          [&](double xx) { return f(Complex(xx, inner_arg(xx))); });
  const Complex best(x, inner_arg(x));
  return {best, f(best)};
}

/// Smallest enclosing disc by exhaustive search over the circles through
/// every pair (as diameter) and every triple of points.
inline std::pair<Complex, double> enclosing_disc(const std::vector<Complex>& pts) {
  const std::size_t m = pts.size();
  if (m == 1) return {pts[0], 0.0};
  auto covers = [&](Complex c, double r) {
    for (const auto& z : pts)
      if (std::abs(z - c) > r * (1.0 + 1e-12) + 1e-12) return false;
    return true;
  };
  Complex best_c = pts[0];
  double best_r = INFINITY;
  auto consider = [&](Complex c, double r) {
    if (r < best_r && covers(c, r)) {
      best_r = r;
      best_c = c;
    }
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const Complex c = 0.5 * (pts[i] + pts[j]);
      consider(c, std::abs(pts[i] - c));
      for (std::size_t k = j + 1; k < m; ++k) {
        const Complex a = pts[i], b = pts[j], e = pts[k];
        const double d = 2.0 * (a.real() * (b.imag() - e.imag()) +
                                b.real() * (e.imag() - a.imag()) +
                                e.real() * (a.imag() - b.imag()));
        if (std::abs(d) < 1e-14) continue;
        const double a2 = std::norm(a), b2 = std::norm(b), e2 = std::norm(e);
        const Complex cc((a2 * (b.imag() - e.imag()) + b2 * (e.imag() - a.imag()) +
                          e2 * (a.imag() - b.imag())) / d,
                         (a2 * (e.real() - b.real()) + b2 * (a.real() - e.real()) +
                          e2 * (b.real() - a.real())) / d);
        consider(cc, std::max({std::abs(a - cc), std::abs(b - cc), std::abs(e - cc)}));
      }
    }
  return {best_c, best_r};
}

/// min over lambda of ||A - lambda Id||, searched in the square around
/// tr(A)/n that contains the disc where the minimizer must lie.
inline std::pair<Complex, double> dist_to_scalars(const ComplexMatrix& a,
                                                  int iters = 70) {
  const Complex tau = a.trace() / static_cast<double>(a.n());
  const double r = oracle::spectral_norm(a.shifted(tau));
  auto f = [&](Complex l) { return oracle::spectral_norm(a.shifted(l)); };
  return convex_minimize(f, tau, r + 1e-12, iters);
}

/// w(A) as the max over a fine angle grid of lambda_max(Re(e^{-i t} A)).
inline double numerical_radius(const ComplexMatrix& a, int angles = 4096) {
  const Mat m = to_eigen(a);
  double w = 0.0;
  for (int k = 0; k < angles; ++k) {
    const double t = 2.0 * M_PI * k / angles;
    const Mat h = 0.5 * (std::polar(1.0, -t) * m + std::polar(1.0, t) * m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    w = std::max(w, es.eigenvalues()(es.eigenvalues().size() - 1));
  }
  return w;
}

/// max over sampled unit vectors of |<Ax, x>|; a lower estimate of w(A).
inline double sampled_numerical_radius(const ComplexMatrix& a, int samples,
                                       std::uint64_t seed) {
  Rng rng(seed);
  double w = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto x = rng.unit_vector(a.n());
    const auto ax = a.apply(x);
    Complex q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) q += ax[i] * std::conj(x[i]);
    w = std::max(w, std::abs(q));
  }
  return w;
}

/// tr(P A T) - tr(P A) tr(P T), straight from the definition.
inline Complex v_p(const ComplexMatrix& a, const ComplexMatrix& t,
                   const ComplexMatrix& p) {
  const Mat pe = to_eigen(p), ae = to_eigen(a), te = to_eigen(t);
  return (pe * ae * te).trace() - (pe * ae).trace() * (pe * te).trace();
}

}  // namespace oracle
