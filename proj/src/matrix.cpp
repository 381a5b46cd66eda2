#include "gruss/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gruss/linalg.hpp"

namespace gruss {

namespace {

std::string describe(const std::string& predicate, double residual) {
  std::ostringstream os;
  os << predicate << " (residual " << residual << ")";
  return os.str();
}

}  // namespace

PreconditionError::PreconditionError(std::string predicate, double residual)
    : Error(describe(predicate, residual)),
      predicate_(std::move(predicate)),
      residual_(residual) {}

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), data_(std::move(entries)) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
  if (data_.size() != n * n) {
    throw DimensionError("expected " + std::to_string(n * n) +
                         " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) throw Error("matrix has non-finite entries");
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw Error("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> d) {
  return diagonal(std::span<const Complex>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> x,
                                   std::span<const Complex> y) {
  if (x.size() != y.size()) throw DimensionError("outer: length mismatch");
  ComplexMatrix m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_defect() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(s);
}

double ComplexMatrix::normality_defect() const {
  const ComplexMatrix a_star = adjoint();
  return ((*this) * a_star - a_star * (*this)).frobenius_norm();
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CVector ComplexMatrix::apply(std::span<const Complex> x) const {
  if (x.size() != n_) throw DimensionError("apply: length mismatch");
  CVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s = 0.0;
    const Complex* row = &data_[i * n_];
    for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

CVector ComplexMatrix::apply_adjoint(std::span<const Complex> x) const {
  if (x.size() != n_) throw DimensionError("apply_adjoint: length mismatch");
  CVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Complex* row = &data_[i * n_];
    for (std::size_t j = 0; j < n_; ++j) y[j] += std::conj(row[j]) * x[i];
  }
  return y;
}

ComplexMatrix ComplexMatrix::shifted(Complex z) const {
  ComplexMatrix m = *this;
  for (std::size_t i = 0; i < n_; ++i) m(i, i) -= z;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matrix product");
  const std::size_t n = a.n();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  if (a.n() != b.n()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.n()) + " vs " +
                         std::to_string(b.n()) + ")");
  }
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(y[i]) * x[i];
  return s;
}

double norm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

double normalize(std::span<Complex> x) {
  const double r = norm2(x);
  if (r > 0.0)
    for (auto& z : x) z /= r;
  return r;
}

void OptimizerSettings::validate() const {
  if (!(tol_abs > 0.0) || !(tol_rel > 0.0))
    throw Error("optimizer tolerances must be positive");
  if (!(eps_herm > 0.0) || !(eps_psd > 0.0) || !(eps_tr > 0.0))
    throw Error("structural tolerances must be positive");
  if (restarts < 1) throw Error("restarts must be at least 1");
  if (grid_angles < 8) throw Error("gridAngles must be at least 8");
  if (max_iters < 1) throw Error("maxIters must be at least 1");
}

DensityOperator::DensityOperator(ComplexMatrix m,
                                 const OptimizerSettings& settings) {
  if (m.empty()) throw DimensionError("density operator must be non-empty");
  const double herm = m.hermitian_defect();
  if (herm > settings.eps_herm * (1.0 + m.frobenius_norm()))
    throw PreconditionError("density operator is not Hermitian", herm);
  // Keep the exactly Hermitian part so downstream traces are real.
  ComplexMatrix h(m.n());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j)
      h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  const double tr_err = std::abs(h.trace() - 1.0);
  if (tr_err > settings.eps_tr)
    throw PreconditionError("density operator trace differs from 1", tr_err);
  const double min_eig = hermitian_eig_unchecked(h).values.front();
  if (min_eig < -settings.eps_psd)
    throw PreconditionError("density operator is not positive semidefinite",
                            min_eig);
  m_ = std::move(h);
}

DensityOperator DensityOperator::maximally_mixed(std::size_t n) {
  if (n == 0) throw DimensionError("density operator must be non-empty");
  return DensityOperator(ComplexMatrix::identity(n) * Complex(1.0 / n),
                         Unchecked{});
}

DensityOperator DensityOperator::pure(std::span<const Complex> x) {
  CVector u(x.begin(), x.end());
  if (u.empty() || normalize(u) == 0.0)
    throw PreconditionError("pure state needs a nonzero vector", 0.0);
  return DensityOperator(ComplexMatrix::outer(u, u), Unchecked{});
}

}  // namespace gruss
