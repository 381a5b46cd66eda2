#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gruss {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Error hierarchy. Every failure carries a human-readable diagnostic; the
// CLI maps PreconditionError to a mathematical-violation exit code and the
// rest to usage/IO errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A violated mathematical precondition. `predicate` names what failed and
/// `residual` holds the measured quantity that tripped it.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string predicate, double residual);

  const std::string& predicate() const { return predicate_; }
  double residual() const { return residual_; }

 private:
  std::string predicate_;
  double residual_;
};

/// Dense square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of dimension n.
  explicit ComplexMatrix(std::size_t n);
  /// Row-major entries; throws DimensionError unless entries.size() == n*n,
  /// Error on non-finite entries.
  ComplexMatrix(std::size_t n, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> d);
  static ComplexMatrix diagonal(std::initializer_list<Complex> d);
  /// x y* (rank one operator z -> <z, y> x).
  static ComplexMatrix outer(std::span<const Complex> x,
                             std::span<const Complex> y);

  std::size_t n() const { return n_; }
  bool empty() const { return n_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// ||A - A*||_F
  double hermitian_defect() const;
  /// ||A A* - A* A||_F
  double normality_defect() const;
  bool all_finite() const;

  CVector apply(std::span<const Complex> x) const;
  /// A* x without forming the adjoint.
  CVector apply_adjoint(std::span<const Complex> x) const;

  /// A - z Id
  ComplexMatrix shifted(Complex z) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what);

Complex dot(std::span<const Complex> x, std::span<const Complex> y);  // y* x
double norm2(std::span<const Complex> x);
/// Scales x to unit length; returns the original norm.
double normalize(std::span<Complex> x);

/// Tolerances, restart counts and grid sizes shared by every iterative
/// routine in the library.
struct OptimizerSettings {
  double tol_abs = 1e-8;
  double tol_rel = 1e-8;
  int restarts = 32;
  int grid_angles = 256;
  int max_iters = 2000;
  std::uint64_t seed = 42;
  double eps_herm = 1e-9;
  double eps_psd = 1e-9;
  double eps_tr = 1e-9;

  /// Throws Error when a field is out of range.
  void validate() const;
};

/// Positive semidefinite, unit-trace matrix. Construction validates the
/// invariants; the stored matrix is the Hermitian part of the input.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m,
                           const OptimizerSettings& settings = {});

  static DensityOperator maximally_mixed(std::size_t n);
  /// x x* / ||x||^2
  static DensityOperator pure(std::span<const Complex> x);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t n() const { return m_.n(); }

 private:
  struct Unchecked {};
  DensityOperator(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

}  // namespace gruss
