#pragma once

#include <vector>

#include "gruss/matrix.hpp"

namespace gruss {

/// Closed disc in the complex plane.
struct Disc {
  Complex center;
  double radius = 0.0;

  bool contains(Complex z, double slack = 0.0) const {
    return std::abs(z - center) <= radius + slack;
  }
};

/// Eigenvalues with multiplicity. Hermitian input goes through the Jacobi
/// solver; everything else through Hessenberg reduction and shifted QR.
CVector spectrum(const ComplexMatrix& a, const OptimizerSettings& settings = {});

double spectral_radius(const ComplexMatrix& a,
                       const OptimizerSettings& settings = {});

/// Minimal disc containing a finite point set (randomized incremental
/// construction with a fixed shuffle, so the result is deterministic).
Disc smallest_enclosing_disc(std::span<const Complex> points);

/// <A x, x> for a top eigenvector x of Re(e^{-i theta} A) at each of
/// settings.grid_angles equally spaced angles.
CVector numerical_range_boundary(const ComplexMatrix& a,
                                 const OptimizerSettings& settings = {});

/// Support function of W(A) sampled once on the angle grid. Shifting A by
/// z Id only subtracts Re(e^{-i theta} z) from each sample, so w(A - z Id)
/// for many z reuses the same eigen-solves.
class NumericalRange {
 public:
  NumericalRange(const ComplexMatrix& a, const OptimizerSettings& settings);

  const CVector& boundary() const { return boundary_; }
  const std::vector<double>& support() const { return support_; }
  double angle(std::size_t k) const;

  /// lambda_max(Re(e^{-i theta} (A - z Id)))
  double support_at(double theta, Complex z = 0.0) const;
  /// w(A - z Id), grid maximum refined by golden-section search.
  double radius_about(Complex z) const;
  /// Point of W(A) maximizing Re(e^{-i theta} z).
  Complex boundary_at(double theta) const;
  Disc enclosing_disc() const;

 private:
  ComplexMatrix a_;
  OptimizerSettings settings_;
  CVector boundary_;
  std::vector<double> support_;
};

double numerical_radius(const ComplexMatrix& a,
                        const OptimizerSettings& settings = {});

/// Disc D(center, R) containing W(A). The center is the smallest enclosing
/// disc of the sampled boundary; the radius is w(A - center Id), so the disc
/// provably contains W(A) and its radius equals the numerical radius of the
/// recentred operator.
Disc numerical_range_disc(const ComplexMatrix& a,
                          const OptimizerSettings& settings = {});

struct NormaloidCheck {
  bool normaloid = false;
  double residual = 0.0;  // ||A|| - r(A)
};
NormaloidCheck is_normaloid(const ComplexMatrix& a, double tol = 1e-8);

struct TransloidCheck {
  bool passed = false;
  Complex worst_shift;
  double worst_residual = 0.0;
};
/// Necessary-condition sampler: A - mu Id normaloid for each sampled mu.
TransloidCheck is_transloid_sampled(const ComplexMatrix& a,
                                    std::span<const Complex> shifts,
                                    double tol = 1e-8);

}  // namespace gruss
