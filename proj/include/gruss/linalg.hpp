#pragma once

#include <vector>

#include "gruss/matrix.hpp"

namespace gruss {

struct HermitianEig {
  std::vector<double> values;   // ascending
  ComplexMatrix vectors;        // column k pairs with values[k]
};

/// Cyclic complex Jacobi eigensolver. Rejects input whose Hermitian defect
/// ||H - H*||_F exceeds eps_herm * (1 + ||H||_F).
HermitianEig hermitian_eig(const ComplexMatrix& h, double eps_herm = 1e-9);

/// Same solver without the Hermitian check; only the upper triangle is read.
HermitianEig hermitian_eig_unchecked(const ComplexMatrix& h);

/// Largest eigenvalue and a unit eigenvector, upper triangle only.
struct TopEigen {
  double value = 0.0;
  CVector vector;
};
TopEigen hermitian_top(const ComplexMatrix& h);

/// Dominant singular triple A v = sigma u.
struct SingularTriple {
  double sigma = 0.0;
  CVector u;
  CVector v;
};
SingularTriple top_singular(const ComplexMatrix& a);

/// sigma_max(A), computed as sqrt(lambda_max(A* A)).
double spectral_norm(const ComplexMatrix& a);

/// All singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& a);

/// |A| = (A* A)^{1/2}
ComplexMatrix abs_value(const ComplexMatrix& a);

/// Principal square root of a Hermitian PSD matrix; eigenvalues below
/// `clamp` are set to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& p, double clamp = 1e-9);

/// A^* A, formed directly.
ComplexMatrix gram(const ComplexMatrix& a);

/// Schatten p-norm (p >= 1).
double schatten_norm(const ComplexMatrix& a, double p);

/// <A, B>_2 = tr(A B*)
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

struct TraceFunctionals {
  Complex trace;
  double schatten_p = 0.0;
  Complex hs_inner;
};
TraceFunctionals trace_functionals(const ComplexMatrix& a,
                                   const ComplexMatrix& b, double p);

/// tr(A B) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gruss
