#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gruss/linalg.hpp"
#include "oracles.hpp"

using namespace gruss;

namespace {

const ComplexMatrix kJ2{{0.0, 1.0}, {0.0, 0.0}};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

}  // namespace

TEST_CASE("hermitian_eig on small exact cases") {
  auto e = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0}));
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(3.0));

  e = hermitian_eig(ComplexMatrix{{0.0, 0.5}, {0.5, 0.0}});
  CHECK(e.values[0] == doctest::Approx(-0.5));
  CHECK(e.values[1] == doctest::Approx(0.5));

  e = hermitian_eig(ComplexMatrix::identity(3) * Complex(5.0));
  for (double v : e.values) CHECK(v == doctest::Approx(5.0));
  const ComplexMatrix gram_v = e.vectors.adjoint() * e.vectors;
  CHECK(max_abs_diff(gram_v, ComplexMatrix::identity(3)) < 1e-14);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input with the defect norm") {
  const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  try {
    hermitian_eig(m);
    FAIL("accepted a non-Hermitian matrix");
  } catch (const PreconditionError& e) {
    CHECK(e.residual() == doctest::Approx(m.hermitian_defect()));
  }
}

TEST_CASE("hermitian_eig reconstruction and agreement with Eigen") {
  oracle::Rng rng(101);
  for (std::size_t n = 2; n <= 10; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix h = rng.hermitian(n);
      const HermitianEig e = hermitian_eig(h);
      std::vector<Complex> d(e.values.begin(), e.values.end());
      const ComplexMatrix rebuilt =
          e.vectors * ComplexMatrix::diagonal(d) * e.vectors.adjoint();
      const double norm = oracle::spectral_norm(h);
      CHECK(oracle::spectral_norm(rebuilt - h) <= 1e-9 * norm);
      CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors,
                         ComplexMatrix::identity(n)) < 1e-12);
      CHECK(std::is_sorted(e.values.begin(), e.values.end()));
      const auto ref = oracle::hermitian_eigenvalues(h);
      for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(e.values[k] - ref[k]) < 1e-10 * (1.0 + norm));
    }
}

TEST_CASE("spectral norm examples and oracle agreement") {
  CHECK(spectral_norm(ComplexMatrix::diagonal({1.0, 3.0})) == doctest::Approx(3.0));
  CHECK(spectral_norm(kJ2) == doctest::Approx(1.0));
  CHECK(spectral_norm(ComplexMatrix(3)) == 0.0);

  oracle::Rng rng(7);
  for (std::size_t n = 1; n <= 8; ++n)
    for (int t = 0; t < 25; ++t) {
      const ComplexMatrix a = rng.ginibre(n);
      const double ref = oracle::spectral_norm(a);
      CHECK(std::abs(spectral_norm(a) - ref) <= 1e-10 * ref);
      CHECK(std::abs(spectral_norm(a.adjoint()) - ref) <= 1e-10 * ref);
      CHECK(std::abs(spectral_norm(abs_value(a)) - ref) <= 1e-10 * ref);
      const auto sv = singular_values(a);
      const auto esv = Eigen::JacobiSVD<oracle::Mat>(oracle::to_eigen(a)).singularValues();
      for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(sv[k] - esv(static_cast<Eigen::Index>(k))) <= 1e-7 * (1.0 + ref));
      const SingularTriple st = top_singular(a);
      CHECK(std::abs(st.sigma - ref) <= 1e-10 * ref);
      const CVector av = a.apply(st.v);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(av[i] - st.sigma * st.u[i]) < 1e-8 * (1.0 + ref));
    }
}

TEST_CASE("absolute value") {
  CHECK(max_abs_diff(abs_value(kJ2), ComplexMatrix::diagonal({0.0, 1.0})) < 1e-14);
  CHECK(max_abs_diff(abs_value(ComplexMatrix::diagonal({-2.0, 3.0})),
                     ComplexMatrix::diagonal({2.0, 3.0})) < 1e-14);
  oracle::Rng rng(9);
  const ComplexMatrix g = rng.ginibre(4);
  const ComplexMatrix psd = g * g.adjoint();
  CHECK(max_abs_diff(abs_value(psd), psd) < 1e-11);
  // |A|^2 = A* A
  const ComplexMatrix a = rng.ginibre(5);
  const ComplexMatrix m = abs_value(a);
  CHECK(max_abs_diff(m * m, a.adjoint() * a) < 1e-10);
}

TEST_CASE("psd square root") {
  oracle::Rng rng(19);
  for (std::size_t n : {1u, 2u, 4u, 6u}) {
    const ComplexMatrix p = rng.state(n, std::max<std::size_t>(1, n / 2));
    const ComplexMatrix r = psd_sqrt(p, 0.0);
    CHECK(max_abs_diff(r * r, p) < 1e-12);
    CHECK(r.hermitian_defect() < 1e-13);
    for (double v : oracle::hermitian_eigenvalues(r)) CHECK(v > -1e-12);
  }
}

TEST_CASE("trace functionals examples") {
  TraceFunctionals f = trace_functionals(kJ2, kJ2, 2.0);
  CHECK(f.schatten_p == doctest::Approx(1.0));
  CHECK(std::abs(f.hs_inner - 1.0) < 1e-15);
  CHECK(std::abs(f.trace) == 0.0);

  const ComplexMatrix id = ComplexMatrix::identity(2);
  CHECK(std::abs(trace_functionals(id, id, 1.0).hs_inner - 2.0) < 1e-15);

  f = trace_functionals(ComplexMatrix::diagonal({3.0, 4.0}), id, 1.0);
  CHECK(f.schatten_p == doctest::Approx(7.0));
  CHECK(std::abs(f.trace - 7.0) < 1e-15);
  CHECK(schatten_norm(ComplexMatrix::diagonal({3.0, 4.0}), 2.0) == doctest::Approx(5.0));
}

TEST_CASE("Schatten monotonicity and Cauchy-Schwarz") {
  oracle::Rng rng(23);
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 4.0};
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    const ComplexMatrix a = rng.ginibre(n), b = rng.ginibre(n);
    for (std::size_t i = 0; i + 1 < std::size(ps); ++i)
      CHECK(schatten_norm(a, ps[i]) >= schatten_norm(a, ps[i + 1]) - 1e-12);
    CHECK(std::abs(hs_inner(a, b)) <=
          schatten_norm(a, 2.0) * schatten_norm(b, 2.0) + 1e-10);
    // hs_inner(A, B) = tr(A B*)
    const Complex ref = (oracle::to_eigen(a) * oracle::to_eigen(b).adjoint()).trace();
    CHECK(std::abs(hs_inner(a, b) - ref) < 1e-12 * (1.0 + std::abs(ref)));
    CHECK(std::abs(schatten_norm(a, 2.0) - a.frobenius_norm()) < 1e-10);
    const Complex tp = (oracle::to_eigen(a) * oracle::to_eigen(b)).trace();
    CHECK(std::abs(trace_product(a, b) - tp) < 1e-12 * (1.0 + std::abs(tp)));
  }
  CHECK_THROWS(schatten_norm(kJ2, 0.5));
}

TEST_CASE("gram is A* A") {
  oracle::Rng rng(29);
  const ComplexMatrix a = rng.ginibre(4);
  CHECK(max_abs_diff(gram(a), a.adjoint() * a) < 1e-13);
  CHECK_THROWS_AS(hs_inner(a, ComplexMatrix(3)), DimensionError);
}
