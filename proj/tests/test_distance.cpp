#include <doctest.h>

#include <cmath>

#include "gruss/distance.hpp"
#include "gruss/linalg.hpp"
#include "gruss/spectral.hpp"
#include "oracles.hpp"

using namespace gruss;

namespace {

const ComplexMatrix kJ2{{0.0, 1.0}, {0.0, 0.0}};
const ComplexMatrix kDiag13 = ComplexMatrix::diagonal({1.0, 3.0});

// min over lambda of ||A - lambda T|| by the nested golden-section oracle.
std::pair<Complex, double> line_oracle(const ComplexMatrix& a, const ComplexMatrix& t) {
  auto f = [&](Complex l) { return oracle::spectral_norm(a - t * l); };
  const double scale = oracle::spectral_norm(a) /
                       Eigen::JacobiSVD<oracle::Mat>(oracle::to_eigen(t))
                           .singularValues()
                           .tail(1)(0);
  return oracle::convex_minimize(f, 0.0, 2.0 * scale + 1.0, 80);
}

}  // namespace

TEST_CASE("dist_to_scalars examples") {
  ScalarDistance d = dist_to_scalars(kDiag13);
  CHECK(std::abs(d.center - 2.0) < 1e-8);
  CHECK(std::abs(d.distance - 1.0) < 1e-8);
  CHECK(d.converged);
  CHECK_FALSE(d.degenerate);

  const Complex alpha(0.5, -2.0);
  d = dist_to_scalars(ComplexMatrix::identity(3) * alpha);
  CHECK(std::abs(d.center - alpha) < 1e-12);
  CHECK(d.distance < 1e-12);
  CHECK(d.degenerate);

  d = dist_to_scalars(kJ2);
  CHECK(std::abs(d.center) < 1e-6);
  CHECK(std::abs(d.distance - 1.0) < 1e-8);
  const auto [oc, od] = oracle::dist_to_scalars(kJ2);
  CHECK(std::abs(od - d.distance) < 1e-7);
  CHECK(std::abs(oc) < 1e-3);
}

TEST_CASE("dist_to_scalars against the golden-section oracle") {
  oracle::Rng rng(307);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    const ComplexMatrix a = t % 3 == 0 ? rng.hermitian(n) : rng.ginibre(n);
    const ScalarDistance d = dist_to_scalars(a);
    const auto [oc, od] = oracle::dist_to_scalars(a);
    CHECK(d.converged);
    CHECK(d.lower_bound <= d.distance + 1e-15);
    CHECK(d.lower_bound >= d.distance - 1e-8);
    CHECK(std::abs(d.distance - od) < 1e-7 * (1.0 + od));
    // The objective at the returned center is the reported distance.
    CHECK(std::abs(oracle::spectral_norm(a.shifted(d.center)) - d.distance) < 1e-10);
    CHECK(std::abs(d.center) <= numerical_radius(a) + 1e-8);
  }
}

TEST_CASE("Hermitian closed form (lmax - lmin) / 2") {
  oracle::Rng rng(311);
  for (std::size_t n = 2; n <= 6; ++n) {
    const ComplexMatrix h = rng.hermitian(n);
    const auto ev = oracle::hermitian_eigenvalues(h);
    const ScalarDistance d = dist_to_scalars(h);
    CHECK(std::abs(d.distance - 0.5 * (ev.back() - ev.front())) < 1e-8);
    CHECK(std::abs(d.center - 0.5 * (ev.back() + ev.front())) < 1e-6);
  }
}

TEST_CASE("shift and scale equivariance") {
  oracle::Rng rng(313);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = rng.ginibre(3);
    const Complex beta = rng.cnormal() * 3.0;
    const Complex gamma = rng.cnormal() * 2.0;
    const ScalarDistance d = dist_to_scalars(a);
    const ScalarDistance ds = dist_to_scalars(a.shifted(beta));
    const ScalarDistance dg = dist_to_scalars(a * gamma);
    CHECK(std::abs(ds.distance - d.distance) < 1e-8 * (1.0 + d.distance));
    CHECK(std::abs(dg.distance - std::abs(gamma) * d.distance) <
          1e-8 * (1.0 + std::abs(gamma) * d.distance));
  }
}

TEST_CASE("dist_sphere examples") {
  SphereDistance s = dist_sphere(kDiag13);
  CHECK(s.distance == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(std::abs(s.maximizer[0]) - std::sqrt(0.5)) < 1e-5);
  CHECK(std::abs(std::abs(s.maximizer[1]) - std::sqrt(0.5)) < 1e-5);

  s = dist_sphere(ComplexMatrix::identity(2) * Complex(4.0, 1.0));
  CHECK(s.distance < 1e-7);

  s = dist_sphere(kJ2);
  CHECK(s.distance == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(std::abs(s.maximizer[1]) - 1.0) < 1e-5);

  // 1-d grid oracle for diag(1,3): (a^2 + 9 b^2) - (a^2 + 3 b^2)^2, a^2 + b^2 = 1.
  double best = 0.0;
  for (int k = 0; k <= 100000; ++k) {
    const double b2 = k / 100000.0, a2 = 1.0 - b2;
    best = std::max(best, (a2 + 9 * b2) - (a2 + 3 * b2) * (a2 + 3 * b2));
  }
  CHECK(std::abs(std::sqrt(best) - 1.0) < 1e-9);
}

TEST_CASE("Prasanna equality: sphere sup equals the scalar distance") {
  oracle::Rng rng(317);
  OptimizerSettings s;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    const ComplexMatrix a = t % 4 == 0 ? rng.normal_matrix(n) : rng.ginibre(n);
    s.seed = 1000 + static_cast<std::uint64_t>(t);
    const ScalarDistance d = dist_to_scalars(a, s);
    const SphereDistance sp = dist_sphere(a, s);
    const double norm = oracle::spectral_norm(a);
    REQUIRE(d.converged);
    REQUIRE(sp.converged);
    REQUIRE(sp.distance <= d.distance + 1e-8);
    REQUIRE(std::abs(sp.distance - d.distance) <= 1e-5 * (1.0 + norm));
  }
}

TEST_CASE("normal matrices: dist equals the spectral disc radius") {
  oracle::Rng rng(331);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    const ComplexMatrix a = rng.normal_matrix(n);
    const double r = oracle::enclosing_disc(oracle::eigenvalues(a)).second;
    CHECK(std::abs(dist_to_scalars(a).distance - r) < 1e-7 * (1.0 + r));
  }
}

TEST_CASE("dist_to_line examples") {
  LineDistance l = dist_to_line(kDiag13, kDiag13);
  CHECK(l.direct.distance < 1e-8);
  CHECK(std::abs(l.direct.center - 1.0) < 1e-8);

  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix t12 = ComplexMatrix::diagonal({1.0, 2.0});
  l = dist_to_line(id, t12);
  CHECK(std::abs(l.direct.distance - 1.0 / 3.0) < 1e-8);
  CHECK(std::abs(l.direct.center - 2.0 / 3.0) < 1e-6);
  CHECK(std::abs(l.sup.distance - 1.0 / 3.0) < 1e-6);
  CHECK(l.agree);
  const auto [oc, od] = line_oracle(id, t12);
  CHECK(std::abs(od - 1.0 / 3.0) < 1e-8);
  CHECK(std::abs(oc - 2.0 / 3.0) < 1e-5);

  oracle::Rng rng(337);
  const ComplexMatrix a = rng.ginibre(4);
  l = dist_to_line(a, ComplexMatrix::identity(4));
  const ScalarDistance d = dist_to_scalars(a);
  CHECK(std::abs(l.direct.distance - d.distance) < 1e-8);
  CHECK(std::abs(l.sup.distance - d.distance) < 1e-5);
}

TEST_CASE("dist_to_line against the oracle on random pairs") {
  oracle::Rng rng(347);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const ComplexMatrix a = rng.ginibre(n);
    // Keep T well conditioned.
    const ComplexMatrix tm = rng.ginibre(n) * Complex(0.3) + ComplexMatrix::identity(n) * Complex(2.0);
    const LineDistance l = dist_to_line(a, tm);
    const auto [oc, od] = line_oracle(a, tm);
    CHECK(std::abs(l.direct.distance - od) < 1e-7 * (1.0 + od));
    CHECK(l.agree);
  }
}

TEST_CASE("dist_to_line rejects singular T") {
  CHECK_THROWS_AS(dist_to_line(kDiag13, kJ2), PreconditionError);
  CHECK_THROWS_AS(dist_to_line(kDiag13, ComplexMatrix::identity(3)), DimensionError);
}

TEST_CASE("center of mass limit examples") {
  CHECK(std::abs(center_of_mass_limit(kDiag13, ComplexMatrix::identity(2)) - 2.0) < 1e-5);
  CHECK(std::abs(center_of_mass_limit(ComplexMatrix::identity(2),
                                      ComplexMatrix::diagonal({1.0, 2.0})) -
                 2.0 / 3.0) < 1e-5);
  oracle::Rng rng(349);
  const ComplexMatrix t = rng.ginibre(3) + ComplexMatrix::identity(3) * Complex(3.0);
  const Complex alpha(-1.0, 0.75);
  CHECK(std::abs(center_of_mass_limit(t * alpha, t) - alpha) < 1e-8);
}

TEST_CASE("distance characterizations examples") {
  OptimizerSettings s;
  s.restarts = 64;
  DistCharacterizations c = dist_characterizations(ComplexMatrix::identity(3) * Complex(2.0, 1.0), s);
  CHECK(c.commutator_half_sup < 1e-12);
  CHECK(c.rank_one_proj_sup < 1e-12);
  c = dist_characterizations(kDiag13, s);
  CHECK(std::abs(c.commutator_half_sup - 1.0) < 1e-4);
  CHECK(std::abs(c.rank_one_proj_sup - 1.0) < 1e-4);
  c = dist_characterizations(kJ2, s);
  CHECK(std::abs(c.commutator_half_sup - 1.0) < 1e-4);
  CHECK(std::abs(c.rank_one_proj_sup - 1.0) < 1e-4);
}

TEST_CASE("characterizations are sandwiched below the distance") {
  oracle::Rng rng(353);
  OptimizerSettings s;
  s.restarts = 64;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const ComplexMatrix a = rng.ginibre(n);
    s.seed = 500 + static_cast<std::uint64_t>(t);
    const double d = dist_to_scalars(a, s).distance;
    const DistCharacterizations c = dist_characterizations(a, s);
    CHECK(c.commutator_half_sup <= d + 1e-8);
    CHECK(c.rank_one_proj_sup <= d + 1e-8);
    CHECK(std::abs(c.commutator_half_sup - d) < 1e-4);
    CHECK(std::abs(c.rank_one_proj_sup - d) < 1e-4);
  }
}
