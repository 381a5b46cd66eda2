#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gruss/linalg.hpp"
#include "gruss/zoo.hpp"
#include "oracles.hpp"

using namespace gruss;
using oracle::same_entries;

namespace {

int numerical_rank(const ComplexMatrix& p) {
  int r = 0;
  for (double v : oracle::hermitian_eigenvalues(p)) r += v > 1e-10 ? 1 : 0;
  return r;
}

double comm_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return oracle::spectral_norm(a * b - b * a);
}

}  // namespace

TEST_CASE("family names round trip") {
  for (Family f : {Family::kGinibre, Family::kHermitian, Family::kHaarUnitary,
                   Family::kNormal, Family::kDensityFull, Family::kDensityRankK,
                   Family::kRankOneState, Family::kJordan, Family::kHermitianPd,
                   Family::kFixture})
    CHECK(family_from_string(to_string(f)) == f);
  CHECK(to_string(Family::kHaarUnitary) == "haar_unitary");
  CHECK_THROWS_AS(family_from_string("wishart"), Error);
  CHECK(is_state_family(Family::kDensityFull));
  CHECK_FALSE(is_state_family(Family::kGinibre));
}

TEST_CASE("every family satisfies its invariants over 1000 samples") {
  for (int s = 0; s < 1000; ++s) {
    const std::size_t n = 1 + static_cast<std::size_t>(s % 6);
    ZooSpec spec;
    spec.dim = n;
    spec.seed = static_cast<std::uint64_t>(s) * 7919u;

    spec.family = Family::kHermitian;
    REQUIRE(generate_matrix(spec).hermitian_defect() == 0.0);

    spec.family = Family::kHaarUnitary;
    const ComplexMatrix u = generate_matrix(spec);
    REQUIRE(oracle::spectral_norm(u * u.adjoint() - ComplexMatrix::identity(n)) <= 1e-10);

    spec.family = Family::kNormal;
    const ComplexMatrix nm = generate_matrix(spec);
    const double nn = oracle::spectral_norm(nm);
    REQUIRE(comm_norm(nm, nm.adjoint()) <= 1e-10 * std::max(1.0, nn * nn));

    spec.family = Family::kHermitianPd;
    const ComplexMatrix pd = generate_matrix(spec);
    REQUIRE(pd.hermitian_defect() == 0.0);
    REQUIRE(oracle::hermitian_eigenvalues(pd).front() >= 0.05 - 1e-12);

    spec.family = Family::kDensityFull;
    DensityOperator p = generate_state(spec);
    REQUIRE(std::abs(p.matrix().trace() - 1.0) <= 1e-12);
    REQUIRE(oracle::hermitian_eigenvalues(p.matrix()).front() >= -1e-12);
    REQUIRE(numerical_rank(p.matrix()) == static_cast<int>(n));

    spec.family = Family::kDensityRankK;
    spec.rank = 1 + static_cast<std::size_t>(s) % n;
    p = generate_state(spec);
    REQUIRE(std::abs(p.matrix().trace() - 1.0) <= 1e-12);
    REQUIRE(numerical_rank(p.matrix()) == static_cast<int>(*spec.rank));
    spec.rank.reset();

    spec.family = Family::kRankOneState;
    p = generate_state(spec);
    REQUIRE(std::abs(p.matrix().trace() - 1.0) <= 1e-12);
    REQUIRE(numerical_rank(p.matrix()) == 1);
    // x x* is idempotent.
    REQUIRE(oracle::spectral_norm(p.matrix() * p.matrix() - p.matrix()) < 1e-12);

    spec.family = Family::kJordan;
    spec.eigenvalue = Complex(0.5, -1.0);
    const ComplexMatrix j = generate_matrix(spec);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(j(i, i) == spec.eigenvalue);
    spec.eigenvalue = 0.0;
  }
}

TEST_CASE("generation is deterministic and seed sensitive") {
  for (Family f : {Family::kGinibre, Family::kNormal, Family::kDensityFull,
                   Family::kHermitianPd}) {
    ZooSpec spec;
    spec.family = f;
    spec.dim = 4;
    spec.seed = 123;
    const ComplexMatrix a = generate_matrix(spec), b = generate_matrix(spec);
    CHECK(same_entries(a, b));
    spec.seed = 124;
    CHECK_FALSE(same_entries(generate_matrix(spec), a));
  }
}

TEST_CASE("zoo examples") {
  ZooSpec spec;
  spec.family = Family::kJordan;
  spec.dim = 2;
  const ComplexMatrix j2 = generate_matrix(spec);
  CHECK(same_entries(j2, ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}));

  spec.perturbation = 1e-3;
  const ComplexMatrix jp = generate_matrix(spec);
  CHECK(oracle::spectral_norm(jp - j2) > 0.0);
  CHECK(oracle::spectral_norm(jp - j2) < 1e-2);

  ZooSpec r1;
  r1.family = Family::kRankOneState;
  r1.dim = 2;
  r1.vector = CVector{0.0, 1.0};
  CHECK(same_entries(generate_state(r1).matrix(), ComplexMatrix::diagonal({0.0, 1.0})));

  // density_full, dim 3, seed 7: an independent construction of the same
  // shape, G G* / tr with G complex Gaussian, has the same invariants.
  ZooSpec df;
  df.family = Family::kDensityFull;
  df.dim = 3;
  df.seed = 7;
  const ComplexMatrix p = generate_state(df).matrix();
  CHECK(std::abs(p.trace() - 1.0) < 1e-12);
  CHECK(numerical_rank(p) == 3);
  CHECK(p.hermitian_defect() == 0.0);
  oracle::Rng rng(7);
  const ComplexMatrix q = rng.state(3, 3);
  CHECK(std::abs(q.trace() - 1.0) < 1e-12);
  CHECK(numerical_rank(q) == 3);
}

TEST_CASE("zoo spec validation") {
  ZooSpec s;
  s.family = Family::kDensityRankK;
  s.dim = 3;
  CHECK_THROWS_AS(s.validate(), Error);
  s.rank = 4;
  CHECK_THROWS_AS(s.validate(), Error);
  s.rank = 2;
  CHECK_NOTHROW(s.validate());
  s.dim = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  ZooSpec v;
  v.family = Family::kRankOneState;
  v.dim = 3;
  v.vector = CVector{1.0, 0.0};
  CHECK_THROWS_AS(v.validate(), Error);
  ZooSpec g;
  g.family = Family::kGinibre;
  CHECK_THROWS_AS(generate_state(g), Error);
  ZooSpec fx;
  fx.family = Family::kFixture;
  CHECK_THROWS_AS(fx.validate(), Error);
  fx.fixture_name = "jordan2";
  CHECK(generate_matrix(fx).n() == 2);
}

TEST_CASE("fixtures") {
  CHECK(same_entries(fixture("kantorovich_tight").matrix, ComplexMatrix::diagonal({1.0, 4.0})));
  REQUIRE(fixture("kantorovich_tight").vector.has_value());
  CHECK(norm2(*fixture("kantorovich_tight").vector) == doctest::Approx(1.0));
  CHECK(same_entries(fixture("jordan2").matrix, ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}));
  CHECK_THROWS_AS(fixture("no_such_fixture"), Error);
  std::vector<std::string> names;
  for (const auto& f : fixtures()) names.push_back(f.name);
  std::sort(names.begin(), names.end());
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
}
