#include "gruss/zoo.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "gruss/random.hpp"

namespace gruss {

namespace {

constexpr std::array<std::pair<Family, const char*>, 10> kFamilyNames{{
    {Family::kGinibre, "ginibre"},
    {Family::kHermitian, "hermitian"},
    {Family::kHaarUnitary, "haar_unitary"},
    {Family::kNormal, "normal"},
    {Family::kDensityFull, "density_full"},
    {Family::kDensityRankK, "density_rank_k"},
    {Family::kRankOneState, "rank_one_state"},
    {Family::kJordan, "jordan"},
    {Family::kHermitianPd, "hermitian_pd"},
    {Family::kFixture, "fixture"},
}};

ComplexMatrix ginibre(CounterRng& rng, std::size_t n) {
  ComplexMatrix g(n);
  for (auto& z : g.entries()) z = rng.complex_normal();
  return g;
}

// Columns of Q from a twice-orthogonalized Gram-Schmidt QR of a Ginibre
// matrix. R has a positive diagonal, which makes Q Haar distributed.
ComplexMatrix haar_unitary(CounterRng& rng, std::size_t n) {
  const ComplexMatrix g = ginibre(rng, n);
  ComplexMatrix q(n);
  CVector col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * col[i];
        for (std::size_t i = 0; i < n; ++i) col[i] -= proj * q(i, k);
      }
    normalize(col);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i];
  }
  return q;
}

ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, const CVector& d) {
  return u * ComplexMatrix::diagonal(d) * u.adjoint();
}

// G G* / tr(G G*) for an n x k Gaussian G.
ComplexMatrix gaussian_state(CounterRng& rng, std::size_t n, std::size_t k) {
  std::vector<Complex> g(n * k);
  for (auto& z : g) z = rng.complex_normal();
  ComplexMatrix rho(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t c = 0; c < k; ++c) s += g[i * k + c] * std::conj(g[j * k + c]);
      rho(i, j) = s;
    }
  rho *= 1.0 / rho.trace().real();
  return rho;
}

std::uint64_t spec_key(const ZooSpec& s) {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(s.family) + 1);
  h = splitmix64(h ^ s.dim);
  h = splitmix64(h ^ s.rank.value_or(0));
  return derive_seed(s.seed, h);
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (const auto& [fam, n] : kFamilyNames)
    if (name == n) return fam;
  throw Error("unknown matrix family '" + name + "'");
}

bool is_state_family(Family f) {
  return f == Family::kDensityFull || f == Family::kDensityRankK ||
         f == Family::kRankOneState;
}

void ZooSpec::validate() const {
  if (family == Family::kFixture) {
    if (!fixture_name) throw Error("fixture family needs a fixture name");
    fixture(*fixture_name);
    return;
  }
  if (dim < 1) throw Error("zoo dimension must be at least 1");
  if (rank && *rank > dim)
    throw Error("rank " + std::to_string(*rank) + " exceeds dimension " +
                std::to_string(dim));
  if (rank && *rank < 1) throw Error("rank must be at least 1");
  if (family == Family::kDensityRankK && !rank)
    throw Error("density_rank_k needs a rank");
  if (vector && vector->size() != dim)
    throw Error("rank_one_state vector length differs from dimension");
}

ZooSample generate(const ZooSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dim;
  CounterRng rng(spec_key(spec));
  switch (spec.family) {
    case Family::kGinibre:
      return ginibre(rng, n);
    case Family::kHermitian: {
      const ComplexMatrix g = ginibre(rng, n);
      return (g + g.adjoint()) * Complex(0.5);
    }
    case Family::kHaarUnitary:
      return haar_unitary(rng, n);
    case Family::kNormal: {
      const ComplexMatrix u = haar_unitary(rng, n);
      CVector d(n);
      for (auto& z : d) z = rng.complex_normal();
      return conjugate_diagonal(u, d);
    }
    case Family::kDensityFull:
      return DensityOperator(gaussian_state(rng, n, n));
    case Family::kDensityRankK:
      return DensityOperator(gaussian_state(rng, n, *spec.rank));
    case Family::kRankOneState:
      return spec.vector ? DensityOperator::pure(*spec.vector)
                         : DensityOperator::pure(rng.unit_vector(n));
    case Family::kJordan: {
      ComplexMatrix j(n);
      for (std::size_t i = 0; i < n; ++i) {
        j(i, i) = spec.eigenvalue;
        if (i + 1 < n) j(i, i + 1) = 1.0;
      }
      if (spec.perturbation != 0.0) j += ginibre(rng, n) * Complex(spec.perturbation);
      return j;
    }
    case Family::kHermitianPd: {
      const ComplexMatrix u = haar_unitary(rng, n);
      CVector d(n);
      for (auto& z : d) z = 0.05 + std::abs(rng.normal());
      ComplexMatrix h = conjugate_diagonal(u, d);
      // Remove the rounding-level anti-Hermitian part.
      return (h + h.adjoint()) * Complex(0.5);
    }
    case Family::kFixture:
      return fixture(*spec.fixture_name).matrix;
  }
  throw Error("unhandled family");
}

ComplexMatrix generate_matrix(const ZooSpec& spec) {
  ZooSample s = generate(spec);
  if (auto* m = std::get_if<ComplexMatrix>(&s)) return std::move(*m);
  return std::get<DensityOperator>(s).matrix();
}

DensityOperator generate_state(const ZooSpec& spec) {
  if (!is_state_family(spec.family))
    throw Error("family '" + to_string(spec.family) + "' does not produce a state");
  return std::get<DensityOperator>(generate(spec));
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    const Complex i(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    return std::vector<Fixture>{
        {"diag13", ComplexMatrix::diagonal({1.0, 3.0}), std::nullopt,
         "Hermitian diag(1, 3)"},
        {"jordan2", ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, std::nullopt,
         "nilpotent Jordan block J2"},
        {"roots_of_unity4", ComplexMatrix::diagonal({1.0, i, -1.0, -i}),
         std::nullopt, "diag(1, i, -1, -i)"},
        {"kantorovich_tight", ComplexMatrix::diagonal({1.0, 4.0}),
         CVector{s, s}, "diag(1, 4) with x = (1, 1)/sqrt(2)"},
        {"scalar", ComplexMatrix::identity(3) * Complex(1.5, -0.5), std::nullopt,
         "alpha Id with alpha = 1.5 - 0.5i"},
        {"three_point", ComplexMatrix::diagonal({0.0, 3.0, 4.0 * i}),
         std::nullopt, "diag(0, 3, 4i)"},
    };
  }();
  return all;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw Error("unknown fixture '" + name + "'");
}

}  // namespace gruss
