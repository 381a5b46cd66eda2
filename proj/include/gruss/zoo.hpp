#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gruss/matrix.hpp"

namespace gruss {

enum class Family {
  kGinibre,
  kHermitian,
  kHaarUnitary,
  kNormal,
  kDensityFull,
  kDensityRankK,
  kRankOneState,
  kJordan,
  kHermitianPd,
  kFixture,
};

std::string to_string(Family f);
/// Throws Error on an unknown family name.
Family family_from_string(const std::string& name);
bool is_state_family(Family f);

struct ZooSpec {
  Family family = Family::kGinibre;
  std::size_t dim = 2;
  std::optional<std::size_t> rank;
  std::uint64_t seed = 0;
  std::optional<std::string> fixture_name;
  /// Jordan family: diagonal value and size of an additive Ginibre
  /// perturbation (0 gives the exact Jordan block).
  Complex eigenvalue = 0.0;
  double perturbation = 0.0;
  /// Rank-one state family: explicit vector (otherwise drawn from the seed).
  std::optional<CVector> vector;

  void validate() const;
};

using ZooSample = std::variant<ComplexMatrix, DensityOperator>;

/// Deterministic: equal specs give bit-identical output.
ZooSample generate(const ZooSpec& spec);
/// generate() for families that yield an operator; throws otherwise.
ComplexMatrix generate_matrix(const ZooSpec& spec);
/// generate() for state families; throws otherwise.
DensityOperator generate_state(const ZooSpec& spec);

struct Fixture {
  std::string name;
  ComplexMatrix matrix;
  std::optional<CVector> vector;  // companion vector, e.g. the Kantorovich x
  std::string description;
};

const std::vector<Fixture>& fixtures();
/// Throws Error for unknown names.
const Fixture& fixture(const std::string& name);

}  // namespace gruss
