#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "gruss/matrix.hpp"

namespace gruss {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Key for an independent stream derived from a parent seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Counter-based generator: draw k of stream `key` is a pure function of
/// (key, k), so streams can be split across workers without coordination.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return splitmix64(key_ ^ splitmix64(counter_++)); }

  /// Uniform on (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  /// Complex normal with E|z|^2 = 1.
  Complex complex_normal() {
    return {normal() * std::numbers::sqrt2 / 2.0,
            normal() * std::numbers::sqrt2 / 2.0};
  }

  CVector unit_vector(std::size_t n) {
    CVector x(n);
    do {
      for (auto& z : x) z = complex_normal();
    } while (normalize(x) == 0.0);
    return x;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gruss
