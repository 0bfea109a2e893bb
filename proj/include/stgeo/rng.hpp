#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "stgeo/matrix.hpp"

namespace stgeo {

/// Deterministic splittable RNG (splitmix64 core). Streams are derived from
/// (seed, label, index) so independent corpora never share state and parallel
/// or reordered evaluation cannot change results.
class Rng {
 public:
  explicit Rng(uint64_t state) : s_(state) {}

  static Rng stream(uint64_t seed, std::string_view label, uint64_t index = 0) {
    uint64_t h = 1469598103934665603ull;  // FNV-1a over the label
    for (char c : label) {
      h ^= uint64_t(uint8_t(c));
      h *= 1099511628211ull;
    }
    uint64_t s = seed;
    s ^= h + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
    s ^= (index + 1) * 0xbf58476d1ce4e5b9ull;
    return Rng(s);
  }

  uint64_t next_u64() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1)
    return double(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {  // Box-Muller, one deviate per call for stream stability
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + int(next_u64() % uint64_t(hi - lo + 1));
  }

  template <typename T>
  T scalar_normal() {
    if constexpr (scalar_traits<T>::real_dim == 1) {
      return normal();
    } else if constexpr (scalar_traits<T>::real_dim == 2) {
      return Complex(normal(), normal()) * (1.0 / std::sqrt(2.0));
    } else {
      return Quaternion(normal(), normal(), normal(), normal()) * 0.5;
    }
  }

  template <typename T>
  Matrix<T> matrix_normal(int r, int c) {
    Matrix<T> m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = scalar_normal<T>();
    return m;
  }

 private:
  uint64_t s_;
};

}  // namespace stgeo
