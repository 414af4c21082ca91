#pragma once

#include <cstdint>
#include <random>

#include "leforge/poly.hpp"

namespace leforge {

/// Seeded generator with a fixed integer mapping, so sequences are identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return gen_(); }
  /// Uniform-ish integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(gen_() % span);
  }
  /// Nonzero integer in [-h, h].
  long long nonzero(long long h) {
    long long v = uniform(1, h);
    return (gen_() & 1u) ? v : -v;
  }
  LinearForm linear_form(std::size_t nvars, long long height) {
    LinearForm f;
    for (std::size_t i = 0; i < nvars; ++i) f.coeffs.emplace_back(static_cast<long>(nonzero(height)));
    return f;
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

}  // namespace leforge
