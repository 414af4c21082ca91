#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace leforge {

inline constexpr std::size_t kMaxVars = 16;
using Exponent = std::uint16_t;

/// Exponent vector with a cached total degree. Unused slots stay zero, so
/// comparisons never need the ring size.
class Monomial {
 public:
  Monomial() = default;

  Exponent operator[](std::size_t i) const { return exp_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, Exponent e) {
    deg_ = deg_ - exp_[i] + e;
    exp_[i] = e;
  }

  static Monomial variable(std::size_t i, Exponent e = 1) {
    Monomial m;
    m.set(i, e);
    return m;
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  /// Caller guarantees divisibility.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = exp_[i] - o.exp_[i];
    r.deg_ = deg_ - o.deg_;
    return r;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = exp_[i] + o.exp_[i];
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = a.exp_[i] > b.exp_[i] ? a.exp_[i] : b.exp_[i];
      d += r.exp_[i];
    }
    r.deg_ = d;
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.exp_[i] != 0 && b.exp_[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return deg_ == o.deg_ && exp_ == o.exp_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::size_t hash() const {
    std::size_t h = deg_;
    for (auto e : exp_) h = h * 1000003u ^ e;
    return h;
  }

 private:
  std::array<Exponent, kMaxVars> exp_{};
  std::uint32_t deg_ = 0;
};

/// Degree-reverse-lexicographic comparison: <0, 0, >0.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace leforge

template <>
struct std::hash<leforge::Monomial> {
  std::size_t operator()(const leforge::Monomial& m) const { return m.hash(); }
};
