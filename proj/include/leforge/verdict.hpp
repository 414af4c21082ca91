#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace leforge {

/// One checked identity. `pass` is exact equality of the two sides.
struct Verdict {
  std::string name;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool pass = false;
  std::string lhs_desc;
  std::string rhs_desc;
  std::string note;

  static Verdict check(std::string name, std::int64_t lhs, std::int64_t rhs, std::string lhs_desc = {},
                       std::string rhs_desc = {}) {
    return {std::move(name), lhs, rhs, lhs == rhs, std::move(lhs_desc), std::move(rhs_desc), {}};
  }
};

using Verdicts = std::vector<Verdict>;

inline bool all_pass(const Verdicts& v) {
  for (const auto& x : v)
    if (!x.pass) return false;
  return true;
}

}  // namespace leforge
