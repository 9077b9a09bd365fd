#pragma once

// Shared helpers for the test suites.

#include "burnclass/group.hpp"

#include <vector>

namespace burn::testing {

inline int find_perm(const GroupRef& G, const std::vector<int>& images) {
  for (int g = 0; g < G->n; ++g)
    if (G->perm[g] == images) return g;
  return -1;
}

/// The unique character of h taking the prescribed values on the given
/// elements (searched over the full dual).
inline CharVec char_by_values(const GroupRef& G, const Subgroup& h,
                              const std::vector<std::pair<int, Rat>>& vals) {
  for (const auto& c : all_chars(*G, h)) {
    bool ok = true;
    for (const auto& [e, v] : vals) ok = ok && char_value(h, c, e) == mod1(v);
    if (ok) return c;
  }
  fail(Err::Internal, "no character with the requested values");
}

}  // namespace burn::testing
