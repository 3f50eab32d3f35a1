#pragma once

#include <vector>

#include "agora/prefs.hpp"

namespace fixtures {

using agora::PolicySet;
using agora::Profile;
using agora::Situation;
using agora::WeakOrder;

inline WeakOrder order(WeakOrder::Classes classes) {
  return WeakOrder::from_classes(std::move(classes));
}

/// Three agents denying service by ranking in a cycle: A>B>C, C>A>B, B>C>A.
inline Situation cycle_table() {
  PolicySet ps({"A", "B", "C"});
  std::vector<WeakOrder> orders{
      order({{0}, {1}, {2}}),  // x: A > B > C
      order({{2}, {0}, {1}}),  // y: C > A > B
      order({{1}, {2}, {0}}),  // z: B > C > A
  };
  return Situation(Profile(ps, {"x", "y", "z"}, orders));
}

/// The preferendum slate: i and j rank w>x>y>z, k ranks y>z>x>w.
inline Situation borda_table() {
  PolicySet ps({"w", "x", "y", "z"});
  std::vector<WeakOrder> orders{
      order({{0}, {1}, {2}, {3}}),  // i: w > x > y > z
      order({{0}, {1}, {2}, {3}}),  // j: w > x > y > z
      order({{2}, {3}, {1}, {0}}),  // k: y > z > x > w
  };
  return Situation(Profile(ps, {"i", "j", "k"}, orders));
}

}  // namespace fixtures
