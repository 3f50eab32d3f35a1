#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "agora/prefs.hpp"

namespace agora {

/** One partition of n together with the two counts whose product gives the
    number of rankings with that shape: ways to allot policies to the
    partition's blocks, and orderings of the filled blocks. */
struct PartitionTerm {
  std::vector<int> partition;  // block sizes, non-increasing
  std::uint64_t n_policies = 0;
  std::uint64_t n_partitions = 0;
};

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace detail

/// All multisets of positive integers summing to n, parts non-increasing.
inline std::vector<std::vector<int>> integer_partitions(int n) {
  if (n < 1 || n > 12) throw std::out_of_range("integer_partitions: n must be in 1..12");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  detail::partitions_rec(n, n, cur, out);
  return out;
}

/** Per-partition counts. n_policies allots the n policies to the blocks of
    the partition (blocks of equal size are interchangeable at this stage);
    n_partitions then orders the filled blocks, which are all distinct. */
inline PartitionTerm partition_term(const std::vector<int>& partition, int n) {
  PartitionTerm t;
  t.partition = partition;
  std::uint64_t allot = detail::factorial(n);
  for (int s : partition) allot /= detail::factorial(s);
  std::map<int, int> multiplicity;
  for (int s : partition) ++multiplicity[s];
  for (const auto& [size, m] : multiplicity) {
    (void)size;
    allot /= detail::factorial(m);
  }
  t.n_policies = allot;
  t.n_partitions = detail::factorial(static_cast<int>(partition.size()));
  return t;
}

/** Number of distinct weak orderings of n policies: the sum over all
    partitions of n_policies * n_partitions. Exact integers, n capped at 12. */
inline std::uint64_t count_weak_orders(int n) {
  if (n < 1 || n > 12) throw std::out_of_range("count_weak_orders: n must be in 1..12");
  std::uint64_t total = 0;
  for (const auto& p : integer_partitions(n)) {
    PartitionTerm t = partition_term(p, n);
    total += t.n_policies * t.n_partitions;
  }
  return total;
}

namespace detail {

inline void enumerate_rec(std::vector<int>& remaining, WeakOrder::Classes& acc,
                          std::vector<WeakOrder>& out) {
  if (remaining.empty()) {
    out.push_back(WeakOrder::from_classes(acc));
    return;
  }
  // Choose the next-best class: every non-empty subset of what remains,
  // enumerated by bitmask so the order is deterministic.
  int m = static_cast<int>(remaining.size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> cls, rest;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) cls.push_back(remaining[static_cast<std::size_t>(i)]);
      else rest.push_back(remaining[static_cast<std::size_t>(i)]);
    }
    acc.push_back(std::move(cls));
    enumerate_rec(rest, acc, out);
    acc.pop_back();
  }
}

}  // namespace detail

/// Every distinct weak order over 0..n-1, each exactly once. n capped at 6.
inline std::vector<WeakOrder> enumerate_weak_orders(int n) {
  if (n < 1 || n > 6) throw std::out_of_range("enumerate_weak_orders: n must be in 1..6");
  std::vector<int> all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  std::vector<WeakOrder> out;
  WeakOrder::Classes acc;
  detail::enumerate_rec(all, acc, out);
  return out;
}

inline std::vector<WeakOrder> enumerate_weak_orders(const PolicySet& policies) {
  return enumerate_weak_orders(policies.size());
}

/// The enumeration above, filtered down to orders admissible for the full set.
inline std::vector<WeakOrder> enumerate_admissible_orders(int n) {
  std::vector<int> proposal;
  for (int i = 0; i < n; ++i) proposal.push_back(i);
  std::vector<WeakOrder> out;
  for (auto& o : enumerate_weak_orders(n))
    if (is_admissible(o, proposal)) out.push_back(std::move(o));
  return out;
}

}  // namespace agora
