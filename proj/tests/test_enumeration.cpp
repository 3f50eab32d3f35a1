#include "doctest.h"

#include <cstdint>
#include <set>
#include <vector>

#include "agora/enumeration.hpp"

using namespace agora;

namespace {

// Independent oracle: partition counts by the classic two-variable
// recurrence p(n, k) = p(n - k, k) + p(n, k - 1).
std::uint64_t partition_count_oracle(int n, int max_part) {
  if (n == 0) return 1;
  if (n < 0 || max_part == 0) return 0;
  return partition_count_oracle(n - max_part, max_part) + partition_count_oracle(n, max_part - 1);
}

// Independent oracle: ordered-set-partition counts by the recurrence
// a(n) = sum_{k=1..n} C(n,k) a(n-k), a(0) = 1.
std::uint64_t fubini_oracle(int n) {
  std::vector<std::uint64_t> a(static_cast<std::size_t>(n) + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = 1; k <= m; ++k) {
      std::uint64_t binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * static_cast<std::uint64_t>(m - i) / (i + 1);
      a[static_cast<std::size_t>(m)] += binom * a[static_cast<std::size_t>(m - k)];
    }
  }
  return a[static_cast<std::size_t>(n)];
}

}  // namespace

TEST_CASE("integer partitions: small cases") {
  auto p3 = integer_partitions(3);
  std::set<std::vector<int>> got(p3.begin(), p3.end());
  std::set<std::vector<int>> want{{3}, {2, 1}, {1, 1, 1}};
  CHECK(got == want);

  CHECK(integer_partitions(1) == std::vector<std::vector<int>>{{1}});
  CHECK(integer_partitions(6).size() == partition_count_oracle(6, 6));
  CHECK(integer_partitions(6).size() == 11);
}

TEST_CASE("integer partitions: every partition sums to n, no duplicates") {
  for (int n = 1; n <= 9; ++n) {
    auto ps = integer_partitions(n);
    CHECK(ps.size() == partition_count_oracle(n, n));
    std::set<std::vector<int>> seen;
    for (const auto& p : ps) {
      int sum = 0;
      for (int part : p) {
        CHECK(part >= 1);
        sum += part;
      }
      CHECK(sum == n);
      CHECK(seen.insert(p).second);
    }
  }
  CHECK_THROWS_AS(integer_partitions(0), std::out_of_range);
  CHECK_THROWS_AS(integer_partitions(13), std::out_of_range);
}

TEST_CASE("weak order counts match the published table") {
  CHECK(count_weak_orders(1) == 1);
  CHECK(count_weak_orders(2) == 3);
  CHECK(count_weak_orders(3) == 13);
  CHECK(count_weak_orders(4) == 75);
  CHECK(count_weak_orders(5) == 541);
  CHECK(count_weak_orders(6) == 4683);
}

TEST_CASE("weak order counts match the recurrence oracle up to n = 10") {
  for (int n = 1; n <= 10; ++n) CHECK(count_weak_orders(n) == fubini_oracle(n));
  CHECK_THROWS_AS(count_weak_orders(0), std::out_of_range);
  CHECK_THROWS_AS(count_weak_orders(13), std::out_of_range);
}

TEST_CASE("partition terms: both factors positive, products sum to the count") {
  for (int n = 1; n <= 8; ++n) {
    std::uint64_t total = 0;
    for (const auto& p : integer_partitions(n)) {
      PartitionTerm t = partition_term(p, n);
      CHECK(t.n_policies > 0);
      CHECK(t.n_partitions > 0);
      total += t.n_policies * t.n_partitions;
    }
    CHECK(total == count_weak_orders(n));
  }
}

TEST_CASE("enumerate_weak_orders: two policies give the three rankings") {
  auto orders = enumerate_weak_orders(2);
  REQUIRE(orders.size() == 3);
  std::set<WeakOrder::Classes> got;
  for (const auto& o : orders) got.insert(o.classes());
  std::set<WeakOrder::Classes> want{{{0}, {1}}, {{1}, {0}}, {{0, 1}}};
  CHECK(got == want);
}

TEST_CASE("enumerate_weak_orders: length equals count, all valid, no duplicates") {
  for (int n = 1; n <= 5; ++n) {
    auto orders = enumerate_weak_orders(n);
    CHECK(orders.size() == count_weak_orders(n));
    std::set<WeakOrder::Classes> seen;
    for (const auto& o : orders) {
      CHECK(o.num_policies() == n);
      CHECK(seen.insert(o.classes()).second);
    }
  }
  CHECK(enumerate_weak_orders(3).size() == 13);
  CHECK_THROWS_AS(enumerate_weak_orders(7), std::out_of_range);
}

TEST_CASE("admissible orders exclude exactly the all-indifferent ranking") {
  for (int n = 2; n <= 4; ++n)
    CHECK(enumerate_admissible_orders(n).size() == count_weak_orders(n) - 1);
}
