#include "doctest.h"

#include <vector>

#include "agora/enumeration.hpp"
#include "agora/prefs.hpp"
#include "fixtures.hpp"

using namespace agora;
using fixtures::order;

namespace {

Profile single(const WeakOrder& o) {
  return Profile(PolicySet({"x", "y", "z"}), {"v1"}, {o});
}

Profile triple(const WeakOrder& a, const WeakOrder& b, const WeakOrder& c) {
  return Profile(PolicySet({"x", "y", "z"}), {"v1", "v2", "v3"}, {a, b, c});
}

// Relation pairs derived from an order's classes, for round-trip checks.
std::vector<WeakOrder::Pair> relation_of(const WeakOrder& o) {
  std::vector<WeakOrder::Pair> pairs;
  int n = o.num_policies();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (o.prefers(a, b)) pairs.push_back({a, '>', b});
      else if (o.prefers(b, a)) pairs.push_back({b, '>', a});
      else pairs.push_back({a, '=', b});
    }
  return pairs;
}

}  // namespace

TEST_CASE("policy sets reject duplicates and malformed ids") {
  CHECK_THROWS_AS(PolicySet({"A", "A"}), input_error);
  CHECK_THROWS_AS(PolicySet({"A", "B C"}), input_error);
  CHECK_THROWS_AS(PolicySet(std::vector<std::string>{}), input_error);
  PolicySet ps({"A", "B"});
  CHECK(ps.index_of("B") == 1);
  CHECK_THROWS_AS(ps.index_of("Z"), input_error);
}

TEST_CASE("weak order construction rejects non-total class lists") {
  CHECK_THROWS_AS(WeakOrder::from_classes({{0}, {0, 1}}), input_error);
  CHECK_THROWS_AS(WeakOrder::from_classes({{0}, {2}}), input_error);
  CHECK_THROWS_AS(WeakOrder::from_classes({{0}, {}, {1}}), input_error);
}

TEST_CASE("round trip: classes -> relation -> classes is the identity") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& o : enumerate_weak_orders(n))
      CHECK(WeakOrder::from_pairs(relation_of(o), n) == o);
}

TEST_CASE("cyclic raw relations are rejected at construction") {
  // x > y, y > z, z > x
  CHECK_THROWS_AS(WeakOrder::from_pairs({{0, '>', 1}, {1, '>', 2}, {2, '>', 0}}, 3), input_error);
  // indirect cycle through an indifference
  CHECK_THROWS_AS(WeakOrder::from_pairs({{0, '>', 1}, {1, '=', 2}, {2, '>', 0}}, 3), input_error);
  // incomparable pair
  CHECK_THROWS_AS(WeakOrder::from_pairs({{0, '>', 1}, {0, '>', 2}}, 3), input_error);
  // unmentioned policy
  CHECK_THROWS_AS(WeakOrder::from_pairs({{0, '>', 1}}, 3), input_error);
}

TEST_CASE("admissibility: strict chains pass, complete indifference fails") {
  std::vector<int> all{0, 1, 2};
  CHECK(is_admissible(order({{0}, {1}, {2}}), all));
  CHECK_FALSE(is_admissible(order({{0, 1, 2}}), all));
  // (x = y) > z discriminates on {x,y,z} but not on {x,y}
  WeakOrder o = order({{0, 1}, {2}});
  CHECK(is_admissible(o, all));
  CHECK_FALSE(is_admissible(o, {0, 1}));
  CHECK_THROWS_AS(is_admissible(o, {0, 5}), input_error);
}

TEST_CASE("promote converts indifference to strict preference for x") {
  // (x = y) > z  ->  x > y > z
  Profile d = single(order({{0, 1}, {2}}));
  CHECK(promote(d, 0).order(0) == order({{0}, {1}, {2}}));
  // y > x > z unchanged: no indifference involving x
  Profile e = single(order({{1}, {0}, {2}}));
  CHECK(promote(e, 0) == e);
  CHECK_THROWS_AS(promote(d, 9), input_error);
}

TEST_CASE("demote converts indifference against x") {
  // (x = y) > z  ->  y > x > z  (x still above z)
  Profile d = single(order({{0, 1}, {2}}));
  CHECK(demote(d, 0).order(0) == order({{1}, {0}, {2}}));
  Profile e = single(order({{0}, {1}, {2}}));
  CHECK(demote(e, 0) == e);
}

TEST_CASE("weak promote and demote are idempotent over all 13^3 profiles") {
  auto orders = enumerate_weak_orders(3);
  for (const auto& a : orders)
    for (const auto& b : orders)
      for (const auto& c : orders) {
        Profile d = triple(a, b, c);
        for (int x = 0; x < 3; ++x) {
          Profile p = promote(d, x);
          CHECK(promote(p, x) == p);
          Profile q = demote(d, x);
          CHECK(demote(q, x) == q);
        }
      }
}

TEST_CASE("weak promote/demote never touch pairs not involving x") {
  for (const auto& o : enumerate_weak_orders(3)) {
    Profile d = single(o);
    for (int x = 0; x < 3; ++x) {
      for (const Profile& moved : {promote(d, x), demote(d, x)}) {
        const WeakOrder& m = moved.order(0);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            if (a == x || b == x || a == b) continue;
            CHECK(o.prefers(a, b) == m.prefers(a, b));
          }
        // strict pairs involving x keep their direction
        for (int b = 0; b < 3; ++b) {
          if (b == x) continue;
          if (o.prefers(x, b)) CHECK(m.prefers(x, b));
          if (o.prefers(b, x)) CHECK(m.prefers(b, x));
        }
      }
    }
  }
}

TEST_CASE("promote_strong merges a lone x into the class above") {
  // y > x > z  ->  (x = y) > z
  Profile d = single(order({{1}, {0}, {2}}));
  CHECK(promote_strong(d, 0).order(0) == order({{0, 1}, {2}}));
  // already unique top: fixed point
  Profile top = single(order({{0}, {1}, {2}}));
  CHECK(promote_strong(top, 0) == top);
  // inside a shared class: splits upward
  Profile shared = single(order({{1}, {0, 2}}));
  CHECK(promote_strong(shared, 0).order(0) == order({{1}, {0}, {2}}));
}

TEST_CASE("iterated promote_strong reaches unique top within four steps") {
  for (const auto& o : enumerate_weak_orders(3)) {
    for (int x = 0; x < 3; ++x) {
      Profile d = single(o);
      int steps = 0;
      while (d.order(0).classes().front() != std::vector<int>{x}) {
        d = promote_strong(d, x);
        REQUIRE(++steps <= 4);
      }
      CHECK(promote_to_top(single(o), x).order(0).classes().front() == std::vector<int>{x});
    }
  }
}

TEST_CASE("demote_strong mirrors promote_strong") {
  // x > y > z: demote x -> (x = y) > z, again -> y > x > z ... down to bottom
  Profile d = single(order({{0}, {1}, {2}}));
  Profile s1 = demote_strong(d, 0);
  CHECK(s1.order(0) == order({{0, 1}, {2}}));
  Profile bottom = demote_to_bottom(d, 0);
  CHECK(bottom.order(0).classes().back() == std::vector<int>{0});
}

TEST_CASE("strong moves are monotone, and an unsaturated round trip retraces") {
  for (const auto& o : enumerate_weak_orders(3)) {
    for (int x = 0; x < 3; ++x) {
      auto above = [&](const WeakOrder& w) {
        int c = 0;
        for (int p = 0; p < 3; ++p) c += (p != x && w.prefers(p, x));
        return c;
      };
      // each step moves x weakly in its direction
      Profile d = single(o);
      Profile up = promote_strong(d, x);
      Profile down = demote_strong(d, x);
      CHECK(above(up.order(0)) <= above(o));
      CHECK(above(down.order(0)) >= above(o));
      // promote k then demote k: exact retrace while promotion has headroom,
      // and never a net rise once it saturates at the top
      for (int k = 1; k <= 4; ++k) {
        Profile cur = single(o);
        bool saturated = false;
        for (int i = 0; i < k; ++i) {
          Profile next = promote_strong(cur, x);
          saturated = saturated || next == cur;
          cur = std::move(next);
        }
        for (int i = 0; i < k; ++i) cur = demote_strong(cur, x);
        if (!saturated) CHECK(cur.order(0) == o);
        CHECK(above(cur.order(0)) >= above(o));
      }
    }
  }
}

TEST_CASE("per-voter variants leave other voters bit-identical") {
  auto orders = enumerate_weak_orders(3);
  Profile d = triple(orders[1], orders[4], orders[7]);
  for (int v = 0; v < 3; ++v)
    for (int x = 0; x < 3; ++x) {
      for (const Profile& moved :
           {promote(d, v, x), demote(d, v, x), promote_strong(d, v, x), demote_strong(d, v, x)}) {
        for (int u = 0; u < 3; ++u)
          if (u != v) CHECK(moved.order(u) == d.order(u));
      }
    }
  CHECK_THROWS_AS(promote(d, 5, 0), std::out_of_range);
}

TEST_CASE("per-voter promote on the cycle table changes only that row") {
  Situation s = fixtures::cycle_table();
  const Profile& d = s.profile();
  int z = d.voter_index("z");
  int a = d.policies().index_of("A");
  Profile moved = promote_strong(d, z, a);
  CHECK(moved.order(0) == d.order(0));
  CHECK(moved.order(1) == d.order(1));
  CHECK_FALSE(moved.order(z) == d.order(z));  // B > C > A becomes B > (C = A)
  CHECK(moved.order(z) == order({{1}, {0, 2}}));
}

TEST_CASE("per-voter promotions for distinct voters commute") {
  auto orders = enumerate_weak_orders(3);
  PolicySet ps({"x", "y", "z"});
  for (const auto& a : orders)
    for (const auto& b : orders) {
      Profile d(ps, {"v1", "v2"}, {a, b});
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
          CHECK(promote(promote(d, 0, x), 1, y) == promote(promote(d, 1, y), 0, x));
          CHECK(promote_strong(promote_strong(d, 0, x), 1, y) ==
                promote_strong(promote_strong(d, 1, y), 0, x));
        }
    }
}

TEST_CASE("restrict projects orders and keeps relative relations") {
  Situation s = fixtures::borda_table();
  const Profile& d = s.profile();
  // keep {w, y, z}: voter i's w > x > y > z becomes w > y > z
  Profile r = restrict(d, {0, 2, 3});
  CHECK(r.policies().ids() == std::vector<std::string>{"w", "y", "z"});
  CHECK(r.order(0) == order({{0}, {1}, {2}}));
  // voter k: y > z > x > w becomes y > z > w
  CHECK(r.order(2) == order({{1}, {2}, {0}}));

  // restrict to the full set is the identity
  CHECK(restrict(d, {0, 1, 2, 3}) == d);
  CHECK_THROWS_AS(restrict(d, std::vector<int>{}), input_error);
}

TEST_CASE("restrict composes: restricting twice equals restricting once") {
  PolicySet ps({"a", "b", "c", "d"});
  for (const auto& o : enumerate_weak_orders(4)) {
    Profile d(ps, {"v1"}, {o});
    Profile once = restrict(d, {0, 1, 2});
    Profile twice = restrict(once, {0, 1});
    CHECK(twice == restrict(d, {0, 1}));
    // every surviving pair keeps its source relation
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b) CHECK(once.order(0).prefers(a, b) == o.prefers(a, b));
  }
}

TEST_CASE("situations validate their proposal") {
  Situation s = fixtures::cycle_table();
  CHECK(s.proposal() == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(Situation(s.profile(), {0, 7}), input_error);
  CHECK_THROWS_AS(Situation(s.profile(), {}), input_error);
  CHECK_THROWS_AS(Situation(s.profile(), {1, 1}), input_error);
  Situation sub(s.profile(), {2, 0});
  CHECK(sub.proposal() == std::vector<int>{0, 2});  // stored sorted
  CHECK(sub.proposes(0));
  CHECK_FALSE(sub.proposes(1));
}

TEST_CASE("profiles validate voters and order coverage") {
  PolicySet ps({"x", "y"});
  WeakOrder o = order({{0}, {1}});
  CHECK_THROWS_AS(Profile(ps, {"a", "a"}, {o, o}), input_error);
  CHECK_THROWS_AS(Profile(ps, {"a"}, {o, o}), input_error);
  CHECK_THROWS_AS(Profile(ps, {}, {}), input_error);
  CHECK_THROWS_AS(Profile(ps, {"a"}, {order({{0}, {1}, {2}})}), input_error);
}
