#include "doctest.h"

#include <vector>

#include "agora/binary_rules.hpp"
#include "agora/weighted.hpp"

using namespace agora;

namespace {

TernaryProfile prof(std::vector<int> b) { return TernaryProfile(std::move(b)); }

// A rule with the Paretian quality bolted on: any dissent blocks a win.
TernaryFn paretian(const BinaryRule& rule) {
  return [rule](const TernaryProfile& d) {
    int raw = tally(rule, d);
    if (raw == 1 && d.count(-1) > 0) return 0;
    if (raw == -1 && d.count(1) > 0) return 0;
    return raw;
  };
}

}  // namespace

TEST_CASE("tally: simple majority is the sign of the ballot sum") {
  CHECK(tally(BinaryRule::simple_majority(), prof({1, 1, -1})) == 1);
  CHECK(tally(BinaryRule::simple_majority(), prof({1, -1})) == 0);
  CHECK(tally(BinaryRule::simple_majority(), prof({-1, 0, 0})) == -1);
  for (int n = 1; n <= 8; ++n)
    detail::for_each_profile(n, [&](const TernaryProfile& d) {
      CHECK(tally(BinaryRule::simple_majority(), d) == sign_of(d.sum()));
      return true;
    });
}

TEST_CASE("tally: non-minority needs an outright majority camp") {
  CHECK(tally(BinaryRule::non_minority(), prof({1, 1, -1, 0})) == 0);  // 2 is not > 2
  CHECK(tally(BinaryRule::non_minority(), prof({1, 1, 1, -1})) == 1);
  CHECK(tally(BinaryRule::non_minority(), prof({-1, -1, 0})) == -1);
}

TEST_CASE("tally: absolute majority is strongly decisive with exact alpha boundary") {
  BinaryRule am = BinaryRule::absolute_majority(Rational(2, 3));
  CHECK(tally(am, prof({1, 1, 1, 1, 1, 1, -1, -1, -1})) == -1);  // six of nine is not > 2/3
  CHECK(tally(am, prof({1, 1, 1, 1, 1, 1, 1, -1, -1})) == 1);    // seven is
  CHECK(check_strongly_decisive(am, 4).holds);
}

TEST_CASE("tally: absolute special majority is an absolute majority of votes against") {
  BinaryRule asm13 = BinaryRule::absolute_special_majority(Rational(1, 3));
  CHECK(tally(asm13, prof({-1, -1, 0})) == -1);  // two of three against
  CHECK(tally(asm13, prof({0, 0, 0})) == 1);
  // boundary: exactly alpha*n against does not reject
  CHECK(tally(asm13, prof({-1, 0, 0})) == 1);
}

TEST_CASE("asm equals absolute majority on complemented outcomes") {
  for (const Rational& alpha : {Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
    BinaryRule am = BinaryRule::absolute_majority(alpha);
    BinaryRule sp = BinaryRule::absolute_special_majority(alpha);
    for (int n = 1; n <= 5; ++n)
      detail::for_each_profile(n, [&](const TernaryProfile& d) {
        CHECK(tally(sp, d) == -tally(am, d.negated()));
        return true;
      });
  }
}

TEST_CASE("tally: pareto majority distinguishes indifference from conflict") {
  BinaryRule p = BinaryRule::pareto();
  CHECK(tally(p, prof({1, 0, 0})) == 1);
  CHECK(tally(p, prof({-1, -1, 0})) == -1);
  CHECK(tally(p, prof({0, 0})) == 0);
  CHECK(tally(p, prof({1, -1})) == 0);
  CHECK(pareto_flavor(prof({0, 0})) == ParetoFlavor::Indifference);
  CHECK(pareto_flavor(prof({1, -1})) == ParetoFlavor::Unresolved);
  CHECK(pareto_flavor(prof({1, 0})) == ParetoFlavor::For);
  CHECK(pareto_flavor(prof({0, -1})) == ParetoFlavor::Against);
}

TEST_CASE("rule construction validates alpha") {
  CHECK_THROWS_AS(BinaryRule::absolute_majority(Rational(1)), input_error);
  CHECK_THROWS_AS(BinaryRule::absolute_majority(Rational(0)), input_error);
  CHECK_THROWS_AS(BinaryRule::absolute_majority(Rational(5, 4)), input_error);
  CHECK_THROWS_AS(tally(BinaryRule::simple_majority(), TernaryProfile(std::vector<int>{})),
                  input_error);
  CHECK_THROWS_AS(prof({2}), input_error);
}

TEST_CASE("simplex point") {
  auto q = simplex_point(prof({1, 1, -1}));
  CHECK(q.first == Rational(2, 3));
  CHECK(q.second == Rational(1, 3));
  auto zero = simplex_point(prof({0, 0, 0}));
  CHECK(zero.first == Rational(0));
  CHECK(zero.second == Rational(0));
}

TEST_CASE("the dead-band point (1,0,0,-1): every symmetric rule abstains") {
  TernaryProfile d = prof({1, 0, 0, -1});
  auto q = simplex_point(d);
  CHECK(q.first == Rational(1, 4));
  CHECK(q.second == Rational(1, 4));
  CHECK(tally(BinaryRule::simple_majority(), d) == 0);
  CHECK(tally(BinaryRule::non_minority(), d) == 0);
  CHECK(tally(BinaryRule::pareto(), d) == 0);
  // the absolute variants stay decisive
  CHECK(tally(BinaryRule::absolute_majority(Rational(1, 2)), d) == -1);
  CHECK(tally(BinaryRule::absolute_special_majority(Rational(1, 2)), d) == 1);
}

TEST_CASE("simple majority: strongly neutral, strongly monotonic, egalitarian") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(check_strongly_neutral(BinaryRule::simple_majority(), n).holds);
    CHECK(check_strongly_monotonic(BinaryRule::simple_majority(), n).holds);
    CHECK(check_egalitarian(BinaryRule::simple_majority(), n).holds);
  }
}

TEST_CASE("absolute majority is decisive but not strongly neutral") {
  BinaryRule am = BinaryRule::absolute_majority(Rational(1, 2));
  auto r = check_strongly_neutral(am, 3);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 1);
  const TernaryProfile& w = r.witness[0];
  CHECK(tally(am, w.negated()) != -tally(am, w));
  // an incumbent preference also breaks plain neutrality: (1,0,0) loses
  // while (-1,0,0) wins for the incumbent
  CHECK_FALSE(check_neutral(am, 3).holds);
}

TEST_CASE("breaking ties for x is neutral but not strongly neutral") {
  TernaryFn tiebreak = [](const TernaryProfile& d) {
    int s = sign_of(d.sum());
    return s == 0 ? 1 : s;
  };
  for (int n = 1; n <= 4; ++n) {
    CHECK(check_neutral(tiebreak, n).holds);
    CHECK_FALSE(check_strongly_neutral(tiebreak, n).holds);
  }
}

TEST_CASE("pareto rule is strongly neutral") {
  for (int n = 1; n <= 5; ++n) CHECK(check_strongly_neutral(BinaryRule::pareto(), n).holds);
}

TEST_CASE("non-minority: monotonic but not strongly monotonic") {
  BinaryRule nm = BinaryRule::non_minority();
  CHECK(check_monotonic(nm, 3).holds);
  auto r = check_strongly_monotonic(nm, 3);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 2);
  const TernaryProfile& hi = r.witness[0];
  const TernaryProfile& lo = r.witness[1];
  CHECK(detail::geq(hi, lo));
  CHECK_FALSE(hi == lo);
  CHECK(tally(nm, lo) == 0);
  CHECK(tally(nm, hi) != 1);
}

TEST_CASE("a constant rule is monotonic") {
  TernaryFn one = [](const TernaryProfile&) { return 1; };
  CHECK(check_monotonic(one, 3).holds);
  CHECK_FALSE(check_strongly_neutral(one, 2).holds);
}

TEST_CASE("egalitarian: weights break it with the least witness (1,-1)") {
  WeightVector rho({2, 1});
  auto r = check_egalitarian(as_fn(BinaryRule::simple_majority(), rho), 2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 1);
  CHECK(r.witness[0].ballots == std::vector<int>{1, -1});
  // any rule over a single voter is egalitarian
  CHECK(check_egalitarian(as_fn(BinaryRule::simple_majority(), WeightVector({3})), 1).holds);
}

TEST_CASE("simple majority fails strong decisiveness on an exact tie") {
  auto r = check_strongly_decisive(BinaryRule::simple_majority(), 2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 1);
  CHECK(tally(BinaryRule::simple_majority(), r.witness[0]) == 0);
}

TEST_CASE("absolute special majority: unanimity-unambiguous and pro-biased") {
  BinaryRule sp = BinaryRule::absolute_special_majority(Rational(1, 3));
  CHECK(check_unanimity_unambiguous(sp, 3).holds);
  CHECK(check_pro_biased(sp, 3).holds);
  // absolute majority is NOT pro-biased: a fresh supporter can tip it
  CHECK_FALSE(check_pro_biased(BinaryRule::absolute_majority(Rational(1, 3)), 3).holds);
}

TEST_CASE("non-minority's indecisive region is symmetric") {
  for (int n = 1; n <= 5; ++n)
    detail::for_each_profile(n, [&](const TernaryProfile& d) {
      if (tally(BinaryRule::non_minority(), d) == 0)
        CHECK(tally(BinaryRule::non_minority(), d.negated()) == 0);
      return true;
    });
}

TEST_CASE("rule ranking: harder rules win on fewer profiles") {
  BinaryRule sm = BinaryRule::simple_majority();
  BinaryRule nm = BinaryRule::non_minority();
  BinaryRule am23 = BinaryRule::absolute_majority(Rational(2, 3));
  for (int n = 1; n <= 5; ++n)
    detail::for_each_profile(n, [&](const TernaryProfile& d) {
      // specified majorities with alpha >= 1/2 imply a simple-majority win
      if (tally(nm, d) == 1) CHECK(tally(sm, d) == 1);
      if (tally(am23, d) == 1) CHECK(tally(sm, d) == 1);
      // the Paretian quality only shrinks the winning set
      if (paretian(sm)(d) == 1) CHECK(tally(sm, d) == 1);
      if (paretian(nm)(d) == 1) CHECK(tally(nm, d) == 1);
      return true;
    });
}

TEST_CASE("uniqueness: exactly the sign rule survives at n = 2") {
  MayReport r = may_uniqueness(2);
  CHECK(r.functions_searched == 19683);
  CHECK(r.unique);
  CHECK(r.survivor_is_sign);
}

TEST_CASE("uniqueness: dropping egalitarian admits more functions") {
  MayReport r = may_uniqueness(2, false);
  CHECK(r.survivors.size() > 1);
}

TEST_CASE("uniqueness: n = 1 leaves the sign rule among 27 functions") {
  MayReport r = may_uniqueness(1);
  CHECK(r.functions_searched == 27);
  CHECK(r.unique);
  CHECK(r.survivor_is_sign);
}
