#include "doctest.h"

#include <vector>

#include "agora/weighted.hpp"

using namespace agora;

namespace {

TernaryProfile prof(std::vector<int> b) { return TernaryProfile(std::move(b)); }
const BinaryRule kMaj = BinaryRule::simple_majority();
const BinaryRule kNm = BinaryRule::non_minority();

}  // namespace

TEST_CASE("weight vectors validate") {
  CHECK_THROWS_AS(WeightVector({}), input_error);
  CHECK_THROWS_AS(WeightVector({0, 0}), input_error);
  CHECK_THROWS_AS(WeightVector({1, -1}), input_error);
  CHECK(WeightVector({0, 2}).total() == 2);
}

TEST_CASE("weighted tally: unit weights reduce to the egalitarian rule") {
  WeightVector unit({1, 1, 1});
  detail::for_each_profile(3, [&](const TernaryProfile& d) {
    CHECK(weighted_tally(kMaj, unit, d) == tally(kMaj, d));
    CHECK(weighted_tally(kNm, unit, d) == tally(kNm, d));
    return true;
  });
}

TEST_CASE("weighted tally: worked sums") {
  CHECK(weighted_tally(kMaj, WeightVector({2, 1, 1}), prof({1, -1, -1})) == 0);
  // chairman's casting vote breaks the tie unit weights leave
  CHECK(weighted_tally(kMaj, WeightVector({1, 1, 1, 1}), prof({1, 1, -1, -1})) == 0);
  CHECK(weighted_tally(kMaj, WeightVector({2, 1, 1, 1}), prof({1, 1, -1, -1})) == 1);
  CHECK_THROWS_AS(weighted_tally(kMaj, WeightVector({1, 1}), prof({1, 1, 1})), input_error);
}

TEST_CASE("weighted tally is invariant under scaling the weights") {
  std::vector<WeightVector> vectors{WeightVector({1, 2, 3}), WeightVector({0, 1, 4}),
                                    WeightVector({2, 2, 1})};
  for (const auto& rho : vectors) {
    std::vector<long long> scaled;
    for (long long w : rho.values()) scaled.push_back(7 * w);
    WeightVector rho7(scaled);
    detail::for_each_profile(3, [&](const TernaryProfile& d) {
      CHECK(weighted_tally(kMaj, rho, d) == weighted_tally(kMaj, rho7, d));
      CHECK(weighted_tally(kNm, rho, d) == weighted_tally(kNm, rho7, d));
      return true;
    });
  }
}

TEST_CASE("find_dictator: outweighing everyone else is dictatorship") {
  auto r = find_dictator(kMaj, WeightVector({5, 1, 1, 1, 1}));
  CHECK(r.first() == 0);
  CHECK(r.found == std::vector<int>{0});

  // the geometric construction rho_n = 2^(n-1)
  auto g = find_dictator(kMaj, WeightVector({1, 2, 4, 8}));
  CHECK(g.first() == 3);

  auto none = find_dictator(kMaj, WeightVector({1, 1, 1}));
  CHECK_FALSE(none.first().has_value());
  // each non-dictator carries a refuting profile
  for (int j = 0; j < 3; ++j) {
    REQUIRE(none.refutations[static_cast<std::size_t>(j)].has_value());
    const TernaryProfile& w = *none.refutations[static_cast<std::size_t>(j)];
    int dj = w.ballots[static_cast<std::size_t>(j)];
    CHECK(dj != 0);
    CHECK(weighted_tally(kMaj, WeightVector({1, 1, 1}), w) != dj);
  }
}

TEST_CASE("find_dictator agrees with the rho > W/2 criterion") {
  // every weight vector with entries <= 4, n <= 5 (acceptance criterion 8)
  for (int n = 1; n <= 5; ++n) {
    std::vector<long long> w(static_cast<std::size_t>(n), 0);
    for (;;) {
      int pos = n - 1;
      while (pos >= 0 && w[static_cast<std::size_t>(pos)] == 4) {
        w[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++w[static_cast<std::size_t>(pos)];

      long long total = 0;
      for (long long v : w) total += v;
      if (total == 0) continue;
      WeightVector rho(w);
      auto found = find_dictator(kMaj, rho);
      for (int j = 0; j < n; ++j) {
        bool threshold = 2 * rho.at(j) > total;
        bool is_dictator =
            std::find(found.found.begin(), found.found.end(), j) != found.found.end();
        CHECK(threshold == is_dictator);
      }
    }
  }
}

TEST_CASE("find_vetoer: the defining profiles") {
  // weighted majority (1,1): the other voter still decides, so no vetoer
  CHECK(find_vetoer(kMaj, WeightVector({1, 1})).found.empty());
  // non-minority (2,1,1): the heavy voter's abstention starves both camps
  auto r = find_vetoer(kNm, WeightVector({2, 1, 1}));
  CHECK(r.found == std::vector<int>{0});
  // unit non-minority: 2 of 3 is a majority, no vetoer
  CHECK(find_vetoer(kNm, WeightVector({1, 1, 1})).found.empty());
}

TEST_CASE("essential voters") {
  // zero weight is never essential
  CHECK(essential_voters(kMaj, WeightVector({0, 1, 1})) == std::vector<int>{1, 2});
  // two equals: either flips the tie
  CHECK(essential_voters(kMaj, WeightVector({1, 1})) == std::vector<int>{0, 1});
  // the geometric dictator does not silence the others: with the heavy
  // voters abstaining, light ones still decide
  CHECK(essential_voters(kMaj, WeightVector({1, 2, 4, 8})) == std::vector<int>{0, 1, 2, 3});
  // a dictator is always essential
  auto rho = WeightVector({5, 1, 1});
  auto d = find_dictator(kMaj, rho);
  REQUIRE(d.first().has_value());
  auto ess = essential_voters(kMaj, rho);
  CHECK(std::find(ess.begin(), ess.end(), *d.first()) != ess.end());
}

TEST_CASE("weight bounds: flags cross-validated by exhaustive search") {
  // safe vector: bound satisfied, no dictator confirmed
  auto safe = check_weight_bounds(kMaj, WeightVector({1, 1, 1, 1}));
  CHECK(safe.max_weight_safe);
  CHECK(safe.dictators.found.empty());
  CHECK(safe.vetoers.found.empty());

  // 3 > 5/2 flags the first voter; the search confirms
  auto risk = check_weight_bounds(kMaj, WeightVector({3, 1, 1}));
  CHECK_FALSE(risk.max_weight_safe);
  CHECK(risk.dictator_bound == std::vector<bool>{true, false, false});
  CHECK(risk.dictators.found == std::vector<int>{0});

  // absolute majority, alpha = 3/4, rho = (2,1,1): vetoer bound rho > (1-alpha)W = 1
  // flags only the heavy voter; the bound is sufficient, not necessary, so the
  // exhaustive probe may find more blockers (here adoption needs > 3 of 4).
  auto am = check_weight_bounds(BinaryRule::absolute_majority(Rational(3, 4)),
                                WeightVector({2, 1, 1}));
  CHECK(am.vetoer_bound == std::vector<bool>{true, false, false});
  for (int j = 0; j < 3; ++j)
    if (am.vetoer_bound[static_cast<std::size_t>(j)])
      CHECK(std::find(am.vetoers.found.begin(), am.vetoers.found.end(), j) !=
            am.vetoers.found.end());
  CHECK(std::find(am.vetoers.found.begin(), am.vetoers.found.end(), 0) != am.vetoers.found.end());
}

TEST_CASE("weight bounds agree with searches across small vectors") {
  std::vector<std::vector<long long>> vectors{
      {1, 1, 1}, {2, 1, 1}, {3, 1, 1}, {1, 2, 4, 8}, {2, 2}, {1, 1}, {4, 1, 1, 1}, {0, 1, 1}};
  for (const auto& w : vectors) {
    WeightVector rho(w);
    for (const BinaryRule& rule : {kMaj, kNm}) {
      auto r = check_weight_bounds(rule, rho);
      // sufficient safety condition: rho_max < W/2 -> no dictator, no vetoer
      if (r.max_weight_safe) {
        CHECK(r.dictators.found.empty());
        CHECK(r.vetoers.found.empty());
      }
      // dictator threshold is exact for majority rule
      if (rule.kind() == BinaryRule::Kind::SimpleMajority)
        for (int j = 0; j < rho.size(); ++j) {
          bool found = std::find(r.dictators.found.begin(), r.dictators.found.end(), j) !=
                       r.dictators.found.end();
          CHECK(found == r.dictator_bound[static_cast<std::size_t>(j)]);
        }
    }
  }
}

TEST_CASE("council trees: a flat council of unit weights is simple majority") {
  for (int n = 2; n <= 5; ++n) {
    std::vector<CouncilNode> leaves;
    for (int i = 0; i < n; ++i) leaves.push_back(CouncilNode::leaf(i));
    CouncilNode flat =
        CouncilNode::council(std::move(leaves), std::vector<long long>(static_cast<std::size_t>(n), 1));
    detail::for_each_profile(n, [&](const TernaryProfile& d) {
      CHECK(evaluate_tree(flat, d) == tally(kMaj, d));
      return true;
    });
  }
}

TEST_CASE("council trees: the referendum paradox") {
  // three councils of three unit voters; ballots (+,+,-) (+,+,-) (-,-,-)
  TernaryProfile d = prof({1, 1, -1, 1, 1, -1, -1, -1, -1});
  std::vector<CouncilNode> councils;
  for (int c = 0; c < 3; ++c) {
    std::vector<CouncilNode> leaves;
    for (int i = 0; i < 3; ++i) leaves.push_back(CouncilNode::leaf(3 * c + i));
    councils.push_back(CouncilNode::council(std::move(leaves), {1, 1, 1}));
  }
  CouncilNode root = CouncilNode::council(std::move(councils), {1, 1, 1});
  CHECK(evaluate_tree(root, d) == 1);
  CHECK(tally(kMaj, d) == -1);  // direct majority of the nine leaves
}

TEST_CASE("council trees: internal ties propagate as abstentions") {
  // council {v0, v1} ties, outer council decided by v2
  CouncilNode inner = CouncilNode::council({CouncilNode::leaf(0), CouncilNode::leaf(1)}, {1, 1});
  CouncilNode root = CouncilNode::council({inner, CouncilNode::leaf(2)}, {1, 1});
  CHECK(evaluate_tree(root, prof({1, -1, -1})) == -1);
  CHECK(evaluate_tree(root, prof({1, -1, 0})) == 0);
}

TEST_CASE("council trees: validation") {
  CHECK_THROWS_AS(CouncilNode::council({CouncilNode::leaf(0)}, {1, 1}), input_error);
  CHECK_THROWS_AS(CouncilNode::council({}, {}), input_error);
  CouncilNode dangling = CouncilNode::council({CouncilNode::leaf(7)}, {1});
  CHECK_THROWS_AS(evaluate_tree(dangling, prof({1, 1})), input_error);
}

TEST_CASE("a voter can sit on several councils") {
  CouncilNode a = CouncilNode::council({CouncilNode::leaf(0), CouncilNode::leaf(1)}, {1, 1});
  CouncilNode b = CouncilNode::council({CouncilNode::leaf(0), CouncilNode::leaf(2)}, {1, 1});
  CouncilNode root = CouncilNode::council({a, b}, {1, 1});
  // voter 0 abstains, the two councils mirror voters 1 and 2
  CHECK(evaluate_tree(root, prof({0, 1, 1})) == 1);
  CHECK(evaluate_tree(root, prof({0, 1, -1})) == 0);
  // voter 0 leaning tips both councils
  CHECK(evaluate_tree(root, prof({1, 0, 0})) == 1);
}
