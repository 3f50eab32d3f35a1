#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agora/binary_rules.hpp"

namespace agora {

/** Per-voter non-negative integer weights, aligned with a ternary profile.
    At least one weight must be non-zero. */
class WeightVector {
public:
  explicit WeightVector(std::vector<long long> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw input_error("empty weight vector");
    bool any = false;
    for (long long v : w_) {
      if (v < 0) throw input_error("weights must be non-negative");
      any = any || v > 0;
    }
    if (!any) throw input_error("at least one weight must be non-zero");
  }

  int size() const { return static_cast<int>(w_.size()); }
  long long at(int i) const { return w_.at(static_cast<std::size_t>(i)); }
  const std::vector<long long>& values() const { return w_; }

  long long total() const {
    long long t = 0;
    for (long long v : w_) t += v;
    return t;
  }
  /// Combined weight of ballots with the given value.
  long long weight_of(const TernaryProfile& d, int value) const {
    long long t = 0;
    for (int i = 0; i < size(); ++i)
      if (d.ballots[static_cast<std::size_t>(i)] == value) t += at(i);
    return t;
  }

private:
  std::vector<long long> w_;
};

/** Weighted form of the two-policy rules. Majority is sign of the weighted
    ballot sum; non-minority and absolute majority substitute weight-of-camp
    for ballot counts against the same thresholds. */
inline int weighted_tally(const BinaryRule& rule, const WeightVector& rho,
                          const TernaryProfile& d) {
  if (rho.size() != d.size()) throw input_error("weight vector and profile lengths differ");
  long long w_for = rho.weight_of(d, 1);
  long long w_against = rho.weight_of(d, -1);
  long long w_total = rho.total();
  switch (rule.kind()) {
    case BinaryRule::Kind::SimpleMajority:
      return sign_of(w_for - w_against);
    case BinaryRule::Kind::NonMinority: {
      if (2 * w_for > w_total) return 1;
      if (2 * w_against > w_total) return -1;
      return 0;
    }
    case BinaryRule::Kind::AbsoluteMajority: {
      const Rational& a = rule.alpha();
      return w_for * a.den() > a.num() * w_total ? 1 : -1;
    }
    case BinaryRule::Kind::AbsoluteSpecialMajority: {
      const Rational& a = rule.alpha();
      return w_against * a.den() > a.num() * w_total ? -1 : 1;
    }
    case BinaryRule::Kind::Pareto:
      throw input_error("pareto rule has no weighted form");
  }
  throw input_error("unreachable rule kind");
}

inline TernaryFn as_fn(const BinaryRule& rule, const WeightVector& rho) {
  return [rule, rho](const TernaryProfile& d) { return weighted_tally(rule, rho, d); };
}

// --- dictators, vetoers, essential voters -----------------------------------

/** Outcome of an exhaustive per-voter search. `refutations[j]` carries the
    profile disproving voter j where one exists; a confirmed voter has none. */
struct VoterSearch {
  std::vector<int> found;
  std::vector<std::optional<TernaryProfile>> refutations;

  std::optional<int> first() const {
    if (found.empty()) return std::nullopt;
    return found.front();
  }
};

/** Voter j dictates when every profile with a non-abstaining ballot from j
    resolves to that ballot. Exhaustive over 3^n, n capped at 8. */
inline VoterSearch find_dictator(const BinaryRule& rule, const WeightVector& rho) {
  int n = rho.size();
  if (n > 8) throw std::out_of_range("find_dictator: exhaustive search capped at n = 8");
  VoterSearch out;
  out.refutations.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    bool dictator = true;
    detail::for_each_profile(n, [&](const TernaryProfile& d) {
      int dj = d.ballots[static_cast<std::size_t>(j)];
      if (dj != 0 && weighted_tally(rule, rho, d) != dj) {
        dictator = false;
        out.refutations[static_cast<std::size_t>(j)] = d;
        return false;
      }
      return true;
    });
    if (dictator) out.found.push_back(j);
  }
  return out;
}

/** Voter j vetoes when the two defining profiles -- j abstaining against an
    otherwise unanimous electorate -- both come out undecided. For the
    strongly decisive absolute-majority rules, which never emit 0, the veto
    instead shows as blocked adoption: all others for, yet the outcome is
    against. */
inline VoterSearch find_vetoer(const BinaryRule& rule, const WeightVector& rho) {
  int n = rho.size();
  VoterSearch out;
  out.refutations.resize(static_cast<std::size_t>(n));
  bool decisive = rule.kind() == BinaryRule::Kind::AbsoluteMajority ||
                  rule.kind() == BinaryRule::Kind::AbsoluteSpecialMajority;
  for (int j = 0; j < n; ++j) {
    std::vector<int> all_for(static_cast<std::size_t>(n), 1);
    std::vector<int> all_against(static_cast<std::size_t>(n), -1);
    all_for[static_cast<std::size_t>(j)] = 0;
    all_against[static_cast<std::size_t>(j)] = 0;
    TernaryProfile d_for{all_for}, d_against{all_against};
    bool veto;
    if (decisive) {
      veto = weighted_tally(rule, rho, d_for) == -1;
      if (!veto) out.refutations[static_cast<std::size_t>(j)] = d_for;
    } else {
      veto = weighted_tally(rule, rho, d_for) == 0 &&
             weighted_tally(rule, rho, d_against) == 0;
      if (!veto)
        out.refutations[static_cast<std::size_t>(j)] =
            weighted_tally(rule, rho, d_for) != 0 ? d_for : d_against;
    }
    if (veto) out.found.push_back(j);
  }
  return out;
}

/** A voter is essential when some completion of the other ballots makes
    their own ballot value matter. Exhaustive over 3^(n-1), n capped at 8. */
inline std::vector<int> essential_voters(const BinaryRule& rule, const WeightVector& rho) {
  int n = rho.size();
  if (n > 8) throw std::out_of_range("essential_voters: exhaustive search capped at n = 8");
  if (n == 1) {
    bool sensitive = weighted_tally(rule, rho, TernaryProfile(std::vector<int>{1})) !=
                     weighted_tally(rule, rho, TernaryProfile(std::vector<int>{-1}));
    return sensitive ? std::vector<int>{0} : std::vector<int>{};
  }
  std::vector<int> essential;
  for (int i = 0; i < n; ++i) {
    bool found = false;
    detail::for_each_profile(n - 1, [&](const TernaryProfile& others) {
      std::vector<int> b(static_cast<std::size_t>(n));
      for (int k = 0, o = 0; k < n; ++k)
        b[static_cast<std::size_t>(k)] =
            k == i ? 0 : others.ballots[static_cast<std::size_t>(o++)];
      auto with = [&](int v) {
        b[static_cast<std::size_t>(i)] = v;
        return weighted_tally(rule, rho, TernaryProfile(b));
      };
      int f_down = with(-1), f_zero = with(0), f_up = with(1);
      if (f_down != f_zero || f_zero != f_up) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) essential.push_back(i);
  }
  return essential;
}

// --- weight bound analysis ---------------------------------------------------

/** Evaluates the closed-form weight thresholds for dictatorship and veto
    power, next to the exhaustive searches they predict. For majority and
    non-minority rule no weight reaching half the total is safe; absolute
    majority uses the alpha and (1 - alpha) fractions of total weight. */
struct WeightBoundsReport {
  long long total_weight = 0;
  std::vector<bool> dictator_bound;  // threshold exceeded, per voter
  std::vector<bool> vetoer_bound;
  VoterSearch dictators;  // exhaustive confirmation
  VoterSearch vetoers;
  bool max_weight_safe = false;  // rho_max < W/2 (majority and non-minority)
};

inline WeightBoundsReport check_weight_bounds(const BinaryRule& rule, const WeightVector& rho) {
  WeightBoundsReport r;
  int n = rho.size();
  r.total_weight = rho.total();
  long long w = r.total_weight;
  long long rho_max = 0;
  for (int j = 0; j < n; ++j) rho_max = std::max(rho_max, rho.at(j));
  r.max_weight_safe = 2 * rho_max < w;

  for (int j = 0; j < n; ++j) {
    long long rj = rho.at(j);
    switch (rule.kind()) {
      case BinaryRule::Kind::SimpleMajority:
      case BinaryRule::Kind::NonMinority:
        r.dictator_bound.push_back(2 * rj > w);
        r.vetoer_bound.push_back(2 * rj >= w);
        break;
      case BinaryRule::Kind::AbsoluteMajority:
      case BinaryRule::Kind::AbsoluteSpecialMajority: {
        const Rational& a = rule.alpha();
        r.dictator_bound.push_back(rj * a.den() > a.num() * w);
        // rho_j > (1 - alpha) W  <=>  rho_j q > (q - p) W
        r.vetoer_bound.push_back(rj * a.den() > (a.den() - a.num()) * w);
        break;
      }
      case BinaryRule::Kind::Pareto:
        throw input_error("pareto rule has no weighted form");
    }
  }
  r.dictators = find_dictator(rule, rho);
  r.vetoers = find_vetoer(rule, rho);
  return r;
}

// --- representative councils --------------------------------------------------

/** A hierarchy of voting councils. A leaf selects one voter's ballot; a
    council resolves its children by weighted majority. The same voter may
    sit on any number of councils. */
struct CouncilNode {
  int voter = -1;  // leaf payload; unused for councils
  std::vector<CouncilNode> children;
  std::vector<long long> weights;

  bool is_leaf() const { return children.empty(); }

  static CouncilNode leaf(int voter) {
    CouncilNode n;
    n.voter = voter;
    return n;
  }
  static CouncilNode council(std::vector<CouncilNode> children, std::vector<long long> weights) {
    if (children.empty()) throw input_error("council with no members");
    if (children.size() != weights.size())
      throw input_error("council weight vector length must equal member count");
    WeightVector check(weights);  // validates non-negative, not all zero
    CouncilNode n;
    n.children = std::move(children);
    n.weights = std::move(weights);
    return n;
  }
};

/** Bottom-up evaluation: leaves yield their voter's ballot, councils the
    sign of the weighted sum of their children's outcomes. An internal tie
    propagates upward as an abstention. */
inline int evaluate_tree(const CouncilNode& node, const TernaryProfile& d) {
  if (node.is_leaf()) {
    if (node.voter < 0 || node.voter >= d.size())
      throw input_error("council leaf refers to a voter outside the profile");
    return d.ballots[static_cast<std::size_t>(node.voter)];
  }
  long long sum = 0;
  for (std::size_t i = 0; i < node.children.size(); ++i)
    sum += node.weights[i] * evaluate_tree(node.children[i], d);
  return sign_of(sum);
}

}  // namespace agora
