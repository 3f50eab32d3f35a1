#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "agora/prefs.hpp"
#include "agora/rational.hpp"

namespace agora {

/** Two-policy ballots in ternary logic: +1 means x over y, -1 means y over
    x, 0 is explicit indifference or abstention. Absent voters simply do
    not appear in the profile. */
struct TernaryProfile {
  std::vector<int> ballots;

  explicit TernaryProfile(std::vector<int> b) : ballots(std::move(b)) {
    if (ballots.empty()) throw input_error("empty ternary profile");
    for (int v : ballots)
      if (v < -1 || v > 1) throw input_error("ternary ballot must be -1, 0 or +1");
  }

  int size() const { return static_cast<int>(ballots.size()); }
  int count(int value) const {
    int c = 0;
    for (int v : ballots) c += (v == value);
    return c;
  }
  int sum() const {
    int s = 0;
    for (int v : ballots) s += v;
    return s;
  }
  TernaryProfile negated() const {
    std::vector<int> b = ballots;
    for (int& v : b) v = -v;
    return TernaryProfile(std::move(b));
  }

  friend bool operator==(const TernaryProfile& a, const TernaryProfile& b) {
    return a.ballots == b.ballots;
  }
};

inline int sign_of(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/** A two-policy decision rule. alpha is the specified-majority threshold
    and must be a rational strictly between 0 and 1 where required. */
class BinaryRule {
public:
  enum class Kind {
    SimpleMajority,
    NonMinority,
    AbsoluteMajority,
    AbsoluteSpecialMajority,
    Pareto,
  };

  static BinaryRule simple_majority() { return BinaryRule(Kind::SimpleMajority, {}); }
  static BinaryRule non_minority() { return BinaryRule(Kind::NonMinority, {}); }
  static BinaryRule absolute_majority(Rational alpha) {
    return BinaryRule(Kind::AbsoluteMajority, alpha);
  }
  static BinaryRule absolute_special_majority(Rational alpha) {
    return BinaryRule(Kind::AbsoluteSpecialMajority, alpha);
  }
  static BinaryRule pareto() { return BinaryRule(Kind::Pareto, {}); }

  Kind kind() const { return kind_; }
  bool has_alpha() const { return alpha_.has_value(); }
  const Rational& alpha() const {
    if (!alpha_) throw input_error("rule has no alpha parameter");
    return *alpha_;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::SimpleMajority: return "simple-majority";
      case Kind::NonMinority: return "non-minority";
      case Kind::AbsoluteMajority: return "absolute-majority";
      case Kind::AbsoluteSpecialMajority: return "absolute-special-majority";
      case Kind::Pareto: return "pareto";
    }
    return "?";
  }

private:
  BinaryRule(Kind k, std::optional<Rational> alpha) : kind_(k), alpha_(alpha) {
    bool needs = k == Kind::AbsoluteMajority || k == Kind::AbsoluteSpecialMajority;
    if (needs && !alpha_) throw input_error("rule requires alpha");
    if (!needs && alpha_) throw input_error("rule takes no alpha");
    if (alpha_ && !(Rational(0) < *alpha_ && *alpha_ < Rational(1)))
      throw input_error("alpha must lie strictly between 0 and 1");
  }

  Kind kind_;
  std::optional<Rational> alpha_;
};

/// count > alpha * n, with exact arithmetic on the alpha boundary.
inline bool exceeds_fraction(int count, const Rational& alpha, int n) {
  return static_cast<long long>(count) * alpha.den() >
         alpha.num() * static_cast<long long>(n);
}

inline int tally(const BinaryRule& rule, const TernaryProfile& d) {
  int n = d.size();
  switch (rule.kind()) {
    case BinaryRule::Kind::SimpleMajority:
      return sign_of(d.sum());
    case BinaryRule::Kind::NonMinority: {
      if (2 * d.count(1) > n) return 1;
      if (2 * d.count(-1) > n) return -1;
      return 0;
    }
    case BinaryRule::Kind::AbsoluteMajority:
      return exceeds_fraction(d.count(1), rule.alpha(), n) ? 1 : -1;
    case BinaryRule::Kind::AbsoluteSpecialMajority:
      // An absolute majority of votes against rejects; abstentions never
      // hurt adoption, which is what keeps the rule pro-biased.
      return exceeds_fraction(d.count(-1), rule.alpha(), n) ? -1 : 1;
    case BinaryRule::Kind::Pareto: {
      if (d.count(-1) == 0 && d.count(1) > 0) return 1;
      if (d.count(1) == 0 && d.count(-1) > 0) return -1;
      return 0;
    }
  }
  throw input_error("unreachable rule kind");
}

/** Distinguishes the two zero outcomes of the Pareto rule: collective
    indifference (all ballots 0) versus an unresolved conflict. */
enum class ParetoFlavor { For, Against, Indifference, Unresolved };

inline ParetoFlavor pareto_flavor(const TernaryProfile& d) {
  if (d.count(-1) == 0 && d.count(1) > 0) return ParetoFlavor::For;
  if (d.count(1) == 0 && d.count(-1) > 0) return ParetoFlavor::Against;
  if (d.count(1) == 0 && d.count(-1) == 0) return ParetoFlavor::Indifference;
  return ParetoFlavor::Unresolved;
}

/// Election vector on the unit simplex: (#+1/n, #-1/n).
inline std::pair<Rational, Rational> simplex_point(const TernaryProfile& d) {
  return {Rational(d.count(1), d.size()), Rational(d.count(-1), d.size())};
}

// --- condition checks -------------------------------------------------------
//
// Each predicate is checked by exhausting the 3^n profile space. All take an
// arbitrary evaluator so the same machinery serves rules, weighted rules and
// the raw function tables of the uniqueness search. Witnesses are the
// lexicographically least counterexamples (ballot order -1 < 0 < +1), so
// results do not depend on evaluation order.

using TernaryFn = std::function<int(const TernaryProfile&)>;

inline TernaryFn as_fn(const BinaryRule& rule) {
  return [rule](const TernaryProfile& d) { return tally(rule, d); };
}

struct ConditionReport {
  bool holds = true;
  std::vector<TernaryProfile> witness;  // 1 profile, or an ordered pair
  std::string note;
};

namespace detail {

inline void check_exhaustive_bound(int n) {
  if (n < 1 || n > 8)
    throw std::out_of_range("condition checks exhaust 3^n profiles; n is capped at 8");
}

inline std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

inline TernaryProfile nth_profile(std::uint64_t index, int n) {
  std::vector<int> b(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    b[static_cast<std::size_t>(i)] = static_cast<int>(index % 3) - 1;
    index /= 3;
  }
  return TernaryProfile(std::move(b));
}

inline std::uint64_t profile_index(const TernaryProfile& d) {
  std::uint64_t idx = 0;
  for (int v : d.ballots) idx = idx * 3 + static_cast<std::uint64_t>(v + 1);
  return idx;
}

template <typename Body>
void for_each_profile(int n, Body body) {
  std::uint64_t total = pow_u64(3, n);
  for (std::uint64_t i = 0; i < total; ++i)
    if (!body(nth_profile(i, n))) return;
}

inline bool geq(const TernaryProfile& a, const TernaryProfile& b) {
  for (std::size_t i = 0; i < a.ballots.size(); ++i)
    if (a.ballots[i] < b.ballots[i]) return false;
  return true;
}

}  // namespace detail

inline ConditionReport check_strongly_neutral(const TernaryFn& f, int n) {
  detail::check_exhaustive_bound(n);
  ConditionReport r;
  detail::for_each_profile(n, [&](const TernaryProfile& d) {
    if (f(d.negated()) != -f(d)) {
      r.holds = false;
      r.witness = {d};
      return false;
    }
    return true;
  });
  return r;
}

inline ConditionReport check_neutral(const TernaryFn& f, int n) {
  detail::check_exhaustive_bound(n);
  ConditionReport r;
  detail::for_each_profile(n, [&](const TernaryProfile& d) {
    if (d.count(1) != d.count(-1) && f(d.negated()) != -f(d)) {
      r.holds = false;
      r.witness = {d};
      return false;
    }
    return true;
  });
  return r;
}

inline ConditionReport check_monotonic(const TernaryFn& f, int n) {
  detail::check_exhaustive_bound(n);
  ConditionReport r;
  detail::for_each_profile(n, [&](const TernaryProfile& d) {
    detail::for_each_profile(n, [&](const TernaryProfile& d_lo) {
      if (detail::geq(d, d_lo) && f(d) < f(d_lo)) {
        r.holds = false;
        r.witness = {d, d_lo};
        return false;
      }
      return true;
    });
    return r.holds;
  });
  return r;
}

inline ConditionReport check_strongly_monotonic(const TernaryFn& f, int n) {
  ConditionReport r = check_monotonic(f, n);
  if (!r.holds) return r;
  detail::for_each_profile(n, [&](const TernaryProfile& d) {
    detail::for_each_profile(n, [&](const TernaryProfile& d_lo) {
      if (detail::geq(d, d_lo) && !(d == d_lo) && f(d_lo) == 0 && f(d) != 1) {
        r.holds = false;
        r.witness = {d, d_lo};
        r.note = "strict increase from a tied profile must decide for";
        return false;
      }
      return true;
    });
    return r.holds;
  });
  return r;
}

inline ConditionReport check_egalitarian(const TernaryFn& f, int n) {
  detail::check_exhaustive_bound(n);
  ConditionReport r;
  detail::for_each_profile(n, [&](const TernaryProfile& d) {
    std::vector<int> sorted = d.ballots;
    std::sort(sorted.begin(), sorted.end());
    if (f(TernaryProfile(sorted)) != f(d)) {
      r.holds = false;
      r.witness = {d};
      return false;
    }
    return true;
  });
  return r;
}

inline ConditionReport check_strongly_decisive(const TernaryFn& f, int n) {
  detail::check_exhaustive_bound(n);
  ConditionReport r;
  detail::for_each_profile(n, [&](const TernaryProfile& d) {
    if (f(d) == 0) {
      r.holds = false;
      r.witness = {d};
      return false;
    }
    return true;
  });
  return r;
}

inline ConditionReport check_unanimity_unambiguous(const TernaryFn& f, int n) {
  detail::check_exhaustive_bound(n);
  ConditionReport r;
  TernaryProfile ones(std::vector<int>(static_cast<std::size_t>(n), 1));
  TernaryProfile minus(std::vector<int>(static_cast<std::size_t>(n), -1));
  if (f(ones) != 1) {
    r.holds = false;
    r.witness = {ones};
  } else if (f(minus) != -1) {
    r.holds = false;
    r.witness = {minus};
  }
  return r;
}

inline ConditionReport check_pro_biased(const TernaryFn& f, int n) {
  detail::check_exhaustive_bound(n);
  ConditionReport r;
  detail::for_each_profile(n, [&](const TernaryProfile& d) {
    for (int i = 0; i < n; ++i) {
      if (d.ballots[static_cast<std::size_t>(i)] != 0) continue;
      TernaryProfile up = d;
      up.ballots[static_cast<std::size_t>(i)] = 1;
      if (f(up) != f(d)) {
        r.holds = false;
        r.witness = {d, up};
        return false;
      }
    }
    return true;
  });
  return r;
}

// Convenience overloads for plain rules.
inline ConditionReport check_strongly_neutral(const BinaryRule& rule, int n) {
  return check_strongly_neutral(as_fn(rule), n);
}
inline ConditionReport check_neutral(const BinaryRule& rule, int n) {
  return check_neutral(as_fn(rule), n);
}
inline ConditionReport check_monotonic(const BinaryRule& rule, int n) {
  return check_monotonic(as_fn(rule), n);
}
inline ConditionReport check_strongly_monotonic(const BinaryRule& rule, int n) {
  return check_strongly_monotonic(as_fn(rule), n);
}
inline ConditionReport check_egalitarian(const BinaryRule& rule, int n) {
  return check_egalitarian(as_fn(rule), n);
}
inline ConditionReport check_strongly_decisive(const BinaryRule& rule, int n) {
  return check_strongly_decisive(as_fn(rule), n);
}
inline ConditionReport check_unanimity_unambiguous(const BinaryRule& rule, int n) {
  return check_unanimity_unambiguous(as_fn(rule), n);
}
inline ConditionReport check_pro_biased(const BinaryRule& rule, int n) {
  return check_pro_biased(as_fn(rule), n);
}

// --- uniqueness of simple majority ------------------------------------------

/** Full search over every function from 3^n profiles to {-1,0,1}, filtered
    by strongly neutral + strongly monotonic + egalitarian. For n = 2 that
    is 3^9 = 19683 candidate functions; the three conditions leave exactly
    the sign rule. */
struct MayReport {
  int n = 0;
  std::uint64_t functions_searched = 0;
  std::vector<std::vector<int>> survivors;  // outcome tables, profile-index order
  bool unique = false;
  bool survivor_is_sign = false;
};

inline MayReport may_uniqueness(int n, bool require_egalitarian = true) {
  if (n < 1 || n > 2) throw std::out_of_range("may_uniqueness: n must be 1 or 2");
  int profiles = static_cast<int>(detail::pow_u64(3, n));
  std::uint64_t tables = detail::pow_u64(3, profiles);

  MayReport report;
  report.n = n;
  report.functions_searched = tables;

  std::vector<int> table(static_cast<std::size_t>(profiles));
  for (std::uint64_t t = 0; t < tables; ++t) {
    std::uint64_t code = t;
    for (int i = 0; i < profiles; ++i) {
      table[static_cast<std::size_t>(i)] = static_cast<int>(code % 3) - 1;
      code /= 3;
    }
    TernaryFn f = [&table](const TernaryProfile& d) {
      return table[static_cast<std::size_t>(detail::profile_index(d))];
    };
    if (!check_strongly_neutral(f, n).holds) continue;
    if (!check_strongly_monotonic(f, n).holds) continue;
    if (require_egalitarian && !check_egalitarian(f, n).holds) continue;
    report.survivors.push_back(table);
  }

  report.unique = report.survivors.size() == 1;
  if (report.unique) {
    bool is_sign = true;
    for (int i = 0; i < profiles; ++i) {
      TernaryProfile d = detail::nth_profile(static_cast<std::uint64_t>(i), n);
      if (report.survivors[0][static_cast<std::size_t>(i)] != sign_of(d.sum())) is_sign = false;
    }
    report.survivor_is_sign = is_sign;
  }
  return report;
}

}  // namespace agora
