#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "agora/binary_rules.hpp"
#include "agora/enumeration.hpp"
#include "agora/multi_rules.hpp"
#include "agora/prefs.hpp"
#include "agora/weighted.hpp"

namespace agora {

/** A pluggable collective choice function under audit. Evaluation must be
    deterministic: equal situations yield equal choice sets. The supported
    proposal-size range lets two-policy rules opt out of tests that would
    push them past their domain. */
struct ChoiceFunction {
  std::string name;
  int min_policies = 1;
  int max_policies = std::numeric_limits<int>::max();
  std::function<ChoiceSet(const Situation&)> eval;

  ChoiceSet operator()(const Situation& s) const { return eval(s); }
};

struct HarnessBounds {
  int policies = 3;
  int voters = 3;
};

/** Replayable evidence for a failed condition: the situations involved (in
    a kind-specific order), the choice sets observed at failure time, and
    the policies / voter the violation turns on. */
struct Witness {
  std::string kind;
  std::string detail;
  std::vector<Situation> situations;
  std::vector<ChoiceSet> observed;
  std::vector<int> policies;
  std::optional<int> voter;
};

struct ConditionVerdict {
  std::string condition;
  std::string rule;
  bool passed = true;
  HarnessBounds bounds;
  std::optional<Witness> witness;
  std::string notes;
};

// --- sweep scaffolding --------------------------------------------------------

namespace harness_detail {

inline std::vector<std::string> sweep_policy_ids(int k) {
  static const char* alphabet[] = {"A", "B", "C", "D", "E", "F"};
  if (k < 1 || k > 6) throw std::out_of_range("sweep supports 1..6 policies");
  return std::vector<std::string>(alphabet, alphabet + k);
}

inline std::vector<std::string> sweep_voter_ids(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("v" + std::to_string(i));
  return v;
}

/** Odometer over admissible orders, m voters; body gets each profile and
    returns false to stop the sweep. Enumeration order is fixed, so the
    first failure found is the canonical (least) witness. */
template <typename Body>
void for_each_admissible_profile(int k, int m, Body body) {
  const std::vector<WeakOrder> orders = enumerate_admissible_orders(k);
  const PolicySet policies{sweep_policy_ids(k)};
  const auto voters = sweep_voter_ids(m);
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  for (;;) {
    std::vector<WeakOrder> chosen;
    for (std::size_t i = 0; i < pick.size(); ++i) chosen.push_back(orders[pick[i]]);
    if (!body(Profile(policies, voters, std::move(chosen)))) return;
    int pos = m - 1;
    while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == orders.size()) {
      pick[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

inline std::vector<std::string> chosen_ids(const ChoiceSet& c, const Situation& s) {
  std::vector<std::string> ids;
  for (int p : c.chosen) ids.push_back(s.profile().policies().id(p));
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline std::uint64_t fnv1a(std::uint64_t h, const std::string& text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t situation_fingerprint(const Situation& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (int p : s.proposal()) h = fnv1a(h, s.profile().policies().id(p));
  for (int v = 0; v < s.profile().num_voters(); ++v) {
    h = fnv1a(h, s.profile().voters()[static_cast<std::size_t>(v)]);
    h = fnv1a(h, to_string(s.profile().order(v), s.profile().policies()));
  }
  return h;
}

/// All ways to insert one fresh policy (index k) into an order over 0..k-1.
inline std::vector<WeakOrder> fresh_policy_placements(const WeakOrder& o) {
  std::vector<WeakOrder> out;
  int k = o.num_policies();
  int c = o.num_classes();
  for (int at = 0; at <= c; ++at) {
    WeakOrder::Classes cs = o.classes();
    cs.insert(cs.begin() + at, {k});
    out.push_back(WeakOrder::from_classes(std::move(cs)));
  }
  for (int at = 0; at < c; ++at) {
    WeakOrder::Classes cs = o.classes();
    cs[static_cast<std::size_t>(at)].push_back(k);
    out.push_back(WeakOrder::from_classes(std::move(cs)));
  }
  return out;
}

inline void require_supported(const ChoiceFunction& f, int k) {
  if (k < f.min_policies || k > f.max_policies)
    throw input_error("rule '" + f.name + "' does not support " + std::to_string(k) + " policies");
}

}  // namespace harness_detail

// --- the five conditions --------------------------------------------------------

/** Admissible orderings: any single admissible ballot must already satisfy
    the function (non-empty choice, proper subset of the proposal); any
    combination of admissible ballots must still yield a non-empty choice.
    An empty choice set on admissible input signals global indifference or
    a policy cycle. */
inline ConditionVerdict check_admissible_orderings(const ChoiceFunction& f, HarnessBounds b) {
  harness_detail::require_supported(f, b.policies);
  ConditionVerdict v{.condition = "admissible-orderings", .rule = f.name, .bounds = b};
  v.notes = "singleton ballots must choose a non-empty proper subset; combined ballots non-empty";
  for (int m = 1; m <= b.voters && v.passed; ++m) {
    harness_detail::for_each_admissible_profile(b.policies, m, [&](Profile d) {
      Situation s(std::move(d));
      ChoiceSet c = f(s);
      if (c.empty()) {
        Witness w{.kind = "empty-choice",
                  .detail = "choice set empty on admissible ballots",
                  .situations = {s},
                  .observed = {c}};
        v.passed = false;
        v.witness = std::move(w);
        return false;
      }
      if (m == 1 && c.chosen.size() == s.proposal().size()) {
        Witness w{.kind = "improper-choice",
                  .detail = "a lone admissible ballot must not elect the whole proposal",
                  .situations = {s},
                  .observed = {c}};
        v.passed = false;
        v.witness = std::move(w);
        return false;
      }
      return true;
    });
  }
  return v;
}

/** Monotonicity: promoting a chosen policy one step for every voter must
    keep it chosen. */
inline ConditionVerdict check_monotonicity(const ChoiceFunction& f, HarnessBounds b) {
  harness_detail::require_supported(f, b.policies);
  ConditionVerdict v{.condition = "monotonicity", .rule = f.name, .bounds = b};
  for (int m = 1; m <= b.voters && v.passed; ++m) {
    harness_detail::for_each_admissible_profile(b.policies, m, [&](Profile d) {
      Situation s(d);
      ChoiceSet before = f(s);
      for (int x : before.chosen) {
        Situation lifted(promote_strong(d, x));
        ChoiceSet after = f(lifted);
        if (!after.contains(x)) {
          Witness w{.kind = "monotonicity",
                    .detail = "policy dropped out of the choice set after being promoted",
                    .situations = {s, lifted},
                    .observed = {before, after},
                    .policies = {x}};
          v.passed = false;
          v.witness = std::move(w);
          return false;
        }
      }
      return true;
    });
  }
  return v;
}

/** The independence comparator on one situation: evaluates the function on
    the situation as given and on its proposal-restricted profile, and
    builds a witness when the two choices disagree. */
inline std::optional<Witness> independence_violation(const ChoiceFunction& f, const Situation& s) {
  Situation narrow(restrict(s.profile(), s.proposal()));
  ChoiceSet cw = f(s), cn = f(narrow);
  if (harness_detail::chosen_ids(cw, s) == harness_detail::chosen_ids(cn, narrow))
    return std::nullopt;
  return Witness{.kind = "independence",
                 .detail = "choice over the proposal changed when off-proposal policies "
                           "were dropped from the ballots",
                 .situations = {s, narrow},
                 .observed = {cw, cn},
                 .policies = s.proposal()};
}

/** Independence of irrelevant alternatives, in its executable restriction
    reading: the choice from a proposal must not change when the ballots
    are cut down to the proposal itself. */
inline ConditionVerdict check_independence(const ChoiceFunction& f, HarnessBounds b) {
  harness_detail::require_supported(f, b.policies);
  ConditionVerdict v{.condition = "independence", .rule = f.name, .bounds = b};
  v.notes = "restriction reading: F(Y, D) must match F(Y, D restricted to Y)";
  for (int size = 2; size < b.policies && v.passed; ++size) {
    // Proposals of the given size, as index subsets of 0..k-1.
    std::vector<int> proposal(static_cast<std::size_t>(size));
    std::function<void(int, int)> subsets = [&](int next, int depth) {
      if (!v.passed) return;
      if (depth == size) {
        for (int m = 1; m <= b.voters && v.passed; ++m) {
          harness_detail::for_each_admissible_profile(b.policies, m, [&](Profile d) {
            if (auto w = independence_violation(f, Situation(std::move(d), proposal))) {
              v.passed = false;
              v.witness = std::move(w);
              return false;
            }
            return true;
          });
        }
        return;
      }
      for (int p = next; p < b.policies; ++p) {
        proposal[static_cast<std::size_t>(depth)] = p;
        subsets(p + 1, depth + 1);
      }
    };
    subsets(0, 0);
  }
  return v;
}

/** Non-imposition. Unilateral test: once every voter ranks a previously
    chosen policy strictly last, that policy must no longer be chosen.
    Tie test: adding one fresh policy, placed anywhere in each voter's
    ballot, must never split a tie between previously tied winners. */
inline ConditionVerdict check_non_imposition(const ChoiceFunction& f, HarnessBounds b) {
  harness_detail::require_supported(f, b.policies);
  ConditionVerdict v{.condition = "non-imposition", .rule = f.name, .bounds = b};
  for (int m = 1; m <= b.voters && v.passed; ++m) {
    harness_detail::for_each_admissible_profile(b.policies, m, [&](Profile d) {
      Situation s(d);
      ChoiceSet before = f(s);
      for (int x : before.chosen) {
        Situation buried(demote_to_bottom(d, x));
        ChoiceSet after = f(buried);
        if (after.contains(x)) {
          Witness w{.kind = "non-imposition-unilateral",
                    .detail = "policy stayed chosen although every voter ranked it last",
                    .situations = {s, buried},
                    .observed = {before, after},
                    .policies = {x}};
          v.passed = false;
          v.witness = std::move(w);
          return false;
        }
      }
      return true;
    });
  }

  if (!v.passed) return v;
  if (b.policies + 1 > f.max_policies) {
    v.notes = "tie test skipped: rule does not support " + std::to_string(b.policies + 1) +
              " policies";
    return v;
  }

  const PolicySet wide_set{harness_detail::sweep_policy_ids(b.policies + 1)};
  const int fresh = b.policies;  // index of the added policy
  for (int m = 1; m <= b.voters && v.passed; ++m) {
    harness_detail::for_each_admissible_profile(b.policies, m, [&](Profile d) {
      Situation s(d);
      ChoiceSet tied = f(s);
      if (tied.chosen.size() < 2) return true;

      // Every sincere extension: each voter slots the fresh policy anywhere.
      std::vector<std::vector<WeakOrder>> slots;
      for (const auto& o : d.orders())
        slots.push_back(harness_detail::fresh_policy_placements(o));
      std::vector<std::size_t> pick(slots.size(), 0);
      for (;;) {
        std::vector<WeakOrder> orders;
        for (std::size_t i = 0; i < slots.size(); ++i) orders.push_back(slots[i][pick[i]]);
        Situation extended(Profile(wide_set, d.voters(), std::move(orders)));
        ChoiceSet after = f(extended);
        for (std::size_t a = 0; a + 1 < tied.chosen.size(); ++a)
          for (std::size_t z = a + 1; z < tied.chosen.size(); ++z) {
            int y_pol = tied.chosen[a], z_pol = tied.chosen[z];
            if (after.contains(y_pol) != after.contains(z_pol)) {
              Witness w{.kind = "non-imposition-tie",
                        .detail = "an added policy broke a tie between previously tied winners",
                        .situations = {s, extended},
                        .observed = {tied, after},
                        .policies = {y_pol, z_pol, fresh}};
              v.passed = false;
              v.witness = std::move(w);
              return false;
            }
          }
        int pos = static_cast<int>(pick.size()) - 1;
        while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == slots[static_cast<std::size_t>(pos)].size()) {
          pick[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) return true;
      }
    });
  }
  return v;
}

/** Non-dictatorial, all four of the stated tests and nothing more.
    Unilateral: no voter's lone choice survives every maximal counter-
    coalition (and no lone rejection survives every promoter coalition).
    Tie-breaking: no single voter's per-voter promotion (or demotion)
    moves the outcome in a way every other voter's cannot. */
inline ConditionVerdict check_non_dictatorial(const ChoiceFunction& f, HarnessBounds b) {
  harness_detail::require_supported(f, b.policies);
  ConditionVerdict v{.condition = "non-dictatorial", .rule = f.name, .bounds = b};
  const int n = b.voters;
  if (n < 2) {
    v.notes = "skipped: dictatorship tests need at least two voters";
    return v;
  }

  const auto orders = enumerate_admissible_orders(b.policies);
  const PolicySet policies{harness_detail::sweep_policy_ids(b.policies)};
  const auto voter_ids = harness_detail::sweep_voter_ids(n);
  std::vector<int> full_proposal;
  for (int p = 0; p < b.policies; ++p) full_proposal.push_back(p);

  // Coalition ballots: the counter-coalition buries x, the promoter
  // coalition raises it.
  auto orders_with_bottom = [&](int x) {
    std::vector<WeakOrder> out;
    for (const auto& o : orders)
      if (o.classes().back() == std::vector<int>{x}) out.push_back(o);
    return out;
  };
  auto orders_with_top = [&](int x) {
    std::vector<WeakOrder> out;
    for (const auto& o : orders)
      if (o.classes().front() == std::vector<int>{x}) out.push_back(o);
    return out;
  };

  // voter j's lone ballot, under the id it will carry inside coalitions
  auto singleton = [&](int j, const WeakOrder& o) {
    return Situation(Profile(policies, {voter_ids[static_cast<std::size_t>(j)]}, {o}));
  };
  // coalition profile: voter j keeps `own`, everyone else takes from `pool`
  auto coalition = [&](int j, const WeakOrder& own, const std::vector<WeakOrder>& pool,
                       const std::vector<std::size_t>& pick) {
    std::vector<WeakOrder> os;
    for (int i = 0, c = 0; i < n; ++i)
      os.push_back(i == j ? own : pool[pick[static_cast<std::size_t>(c++)]]);
    return Situation(Profile(policies, voter_ids, std::move(os)));
  };
  auto for_each_pick = [&](std::size_t pool_size, auto body) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(n - 1), 0);
    for (;;) {
      if (!body(pick)) return;
      int pos = n - 2;
      while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == pool_size) {
        pick[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) return;
    }
  };

  // Dictator capability per voter: some lone ballot whose choice survives
  // every maximal counter-coalition. A capability every single voter holds
  // is dismissed -- the electorate itself is then the deciding set, which
  // is how simple majority escapes the tie objection.
  struct Capability {
    bool has = false;
    std::optional<Situation> solo, sample;
    std::optional<ChoiceSet> solo_out, sample_out;
    int policy = -1;
  };
  std::vector<Capability> dictator_cap(static_cast<std::size_t>(n));
  std::optional<Witness> vetoer_witness;

  for (int j = 0; j < n; ++j) {
    for (const auto& own : orders) {
      Situation solo = singleton(j, own);
      ChoiceSet s = f(solo);

      if (!dictator_cap[static_cast<std::size_t>(j)].has) {
        for (int x : s.chosen) {
          auto pool = orders_with_bottom(x);
          bool survives_all = true;
          std::optional<Situation> sample;
          std::optional<ChoiceSet> sample_out;
          for_each_pick(pool.size(), [&](const std::vector<std::size_t>& pick) {
            Situation counter = coalition(j, own, pool, pick);
            ChoiceSet out = f(counter);
            if (!sample) {
              sample = counter;
              sample_out = out;
            }
            if (!out.contains(x)) {
              survives_all = false;
              return false;
            }
            return true;
          });
          if (survives_all) {
            auto& cap = dictator_cap[static_cast<std::size_t>(j)];
            cap.has = true;
            cap.solo = solo;
            cap.solo_out = s;
            cap.sample = std::move(sample);
            cap.sample_out = std::move(sample_out);
            cap.policy = x;
            break;
          }
        }
      }

      // Vetoer probe: some lone rejection surviving every promoter
      // coalition. Universal veto power is the indictment of the
      // unanimity-style rules, so no dismissal applies here.
      if (vetoer_witness) continue;
      for (int x : full_proposal) {
        if (s.contains(x)) continue;
        auto pool = orders_with_top(x);
        bool blocks_all = true;
        std::optional<Situation> sample;
        std::optional<ChoiceSet> sample_out;
        for_each_pick(pool.size(), [&](const std::vector<std::size_t>& pick) {
          Situation promoted = coalition(j, own, pool, pick);
          ChoiceSet out = f(promoted);
          if (!sample) {
            sample = promoted;
            sample_out = out;
          }
          if (out.contains(x)) {
            blocks_all = false;
            return false;
          }
          return true;
        });
        if (blocks_all) {
          vetoer_witness = Witness{.kind = "vetoer",
                                   .detail = "voter's lone rejection blocks the policy against "
                                             "every promoter coalition",
                                   .situations = {solo, *sample},
                                   .observed = {s, *sample_out},
                                   .policies = {x},
                                   .voter = j};
          break;
        }
      }
    }
  }

  // Dictator findings outrank vetoer findings in the report.
  bool all_capable = true, any_capable = false;
  for (const auto& cap : dictator_cap) {
    all_capable = all_capable && cap.has;
    any_capable = any_capable || cap.has;
  }
  if (any_capable && !all_capable) {
    for (int j = 0; j < n; ++j) {
      const auto& cap = dictator_cap[static_cast<std::size_t>(j)];
      if (!cap.has) continue;
      Witness w{.kind = "dictator",
                .detail = "voter's lone choice survives every counter-coalition, a "
                          "capability the other voters lack",
                .situations = {*cap.solo, *cap.sample},
                .observed = {*cap.solo_out, *cap.sample_out},
                .policies = {cap.policy},
                .voter = j};
      v.passed = false;
      v.witness = std::move(w);
      break;
    }
    return v;
  }
  if (vetoer_witness) {
    v.passed = false;
    v.witness = std::move(vetoer_witness);
    return v;
  }
  if (any_capable)
    v.notes = "tie-survival capability shared by every voter is dismissed: the electorate "
              "is its own deciding set; ";

  // Tie-breaking tests need three policies and at least two voters.
  if (b.policies < 3) {
    v.notes = "tie-breaking tests skipped: they need proposals of three or more policies";
    return v;
  }
  for (int m = 2; m <= n && v.passed; ++m) {
    harness_detail::for_each_admissible_profile(b.policies, m, [&](Profile d) {
      Situation s(d);
      ChoiceSet before = f(s);
      if (before.empty() || static_cast<int>(before.chosen.size()) == d.policies().size()) return true;

      // Flags voter j when j's move changes the outcome and nobody else's
      // does: "if the dictator changes allegiance, policy changes, but if
      // anyone else it does not".
      auto flag_unique_mover = [&](const std::vector<Situation>& variants,
                                   const std::vector<ChoiceSet>& outcomes, int policy,
                                   const char* kind, const char* detail) {
        for (int j = 0; j < m; ++j) {
          if (outcomes[static_cast<std::size_t>(j)] == before) continue;
          bool others_fixed = true;
          for (int i = 0; i < m && others_fixed; ++i)
            if (i != j && !(outcomes[static_cast<std::size_t>(i)] == before)) others_fixed = false;
          if (!others_fixed) continue;
          std::vector<Situation> sits{s};
          std::vector<ChoiceSet> obs{before};
          for (int i = 0; i < m; ++i) {
            sits.push_back(variants[static_cast<std::size_t>(i)]);
            obs.push_back(outcomes[static_cast<std::size_t>(i)]);
          }
          Witness w{.kind = kind,
                    .detail = detail,
                    .situations = std::move(sits),
                    .observed = std::move(obs),
                    .policies = {policy},
                    .voter = j};
          v.passed = false;
          v.witness = std::move(w);
          return true;
        }
        return false;
      };

      // Dictator flavour: promote a non-chosen policy voter by voter.
      for (int y = 0; y < d.policies().size(); ++y) {
        if (before.contains(y)) continue;
        std::vector<Situation> variants;
        std::vector<ChoiceSet> outcomes;
        for (int i = 0; i < m; ++i) {
          variants.emplace_back(promote_strong(d, i, y));
          outcomes.push_back(f(variants.back()));
        }
        if (flag_unique_mover(variants, outcomes, y, "tie-dictator",
                              "one voter's promotion moves the outcome as no other voter's can"))
          return false;
      }

      // Vetoer flavour: demote the unique winner voter by voter.
      if (before.chosen.size() == 1) {
        int x = before.chosen.front();
        std::vector<Situation> variants;
        std::vector<ChoiceSet> outcomes;
        for (int i = 0; i < m; ++i) {
          variants.emplace_back(demote_strong(d, i, x));
          outcomes.push_back(f(variants.back()));
        }
        if (flag_unique_mover(variants, outcomes, x, "tie-vetoer",
                              "one voter's demotion moves the outcome as no other voter's can"))
          return false;
      }
      return true;
    });
  }
  return v;
}

inline std::vector<ConditionVerdict> check_all_conditions(const ChoiceFunction& f,
                                                          HarnessBounds b) {
  return {check_admissible_orderings(f, b), check_monotonicity(f, b), check_independence(f, b),
          check_non_imposition(f, b), check_non_dictatorial(f, b)};
}

/** Re-evaluates a failed verdict's witness and confirms the recorded
    violation still reproduces, output for output. */
inline bool verify_witness(const ChoiceFunction& f, const ConditionVerdict& verdict) {
  if (verdict.passed || !verdict.witness) return false;
  const Witness& w = *verdict.witness;
  std::vector<ChoiceSet> now;
  for (const auto& s : w.situations) now.push_back(f(s));
  for (std::size_t i = 0; i < now.size(); ++i)
    if (!(now[i] == w.observed[i])) return false;

  auto ids = [&](std::size_t i) { return harness_detail::chosen_ids(now[i], w.situations[i]); };
  if (w.kind == "empty-choice") return now[0].empty();
  if (w.kind == "improper-choice")
    return now[0].chosen.size() == w.situations[0].proposal().size();
  if (w.kind == "monotonicity")
    return now[0].contains(w.policies[0]) && !now[1].contains(w.policies[0]);
  if (w.kind == "independence") return ids(0) != ids(1);
  if (w.kind == "non-imposition-unilateral")
    return now[0].contains(w.policies[0]) && now[1].contains(w.policies[0]);
  if (w.kind == "non-imposition-tie")
    return now[0].contains(w.policies[0]) && now[0].contains(w.policies[1]) &&
           now[1].contains(w.policies[0]) != now[1].contains(w.policies[1]);
  if (w.kind == "dictator")
    return now[0].contains(w.policies[0]) && now[1].contains(w.policies[0]);
  if (w.kind == "vetoer")
    return !now[0].contains(w.policies[0]) && !now[1].contains(w.policies[0]);
  if (w.kind == "tie-dictator" || w.kind == "tie-vetoer") {
    if (!w.voter) return false;
    std::size_t j = static_cast<std::size_t>(*w.voter) + 1;  // outcomes start at index 1
    if (now[j] == now[0]) return false;
    for (std::size_t i = 1; i < now.size(); ++i)
      if (i != j && !(now[i] == now[0])) return false;
    return true;
  }
  return false;
}

// --- conflict-resolution combinators -------------------------------------------

/** Pareto choice over the whole ballot universe: a proposal policy is
    chosen when no voter ranks anything above it and someone ranks it above
    something. Indifference is no objection. */
inline ChoiceSet unanimous_choice(const Situation& s) {
  ChoiceSet c;
  const Profile& d = s.profile();
  int all = d.policies().size();
  for (int x : s.proposal()) {
    bool opposed = false, supported = false;
    for (const auto& o : d.orders())
      for (int p = 0; p < all; ++p) {
        if (o.prefers(p, x)) opposed = true;
        if (o.prefers(x, p)) supported = true;
      }
    if (!opposed && supported) c.chosen.push_back(x);
  }
  c.quorum_anomaly = expressing_voters(s) <= 1;
  return c;
}

namespace harness_detail {

inline bool any_contradicted_pair(const Profile& d) {
  int all = d.policies().size();
  for (int p = 0; p < all; ++p)
    for (int q = p + 1; q < all; ++q) {
      bool pq = false, qp = false;
      for (const auto& o : d.orders()) {
        pq = pq || o.prefers(p, q);
        qp = qp || o.prefers(q, p);
      }
      if (pq && qp) return true;
    }
  return false;
}

}  // namespace harness_detail

/** Unresolved choice: a policy touched by any contradicted pair is out;
    what remains follows the unanimous rule. */
inline ChoiceSet unresolved_choice(const Situation& s) {
  const Profile& d = s.profile();
  int all = d.policies().size();
  std::vector<bool> conflicted(static_cast<std::size_t>(all), false);
  for (int p = 0; p < all; ++p)
    for (int q = p + 1; q < all; ++q) {
      bool pq = false, qp = false;
      for (const auto& o : d.orders()) {
        pq = pq || o.prefers(p, q);
        qp = qp || o.prefers(q, p);
      }
      if (pq && qp) conflicted[static_cast<std::size_t>(p)] = conflicted[static_cast<std::size_t>(q)] = true;
    }
  ChoiceSet c = unanimous_choice(s);
  std::vector<int> kept;
  for (int x : c.chosen)
    if (!conflicted[static_cast<std::size_t>(x)]) kept.push_back(x);
  c.chosen = std::move(kept);
  return c;
}

/** How a biased choice resolves contradictions: toward a fixed policy,
    toward a privileged voter's ballot, or by a seeded coin. */
struct Bias {
  enum class Mode { Policy, Voter, Random } mode = Mode::Policy;
  std::string id;              // policy or voter id
  std::uint64_t seed = 0;      // random mode

  static Bias policy(std::string policy_id) { return Bias{Mode::Policy, std::move(policy_id), 0}; }
  static Bias voter(std::string voter_id) { return Bias{Mode::Voter, std::move(voter_id), 0}; }
  static Bias random(std::uint64_t seed) { return Bias{Mode::Random, "", seed}; }
};

/** Biased choice: with no contradiction anywhere it is the unanimous rule;
    once voters contradict one another the designated bias wins outright.
    The random mode derives its pick from the seed and the situation, so
    equal situations keep equal outcomes. */
inline ChoiceSet biased_choice(const Situation& s, const Bias& bias) {
  if (!harness_detail::any_contradicted_pair(s.profile())) return unanimous_choice(s);
  ChoiceSet c;
  c.quorum_anomaly = expressing_voters(s) <= 1;
  switch (bias.mode) {
    case Bias::Mode::Policy: {
      if (s.profile().policies().contains(bias.id)) {
        int p = s.profile().policies().index_of(bias.id);
        if (s.proposes(p)) c.chosen = {p};
      }
      return c;
    }
    case Bias::Mode::Voter: {
      int j = s.profile().voter_index(bias.id);
      c.chosen = restrict_classes(s.profile().order(j), s.proposal()).front();
      std::sort(c.chosen.begin(), c.chosen.end());
      return c;
    }
    case Bias::Mode::Random: {
      std::uint64_t h = harness_detail::situation_fingerprint(s) ^ (bias.seed * 0x9e3779b97f4a7c15ULL);
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
      c.chosen = {s.proposal()[static_cast<std::size_t>(h % s.proposal().size())]};
      return c;
    }
  }
  return c;
}

// --- built-in choice functions ---------------------------------------------------
//
// The multi-policy built-ins read the whole ballot universe and then choose
// within the proposal, which is what exposes them to the independence and
// added-policy anomalies. A function that reads only the restricted profile
// passes independence by construction.

inline ChoiceFunction cf_plurality() {
  return ChoiceFunction{
      .name = "plurality",
      .min_policies = 1,
      .eval = [](const Situation& s) {
        Situation global(s.profile());
        PluralityTally t = plurality_tally(global, true);
        ChoiceSet c;
        c.quorum_anomaly = expressing_voters(s) <= 1;
        int best = 0;
        for (std::size_t i = 0; i < t.policies.size(); ++i)
          if (s.proposes(t.policies[i])) best = std::max(best, t.counts[i]);
        if (best > 0)
          for (std::size_t i = 0; i < t.policies.size(); ++i)
            if (s.proposes(t.policies[i]) && t.counts[i] == best)
              c.chosen.push_back(t.policies[i]);
        return c;
      }};
}

inline ChoiceFunction cf_borda() {
  return ChoiceFunction{
      .name = "borda",
      .min_policies = 1,
      .eval = [](const Situation& s) {
        Situation global(s.profile());
        BordaTally t = borda(global);
        ChoiceSet c;
        c.quorum_anomaly = expressing_voters(s) <= 1;
        std::optional<Rational> best;
        for (std::size_t i = 0; i < t.policies.size(); ++i)
          if (s.proposes(t.policies[i]) && (!best || *best < t.scores[i])) best = t.scores[i];
        for (std::size_t i = 0; i < t.policies.size(); ++i)
          if (s.proposes(t.policies[i]) && t.scores[i] == *best) c.chosen.push_back(t.policies[i]);
        return c;
      }};
}

inline ChoiceFunction cf_condorcet() {
  return ChoiceFunction{
      .name = "condorcet",
      .min_policies = 1,
      .eval = [](const Situation& s) {
        Situation global(s.profile());
        CondorcetResult r = condorcet(global);
        ChoiceSet c;
        c.quorum_anomaly = expressing_voters(s) <= 1;
        if (!r.choice.empty() && s.proposes(r.choice.chosen.front()))
          c.chosen = r.choice.chosen;
        return c;
      }};
}

inline ChoiceFunction cf_unanimous() {
  return ChoiceFunction{.name = "unanimous", .eval = unanimous_choice};
}

inline ChoiceFunction cf_unresolved() {
  return ChoiceFunction{.name = "unresolved", .eval = unresolved_choice};
}

inline ChoiceFunction cf_biased(Bias bias) {
  std::string suffix;
  switch (bias.mode) {
    case Bias::Mode::Policy: suffix = "policy:" + bias.id; break;
    case Bias::Mode::Voter: suffix = "voter:" + bias.id; break;
    case Bias::Mode::Random: suffix = "random"; break;
  }
  return ChoiceFunction{.name = "biased(" + suffix + ")",
                        .eval = [bias](const Situation& s) { return biased_choice(s, bias); }};
}

/** Two-policy rules lifted to choice functions: ballots come from each
    voter's relation on the proposal pair, weights (when given) are keyed
    by voter id. Ties return both policies. */
inline ChoiceFunction lift_binary(const BinaryRule& rule,
                                  std::vector<std::pair<std::string, long long>> weights = {}) {
  std::string name = rule.name();
  if (!weights.empty()) name = "weighted-" + name;
  return ChoiceFunction{
      .name = std::move(name),
      .min_policies = 2,
      .max_policies = 2,
      .eval = [rule, weights](const Situation& s) {
        if (s.proposal().size() != 2)
          throw input_error("two-policy rule needs a two-policy proposal");
        int a = s.proposal()[0], b = s.proposal()[1];
        std::vector<int> ballots;
        std::vector<long long> rho;
        for (int v = 0; v < s.profile().num_voters(); ++v) {
          const auto& o = s.profile().order(v);
          ballots.push_back(o.prefers(a, b) ? 1 : (o.prefers(b, a) ? -1 : 0));
          if (!weights.empty()) {
            const std::string& id = s.profile().voters()[static_cast<std::size_t>(v)];
            long long w = -1;
            for (const auto& [vid, vw] : weights)
              if (vid == id) w = vw;
            if (w < 0) throw input_error("no weight assigned to voter " + id);
            rho.push_back(w);
          }
        }
        TernaryProfile d{ballots};
        int out = weights.empty() ? tally(rule, d)
                                  : weighted_tally(rule, WeightVector(rho), d);
        ChoiceSet c;
        if (out == 1) c.chosen = {a};
        else if (out == -1) c.chosen = {b};
        else c.chosen = {a, b};
        c.quorum_anomaly = expressing_voters(s) <= 1;
        return c;
      }};
}

// --- the impossibility report ------------------------------------------------------

struct ImpossibilityReport {
  HarnessBounds bounds;
  struct Row {
    std::string rule;
    std::vector<ConditionVerdict> verdicts;
    bool fails_somewhere = false;
  };
  std::vector<Row> rows;
  bool every_rule_fails = true;
};

inline std::vector<ChoiceFunction> builtin_multi_functions(std::uint64_t seed) {
  return {cf_plurality(), cf_borda(),      cf_condorcet(),
          cf_unanimous(), cf_biased(Bias::policy("A")), cf_unresolved(),
          cf_biased(Bias::random(seed))};
}

/** Runs all five condition checks against every built-in multi-policy
    function. At three policies and three voters each of them must fail at
    least one condition -- the impossibility theorem at desk scale. */
inline ImpossibilityReport impossibility_report(HarnessBounds b, std::uint64_t seed = 1) {
  ImpossibilityReport report;
  report.bounds = b;
  for (const auto& f : builtin_multi_functions(seed)) {
    ImpossibilityReport::Row row;
    row.rule = f.name;
    row.verdicts = check_all_conditions(f, b);
    for (const auto& v : row.verdicts) row.fails_somewhere = row.fails_somewhere || !v.passed;
    report.every_rule_fails = report.every_rule_fails && row.fails_somewhere;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace agora
