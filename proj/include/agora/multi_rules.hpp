#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agora/prefs.hpp"
#include "agora/rational.hpp"

namespace agora {

// --- pairwise majority matrix -------------------------------------------------

/** Pairwise preference margins over a policy slate. margin(i, j) is the
    fraction of voters putting policy i strictly above policy j, among the
    voters expressing a strict preference either way; a pair nobody splits
    has margin 0 by convention. Indexing is local to the slate; `policies`
    maps back to the source situation and `ids` carries display names. */
class MajorityMatrix {
public:
  MajorityMatrix(std::vector<std::string> ids, std::vector<int> policies,
                 std::vector<std::vector<int>> wins, int voters)
      : ids_(std::move(ids)), policies_(std::move(policies)), wins_(std::move(wins)),
        voters_(voters) {}

  int size() const { return static_cast<int>(ids_.size()); }
  int num_voters() const { return voters_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<int>& policies() const { return policies_; }
  int wins(int i, int j) const {
    return wins_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
  }

  Rational margin(int i, int j) const {
    int expressed = wins(i, j) + wins(j, i);
    if (expressed == 0) return Rational(0);
    return Rational(wins(i, j), expressed);
  }
  /// Strict-majority digraph edge: more voters put i above j than j above i.
  bool beats(int i, int j) const { return wins(i, j) > wins(j, i); }

private:
  std::vector<std::string> ids_;
  std::vector<int> policies_;
  std::vector<std::vector<int>> wins_;
  int voters_;
};

/** Condorcet pairings: one two-policy count per ordered pair of proposal
    policies, indifferent voters sitting each pair out. */
inline MajorityMatrix pairwise_matrix(const Situation& s) {
  const auto& proposal = s.proposal();
  int k = static_cast<int>(proposal.size());
  std::vector<std::vector<int>> wins(static_cast<std::size_t>(k),
                                     std::vector<int>(static_cast<std::size_t>(k), 0));
  for (const auto& order : s.profile().orders())
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j && order.prefers(proposal[static_cast<std::size_t>(i)],
                                    proposal[static_cast<std::size_t>(j)]))
          ++wins[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  std::vector<std::string> ids;
  for (int p : proposal) ids.push_back(s.profile().policies().id(p));
  return MajorityMatrix(std::move(ids), proposal, std::move(wins), s.profile().num_voters());
}

// --- plurality -----------------------------------------------------------------

struct PluralityTally {
  std::vector<int> policies;  // proposal, aligned with counts
  std::vector<int> counts;    // first-choice votes
  int abstentions = 0;
  ChoiceSet choice;
};

/** First-past-the-post over the proposal. A voter whose restricted top
    class is not a single policy abstains when allow_abstain is set and is
    rejected otherwise. Tied leaders are all returned; nobody wins with
    zero votes. */
inline PluralityTally plurality_tally(const Situation& s, bool allow_abstain = true) {
  const auto& proposal = s.proposal();
  PluralityTally t;
  t.policies = proposal;
  t.counts.assign(proposal.size(), 0);
  for (int v = 0; v < s.profile().num_voters(); ++v) {
    auto top = restrict_classes(s.profile().order(v), proposal).front();
    if (top.size() != 1) {
      if (!allow_abstain)
        throw input_error("rejected ballot: voter " + s.profile().voters()[static_cast<std::size_t>(v)] +
                          " has a tied first choice");
      ++t.abstentions;
      continue;
    }
    for (std::size_t i = 0; i < proposal.size(); ++i)
      if (proposal[i] == top.front()) ++t.counts[i];
  }
  int best = 0;
  for (int c : t.counts) best = std::max(best, c);
  if (best > 0)
    for (std::size_t i = 0; i < proposal.size(); ++i)
      if (t.counts[i] == best) t.choice.chosen.push_back(proposal[i]);
  t.choice.quorum_anomaly = expressing_voters(s) <= 1;
  return t;
}

inline ChoiceSet plurality(const Situation& s, bool allow_abstain = true) {
  return plurality_tally(s, allow_abstain).choice;
}

// --- Borda preferendum -----------------------------------------------------------

/** Borda scores over the proposal: each voter hands out #proposal points
    for their best restricted policy down to 1 for the worst; a tied class
    shares the mean of the positions it spans, kept exact. */
struct BordaTally {
  std::vector<int> policies;  // proposal, aligned with scores
  std::vector<Rational> scores;
  WeakOrder::Classes ranking;  // proposal policies grouped by descending score
  ChoiceSet choice;            // the top ranking class
};

inline BordaTally borda(const Situation& s) {
  const auto& proposal = s.proposal();
  int k = static_cast<int>(proposal.size());
  BordaTally t;
  t.policies = proposal;
  t.scores.assign(proposal.size(), Rational(0));
  auto slot = [&](int policy) {
    for (std::size_t i = 0; i < proposal.size(); ++i)
      if (proposal[i] == policy) return i;
    throw input_error("policy not in proposal");
  };
  for (const auto& order : s.profile().orders()) {
    int position = 0;  // 0-based from the top
    for (const auto& cls : restrict_classes(order, proposal)) {
      int size = static_cast<int>(cls.size());
      // Points for positions position .. position+size-1, shared equally:
      // mean of (k - position) down to (k - position - size + 1).
      Rational points(2 * (k - position) - (size - 1), 2);
      for (int p : cls) t.scores[slot(p)] += points;
      position += size;
    }
  }
  std::vector<std::size_t> idx(proposal.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (t.scores[a] != t.scores[b]) return t.scores[b] < t.scores[a];
    return proposal[a] < proposal[b];
  });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || t.scores[idx[i]] != t.scores[idx[i - 1]]) t.ranking.emplace_back();
    t.ranking.back().push_back(proposal[idx[i]]);
  }
  for (auto& cls : t.ranking) std::sort(cls.begin(), cls.end());
  t.choice.chosen = t.ranking.front();
  t.choice.quorum_anomaly = expressing_voters(s) <= 1;
  return t;
}

// --- Condorcet -------------------------------------------------------------------

/// Strongly connected components of the strict-majority digraph, Tarjan.
namespace detail {

inline void scc_rec(const MajorityMatrix& m, int v, int& counter, std::vector<int>& index,
                    std::vector<int>& low, std::vector<int>& stack, std::vector<bool>& on_stack,
                    std::vector<std::vector<int>>& components) {
  index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
  stack.push_back(v);
  on_stack[static_cast<std::size_t>(v)] = true;
  for (int w = 0; w < m.size(); ++w) {
    if (w == v || !m.beats(v, w)) continue;
    if (index[static_cast<std::size_t>(w)] < 0) {
      scc_rec(m, w, counter, index, low, stack, on_stack, components);
      low[static_cast<std::size_t>(v)] =
          std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
    } else if (on_stack[static_cast<std::size_t>(w)]) {
      low[static_cast<std::size_t>(v)] =
          std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
    }
  }
  if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
    std::vector<int> comp;
    int w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[static_cast<std::size_t>(w)] = false;
      comp.push_back(w);
    } while (w != v);
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
}

}  // namespace detail

struct CycleComponent {
  std::vector<int> members;  // local matrix indices
  Rational min_margin;       // smallest strict edge inside the component
};

/** Components of size >= 3 of the strict-majority digraph (size 2 cannot
    occur: the relation is antisymmetric), each with its weakest internal
    winning margin. */
inline std::vector<CycleComponent> detect_cycles(const MajorityMatrix& m) {
  int n = m.size();
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> components;
  int counter = 0;
  for (int v = 0; v < n; ++v)
    if (index[static_cast<std::size_t>(v)] < 0)
      detail::scc_rec(m, v, counter, index, low, stack, on_stack, components);

  std::vector<CycleComponent> cycles;
  for (auto& comp : components) {
    if (comp.size() < 3) continue;
    CycleComponent c;
    c.min_margin = Rational(1);
    for (int a : comp)
      for (int b : comp)
        if (a != b && m.beats(a, b)) c.min_margin = std::min(c.min_margin, m.margin(a, b));
    c.members = std::move(comp);
    cycles.push_back(std::move(c));
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const CycleComponent& a, const CycleComponent& b) { return a.members < b.members; });
  return cycles;
}

struct CondorcetResult {
  ChoiceSet choice;                           // the winner, or empty
  std::vector<CycleComponent> cycles;         // local indices of the matrix
  MajorityMatrix matrix;
};

/** A series of two-policy elections: the policy beating every other is
    chosen. With no such policy the choice set is empty and the majority
    digraph's cycles are reported. */
inline CondorcetResult condorcet(const Situation& s) {
  MajorityMatrix m = pairwise_matrix(s);
  int k = m.size();
  std::optional<int> winner;
  for (int i = 0; i < k && !winner; ++i) {
    bool beats_all = true;
    for (int j = 0; j < k; ++j)
      if (j != i && !m.beats(i, j)) beats_all = false;
    if (beats_all) winner = i;
  }
  CondorcetResult r{ChoiceSet{}, {}, std::move(m)};
  if (winner) {
    r.choice.chosen = {r.matrix.policies()[static_cast<std::size_t>(*winner)]};
  } else {
    r.cycles = detect_cycles(r.matrix);
  }
  r.choice.quorum_anomaly = expressing_voters(s) <= 1;
  return r;
}

// --- committee agenda ------------------------------------------------------------

/** Sequential pairwise contests in the order policies are introduced; the
    winner of each stage advances. A drawn stage aborts the procedure. */
struct AgendaResult {
  struct Stage {
    int incumbent;   // policy index (situation level)
    int challenger;
    int votes_incumbent = 0;
    int votes_challenger = 0;
    std::optional<int> winner;
  };
  std::vector<Stage> stages;
  std::optional<int> final;  // empty when a stage tied
  bool tie_aborted = false;
};

inline AgendaResult agenda(const Situation& s, const std::vector<int>& introduction_order) {
  std::vector<int> sorted = introduction_order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != s.proposal())
    throw input_error("agenda order must be a permutation of the proposal");

  AgendaResult r;
  int survivor = introduction_order.front();
  for (std::size_t next = 1; next < introduction_order.size(); ++next) {
    int challenger = introduction_order[next];
    AgendaResult::Stage stage;
    stage.incumbent = survivor;
    stage.challenger = challenger;
    for (const auto& order : s.profile().orders()) {
      if (order.prefers(survivor, challenger)) ++stage.votes_incumbent;
      else if (order.prefers(challenger, survivor)) ++stage.votes_challenger;
    }
    if (stage.votes_incumbent == stage.votes_challenger) {
      r.stages.push_back(stage);
      r.tie_aborted = true;
      return r;
    }
    survivor = stage.votes_incumbent > stage.votes_challenger ? survivor : challenger;
    stage.winner = survivor;
    r.stages.push_back(stage);
  }
  r.final = survivor;
  return r;
}

}  // namespace agora
