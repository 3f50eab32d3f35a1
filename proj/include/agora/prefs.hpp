#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace agora {

/** Thrown when ballot material violates a structural rule (duplicate ids,
    cyclic relations, rankings that do not cover the policy set, ...). */
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** The universe of policies under consideration. Policies are referred to
    by index everywhere in the library; ids exist for I/O. */
class PolicySet {
public:
  PolicySet() = default;
  explicit PolicySet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    if (ids_.empty()) throw input_error("policy set must be non-empty");
    for (const auto& id : ids_) {
      if (id.empty() || id.find_first_of(" \t\r\n") != std::string::npos)
        throw input_error("policy id must be a non-empty token: '" + id + "'");
    }
    for (std::size_t i = 0; i < ids_.size(); ++i)
      for (std::size_t j = i + 1; j < ids_.size(); ++j)
        if (ids_[i] == ids_[j]) throw input_error("duplicate policy id: " + ids_[i]);
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int i) const { return ids_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& ids() const { return ids_; }

  int index_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (ids_[i] == id) return static_cast<int>(i);
    throw input_error("unknown policy id: " + id);
  }
  bool contains(const std::string& id) const {
    return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
  }

  friend bool operator==(const PolicySet& a, const PolicySet& b) { return a.ids_ == b.ids_; }

private:
  std::vector<std::string> ids_;
};

/** One voter's ranking: ordered indifference classes of policy indices,
    best class first. The representation is total and transitive by
    construction; raw pair input goes through from_pairs below, which
    rejects anything that is not a total preorder. */
class WeakOrder {
public:
  using Classes = std::vector<std::vector<int>>;

  static WeakOrder from_classes(Classes classes) {
    int n = 0;
    for (const auto& c : classes) {
      if (c.empty()) throw input_error("weak order with an empty indifference class");
      n += static_cast<int>(c.size());
    }
    if (n == 0) throw input_error("weak order over no policies");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& c : classes)
      for (int p : c) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
          throw input_error("weak order must mention every policy exactly once");
        seen[static_cast<std::size_t>(p)] = true;
      }
    for (auto& c : classes) std::sort(c.begin(), c.end());
    WeakOrder w;
    w.classes_ = std::move(classes);
    w.build_ranks();
    return w;
  }

  /** Builds an order over policies 0..n-1 from raw relation statements
      (a rel b with rel one of '>', '<', '='). Fails on cycles such as
      x > y, y > z, z > x and on relations that leave a pair incomparable. */
  struct Pair {
    int a;
    char rel;  // '>', '<' or '='
    int b;
  };
  static WeakOrder from_pairs(const std::vector<Pair>& pairs, int n_policies);

  int num_policies() const { return static_cast<int>(rank_.size()); }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  const Classes& classes() const { return classes_; }

  /// 0 is the best class.
  int rank_of(int policy) const { return rank_.at(static_cast<std::size_t>(policy)); }
  bool prefers(int a, int b) const { return rank_of(a) < rank_of(b); }
  bool indifferent(int a, int b) const { return rank_of(a) == rank_of(b); }

  friend bool operator==(const WeakOrder& x, const WeakOrder& y) { return x.classes_ == y.classes_; }
  friend bool operator!=(const WeakOrder& x, const WeakOrder& y) { return !(x == y); }
  friend bool operator<(const WeakOrder& x, const WeakOrder& y) { return x.classes_ < y.classes_; }

private:
  void build_ranks() {
    int n = 0;
    for (const auto& c : classes_) n += static_cast<int>(c.size());
    rank_.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < classes_.size(); ++k)
      for (int p : classes_[k]) rank_[static_cast<std::size_t>(p)] = static_cast<int>(k);
  }

  Classes classes_;
  std::vector<int> rank_;
};

inline WeakOrder WeakOrder::from_pairs(const std::vector<Pair>& pairs, int n_policies) {
  if (n_policies <= 0) throw input_error("weak order over no policies");
  // Indifference components via union-find.
  std::vector<int> parent(static_cast<std::size_t>(n_policies));
  for (int i = 0; i < n_policies; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<bool> mentioned(static_cast<std::size_t>(n_policies), false);
  auto touch = [&](int p) {
    if (p < 0 || p >= n_policies) throw input_error("relation mentions an unknown policy");
    mentioned[static_cast<std::size_t>(p)] = true;
  };
  for (const auto& pr : pairs) {
    touch(pr.a);
    touch(pr.b);
    if (pr.rel == '=') parent[static_cast<std::size_t>(find(pr.a))] = find(pr.b);
  }
  for (int p = 0; p < n_policies; ++p)
    if (!mentioned[static_cast<std::size_t>(p)])
      throw input_error("relation does not mention every policy");

  // Strict edges between components; reach[u][v] = u strictly above v.
  std::vector<std::vector<bool>> reach(
      static_cast<std::size_t>(n_policies),
      std::vector<bool>(static_cast<std::size_t>(n_policies), false));
  for (const auto& pr : pairs) {
    int a = find(pr.a), b = find(pr.b);
    if (pr.rel == '>') reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    if (pr.rel == '<') reach[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
  }
  for (int k = 0; k < n_policies; ++k)
    for (int i = 0; i < n_policies; ++i)
      if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
        for (int j = 0; j < n_policies; ++j)
          if (reach[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
            reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;

  std::vector<int> roots;
  for (int p = 0; p < n_policies; ++p)
    if (find(p) == p) roots.push_back(p);
  for (int r : roots)
    if (reach[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)])
      throw input_error("cyclic relation is not a weak order");
  for (int u : roots)
    for (int v : roots)
      if (u != v && !reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] &&
          !reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
        throw input_error("relation leaves policies incomparable");

  // Total + acyclic: components sort into a unique chain.
  std::sort(roots.begin(), roots.end(), [&](int u, int v) {
    return reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
  });
  Classes classes(roots.size());
  for (int p = 0; p < n_policies; ++p) {
    int r = find(p);
    for (std::size_t k = 0; k < roots.size(); ++k)
      if (roots[k] == r) classes[k].push_back(p);
  }
  return from_classes(std::move(classes));
}

/** A preference profile: one weak order per voter, all over one policy set. */
class Profile {
public:
  Profile(PolicySet policies, std::vector<std::string> voters, std::vector<WeakOrder> orders)
      : policies_(std::move(policies)), voters_(std::move(voters)), orders_(std::move(orders)) {
    if (voters_.size() != orders_.size()) throw input_error("one order per voter required");
    if (voters_.empty()) throw input_error("no ballots");
    for (std::size_t i = 0; i < voters_.size(); ++i)
      for (std::size_t j = i + 1; j < voters_.size(); ++j)
        if (voters_[i] == voters_[j]) throw input_error("duplicate voter: " + voters_[i]);
    for (const auto& o : orders_)
      if (o.num_policies() != policies_.size())
        throw input_error("order does not cover the policy set");
  }

  const PolicySet& policies() const { return policies_; }
  const std::vector<std::string>& voters() const { return voters_; }
  int num_voters() const { return static_cast<int>(voters_.size()); }
  const WeakOrder& order(int voter) const { return orders_.at(static_cast<std::size_t>(voter)); }
  const std::vector<WeakOrder>& orders() const { return orders_; }

  int voter_index(const std::string& id) const {
    for (std::size_t i = 0; i < voters_.size(); ++i)
      if (voters_[i] == id) return static_cast<int>(i);
    throw input_error("unknown voter id: " + id);
  }

  Profile with_order(int voter, WeakOrder order) const {
    Profile p = *this;
    p.orders_.at(static_cast<std::size_t>(voter)) = std::move(order);
    return p;
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.policies_ == b.policies_ && a.voters_ == b.voters_ && a.orders_ == b.orders_;
  }

private:
  PolicySet policies_;
  std::vector<std::string> voters_;
  std::vector<WeakOrder> orders_;
};

/** A proposal put to a profile: the pair (Y, D). The proposal is kept as
    sorted indices into the profile's policy set. */
class Situation {
public:
  Situation(Profile profile, std::vector<int> proposal)
      : profile_(std::move(profile)), proposal_(std::move(proposal)) {
    if (proposal_.empty()) throw input_error("empty proposal");
    std::sort(proposal_.begin(), proposal_.end());
    for (std::size_t i = 0; i < proposal_.size(); ++i) {
      int p = proposal_[i];
      if (p < 0 || p >= profile_.policies().size()) throw input_error("proposal outside the policy set");
      if (i > 0 && proposal_[i - 1] == p) throw input_error("duplicate policy in proposal");
    }
  }
  /// Proposal defaults to the whole policy set.
  explicit Situation(Profile profile) : profile_(std::move(profile)) {
    for (int p = 0; p < profile_.policies().size(); ++p) proposal_.push_back(p);
  }

  const Profile& profile() const { return profile_; }
  const std::vector<int>& proposal() const { return proposal_; }
  bool proposes(int policy) const {
    return std::binary_search(proposal_.begin(), proposal_.end(), policy);
  }

private:
  Profile profile_;
  std::vector<int> proposal_;
};

/** Result of a collective choice: the chosen subset of the proposal, plus
    the quorum-anomaly flag (set when at most one voter expressed any
    strict preference on the proposal, so a lone ballot decided). */
struct ChoiceSet {
  std::vector<int> chosen;  // sorted policy indices, subset of the proposal
  bool quorum_anomaly = false;

  bool contains(int policy) const {
    return std::binary_search(chosen.begin(), chosen.end(), policy);
  }
  bool empty() const { return chosen.empty(); }

  friend bool operator==(const ChoiceSet& a, const ChoiceSet& b) { return a.chosen == b.chosen; }
  friend bool operator!=(const ChoiceSet& a, const ChoiceSet& b) { return !(a == b); }
};

// --- admissibility ---------------------------------------------------------

/** Restriction of one order to a set of policies, reported as classes over
    the original indices (empty classes dropped). */
inline WeakOrder::Classes restrict_classes(const WeakOrder& order, const std::vector<int>& keep) {
  WeakOrder::Classes out;
  for (const auto& cls : order.classes()) {
    std::vector<int> kept;
    for (int p : cls)
      if (std::find(keep.begin(), keep.end(), p) != keep.end()) kept.push_back(p);
    if (!kept.empty()) out.push_back(std::move(kept));
  }
  return out;
}

/** An ordering is admissible for a proposal when its restriction still
    discriminates: the top restricted class is a proper subset of the
    proposal. Total/transitive/acyclic hold structurally. */
inline bool is_admissible(const WeakOrder& order, const std::vector<int>& proposal) {
  for (int p : proposal)
    if (p < 0 || p >= order.num_policies()) throw input_error("proposal outside the policy set");
  return restrict_classes(order, proposal).size() >= 2;
}

inline bool is_admissible(const WeakOrder& order, const PolicySet& within,
                          const std::vector<std::string>& proposal_ids) {
  std::vector<int> proposal;
  for (const auto& id : proposal_ids) proposal.push_back(within.index_of(id));
  return is_admissible(order, proposal);
}

/// Number of voters whose order still discriminates between proposal policies.
inline int expressing_voters(const Situation& s) {
  int n = 0;
  for (const auto& o : s.profile().orders())
    if (restrict_classes(o, s.proposal()).size() >= 2) ++n;
  return n;
}

// --- promotion and demotion ------------------------------------------------

namespace detail {

/// Indifference involving x becomes strict in x's favour; nothing else moves.
inline WeakOrder promote_weak(const WeakOrder& o, int x) {
  WeakOrder::Classes cs = o.classes();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    auto it = std::find(cs[k].begin(), cs[k].end(), x);
    if (it == cs[k].end()) continue;
    if (cs[k].size() == 1) return o;
    cs[k].erase(it);
    cs.insert(cs.begin() + static_cast<std::ptrdiff_t>(k), {x});
    return WeakOrder::from_classes(std::move(cs));
  }
  throw input_error("policy not in order");
}

inline WeakOrder demote_weak(const WeakOrder& o, int x) {
  WeakOrder::Classes cs = o.classes();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    auto it = std::find(cs[k].begin(), cs[k].end(), x);
    if (it == cs[k].end()) continue;
    if (cs[k].size() == 1) return o;
    cs[k].erase(it);
    cs.insert(cs.begin() + static_cast<std::ptrdiff_t>(k) + 1, {x});
    return WeakOrder::from_classes(std::move(cs));
  }
  throw input_error("policy not in order");
}

/** One adjacent upward move: split x out of a shared class, or merge a
    lone x into the class above. Fixed point once x is the unique top. */
inline WeakOrder promote_strong_step(const WeakOrder& o, int x) {
  WeakOrder::Classes cs = o.classes();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    auto it = std::find(cs[k].begin(), cs[k].end(), x);
    if (it == cs[k].end()) continue;
    if (cs[k].size() > 1) {
      cs[k].erase(it);
      cs.insert(cs.begin() + static_cast<std::ptrdiff_t>(k), {x});
    } else if (k > 0) {
      cs[k - 1].push_back(x);
      cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      return o;
    }
    return WeakOrder::from_classes(std::move(cs));
  }
  throw input_error("policy not in order");
}

inline WeakOrder demote_strong_step(const WeakOrder& o, int x) {
  WeakOrder::Classes cs = o.classes();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    auto it = std::find(cs[k].begin(), cs[k].end(), x);
    if (it == cs[k].end()) continue;
    if (cs[k].size() > 1) {
      cs[k].erase(it);
      cs.insert(cs.begin() + static_cast<std::ptrdiff_t>(k) + 1, {x});
    } else if (k + 1 < cs.size()) {
      cs[k + 1].push_back(x);
      cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      return o;
    }
    return WeakOrder::from_classes(std::move(cs));
  }
  throw input_error("policy not in order");
}

template <typename Step>
Profile map_orders(const Profile& d, Step step) {
  std::vector<WeakOrder> orders;
  orders.reserve(d.orders().size());
  for (const auto& o : d.orders()) orders.push_back(step(o));
  return Profile(d.policies(), d.voters(), std::move(orders));
}

}  // namespace detail

inline Profile promote(const Profile& d, int x) {
  return detail::map_orders(d, [&](const WeakOrder& o) { return detail::promote_weak(o, x); });
}
inline Profile demote(const Profile& d, int x) {
  return detail::map_orders(d, [&](const WeakOrder& o) { return detail::demote_weak(o, x); });
}
inline Profile promote_strong(const Profile& d, int x) {
  return detail::map_orders(d, [&](const WeakOrder& o) { return detail::promote_strong_step(o, x); });
}
inline Profile demote_strong(const Profile& d, int x) {
  return detail::map_orders(d, [&](const WeakOrder& o) { return detail::demote_strong_step(o, x); });
}

// Per-voter variants; every other voter's order is untouched.
inline Profile promote(const Profile& d, int voter, int x) {
  return d.with_order(voter, detail::promote_weak(d.order(voter), x));
}
inline Profile demote(const Profile& d, int voter, int x) {
  return d.with_order(voter, detail::demote_weak(d.order(voter), x));
}
inline Profile promote_strong(const Profile& d, int voter, int x) {
  return d.with_order(voter, detail::promote_strong_step(d.order(voter), x));
}
inline Profile demote_strong(const Profile& d, int voter, int x) {
  return d.with_order(voter, detail::demote_strong_step(d.order(voter), x));
}

/// Iterates promote_strong until x is the unique top class for every voter.
inline Profile promote_to_top(const Profile& d, int x) {
  Profile cur = d;
  int budget = 2 * d.policies().size() + 1;
  while (budget-- > 0) {
    Profile next = promote_strong(cur, x);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

inline Profile demote_to_bottom(const Profile& d, int x) {
  Profile cur = d;
  int budget = 2 * d.policies().size() + 1;
  while (budget-- > 0) {
    Profile next = demote_strong(cur, x);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

// --- restriction ------------------------------------------------------------

/** Projects every order onto the proposal, preserving relative relations.
    The result is a profile over a fresh policy set holding exactly the
    proposal's policies, in their policy-set order. */
inline Profile restrict(const Profile& d, const std::vector<int>& proposal) {
  std::vector<int> keep = proposal;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw input_error("empty proposal");
  std::vector<std::string> ids;
  std::vector<int> new_index(static_cast<std::size_t>(d.policies().size()), -1);
  for (int p : keep) {
    if (p < 0 || p >= d.policies().size()) throw input_error("proposal outside the policy set");
    new_index[static_cast<std::size_t>(p)] = static_cast<int>(ids.size());
    ids.push_back(d.policies().id(p));
  }
  std::vector<WeakOrder> orders;
  for (const auto& o : d.orders()) {
    WeakOrder::Classes cs;
    for (const auto& cls : restrict_classes(o, keep)) {
      std::vector<int> mapped;
      for (int p : cls) mapped.push_back(new_index[static_cast<std::size_t>(p)]);
      cs.push_back(std::move(mapped));
    }
    orders.push_back(WeakOrder::from_classes(std::move(cs)));
  }
  return Profile(PolicySet(std::move(ids)), d.voters(), std::move(orders));
}

inline Situation restrict(const Situation& s, const std::vector<int>& proposal) {
  return Situation(restrict(s.profile(), proposal));
}

// --- formatting -------------------------------------------------------------

/// Renders an order in ballot-line syntax, e.g. "A > B = C".
inline std::string to_string(const WeakOrder& order, const PolicySet& policies) {
  std::string out;
  for (std::size_t k = 0; k < order.classes().size(); ++k) {
    if (k > 0) out += " > ";
    const auto& cls = order.classes()[k];
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i > 0) out += " = ";
      out += policies.id(cls[i]);
    }
  }
  return out;
}

inline std::string to_string(const ChoiceSet& c, const PolicySet& policies) {
  if (c.chosen.empty()) return "{}";
  std::string out = "{";
  for (std::size_t i = 0; i < c.chosen.size(); ++i) {
    if (i > 0) out += ", ";
    out += policies.id(c.chosen[i]);
  }
  return out + "}";
}

}  // namespace agora
