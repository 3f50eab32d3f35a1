#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "agora/multi_rules.hpp"
#include "agora/rational.hpp"

namespace agora {

/** Ceiling on the weakest winning margin around a policy cycle of length
    n: no matter how the electorate splits, some edge of an n-cycle is won
    by at most (n-1)/n of the voters. */
inline Rational cycle_bound(int n) {
  if (n < 3) throw std::out_of_range("cycle_bound: cycles need at least 3 policies");
  return Rational(n - 1, n);
}

/** One simple directed cycle of the strict-majority digraph, its edge
    margins, and whether the (len-1)/len ceiling held. A violated bound is
    an internal-consistency error in the margins, never a valid tally. */
struct CycleReport {
  std::vector<int> cycle;  // local matrix indices, in edge order
  std::vector<Rational> edge_margins;
  Rational min_margin;
  Rational bound;
  bool bound_respected = true;
};

namespace maxmin_detail {

inline void cycles_from(const MajorityMatrix& m, int root, std::vector<int>& path,
                        std::vector<bool>& on_path, std::vector<CycleReport>& out) {
  int v = path.back();
  for (int w = 0; w < m.size(); ++w) {
    if (w == v || !m.beats(v, w)) continue;
    if (w == root && path.size() >= 3) {
      CycleReport r;
      r.cycle = path;
      r.min_margin = Rational(1);
      for (std::size_t i = 0; i < path.size(); ++i) {
        int a = path[i], b = path[(i + 1) % path.size()];
        Rational margin = m.margin(a, b);
        r.edge_margins.push_back(margin);
        r.min_margin = std::min(r.min_margin, margin);
      }
      r.bound = cycle_bound(static_cast<int>(path.size()));
      r.bound_respected = r.min_margin <= r.bound;
      out.push_back(std::move(r));
    } else if (w > root && !on_path[static_cast<std::size_t>(w)]) {
      path.push_back(w);
      on_path[static_cast<std::size_t>(w)] = true;
      cycles_from(m, root, path, on_path, out);
      on_path[static_cast<std::size_t>(w)] = false;
      path.pop_back();
    }
  }
}

}  // namespace maxmin_detail

/** Every simple directed cycle of length 3..n, each reported once (rooted
    at its least vertex). Enumeration is capped at 6 policies; use the SCC
    detector beyond that. */
inline std::vector<CycleReport> audit_cycles(const MajorityMatrix& m) {
  if (m.size() > 6) throw std::out_of_range("audit_cycles: cycle enumeration capped at 6 policies");
  std::vector<CycleReport> out;
  std::vector<bool> on_path(static_cast<std::size_t>(m.size()), false);
  for (int root = 0; root < m.size(); ++root) {
    std::vector<int> path{root};
    on_path[static_cast<std::size_t>(root)] = true;
    maxmin_detail::cycles_from(m, root, path, on_path, out);
    on_path[static_cast<std::size_t>(root)] = false;
  }
  return out;
}

/** A pair (a, b) every expressed ballot agrees on, if any: b can then be
    struck from cycle concerns on that pair and a two-policy vote taken. */
inline std::optional<std::pair<int, int>> elimination_hint(const MajorityMatrix& m) {
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      if (a != b && m.wins(b, a) == 0 && m.wins(a, b) > 0) return std::make_pair(a, b);
  return std::nullopt;
}

// --- Monte Carlo for the independent case ------------------------------------------

/** One discrete random variable: integer support points with integer
    masses. Pairwise win probabilities come out exact. */
struct DiscreteVariable {
  std::vector<int> values;
  std::vector<int> masses;

  int total_mass() const {
    int t = 0;
    for (int m : masses) t += m;
    return t;
  }
};

inline Rational win_probability(const DiscreteVariable& x, const DiscreteVariable& y) {
  long long favourable = 0;
  for (std::size_t i = 0; i < x.values.size(); ++i)
    for (std::size_t j = 0; j < y.values.size(); ++j)
      if (x.values[i] > y.values[j])
        favourable += static_cast<long long>(x.masses[i]) * y.masses[j];
  return Rational(favourable, static_cast<long long>(x.total_mass()) * y.total_mass());
}

struct MaxMinStats {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  Rational max_min;      // largest observed min cyclic win probability
  double mean_min = 0.0;
  int resampled = 0;     // degenerate draws replaced
  std::vector<DiscreteVariable> argmax;  // the configuration attaining max_min
};

/** Samples configurations of n mutually independent discrete variables and
    evaluates the cyclic win probabilities P(X1>X2), ..., P(Xn>X1) exactly
    per sample; randomness only picks the distributions. Per-trial seeds
    derive from the base seed, so the statistics are reproducible and do
    not depend on evaluation order. */
inline MaxMinStats independent_maxmin_mc(int n, int trials, std::uint64_t seed) {
  if (n < 3 || n > 6) throw std::out_of_range("independent_maxmin_mc: n must be in 3..6");
  if (trials < 10000) throw std::out_of_range("independent_maxmin_mc: at least 10^4 trials");

  MaxMinStats stats;
  stats.n = n;
  stats.trials = trials;
  stats.seed = seed;
  stats.max_min = Rational(0);
  double sum_min = 0.0;

  for (int t = 0; t < trials; ++t) {
    std::uint64_t mix = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(t) + 1));
    std::mt19937_64 rng(mix);
    std::uniform_int_distribution<int> support_size(1, 3);
    std::uniform_int_distribution<int> value(0, 2 * n);
    std::uniform_int_distribution<int> mass(1, 9);

    std::vector<DiscreteVariable> vars;
    for (;;) {
      vars.clear();
      for (int i = 0; i < n; ++i) {
        DiscreteVariable v;
        int k = support_size(rng);
        for (int s = 0; s < k; ++s) {
          v.values.push_back(value(rng));
          v.masses.push_back(mass(rng));
        }
        vars.push_back(std::move(v));
      }
      bool degenerate = true;
      for (const auto& v : vars)
        if (v.values.size() != 1 || v.values.front() != vars.front().values.front())
          degenerate = false;
      if (!degenerate) break;
      ++stats.resampled;
    }

    Rational min_p(1);
    for (int i = 0; i < n; ++i)
      min_p = std::min(min_p, win_probability(vars[static_cast<std::size_t>(i)],
                                              vars[static_cast<std::size_t>((i + 1) % n)]));
    sum_min += min_p.to_double();
    if (stats.max_min < min_p) {
      stats.max_min = min_p;
      stats.argmax = vars;
    }
  }
  stats.mean_min = sum_min / trials;
  return stats;
}

}  // namespace agora
