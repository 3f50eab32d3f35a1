// agora: collective-choice tallies and audits over ballot files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "agora/arrow.hpp"
#include "agora/enumeration.hpp"
#include "agora/io.hpp"
#include "agora/maxmin.hpp"
#include "agora/multi_rules.hpp"
#include "agora/weighted.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace agora;

struct Output {
  std::string format = "text";  // text | csv
  std::ostringstream body;
  std::vector<std::string> provenance;

  void note_input(const std::string& path, const std::string& content) {
    provenance.push_back("# input: " + path + " fnv1a=" + fnv1a_hex(content));
  }
  void note_config(const std::string& echo) { provenance.push_back("# config: " + echo); }

  void flush() {
    std::cout << "# agora " << kVersion << "\n";
    for (const auto& line : provenance) std::cout << line << "\n";
    std::cout << body.str();
  }
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<long long> parse_weights(const std::string& csv) {
  std::vector<long long> w;
  for (const auto& tok : split(csv, ',')) w.push_back(std::stoll(tok));
  return w;
}

Situation with_proposal(Situation s, const std::string& proposal_csv) {
  if (proposal_csv.empty()) return s;
  std::vector<int> proposal;
  for (const auto& id : split(proposal_csv, ','))
    proposal.push_back(s.profile().policies().index_of(id));
  return Situation(s.profile(), proposal);
}

std::string ballot_value(int v) { return v > 0 ? "+1" : (v < 0 ? "-1" : "0"); }

std::string format_ranking(const WeakOrder::Classes& classes, const PolicySet& policies) {
  std::string s;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (k > 0) s += " > ";
    for (std::size_t i = 0; i < classes[k].size(); ++i) {
      if (i > 0) s += " = ";
      s += policies.id(classes[k][i]);
    }
  }
  return s;
}

void print_profile(Output& out, const Situation& s, const std::string& indent) {
  const Profile& d = s.profile();
  for (int v = 0; v < d.num_voters(); ++v)
    out.body << indent << "voter " << d.voters()[static_cast<std::size_t>(v)] << ": "
             << to_string(d.order(v), d.policies()) << "\n";
}

void print_choice(Output& out, const ChoiceSet& c, const PolicySet& policies) {
  out.body << "choice: " << to_string(c, policies) << "\n";
  if (c.quorum_anomaly)
    out.body << "validity: questionable, at most one effective ballot decided (quorum anomaly)\n";
}

void print_matrix(Output& out, const MajorityMatrix& m) {
  if (out.format == "csv") {
    out.body << "policy," << join(m.ids(), ",") << "\n";
    for (int i = 0; i < m.size(); ++i) {
      out.body << m.ids()[static_cast<std::size_t>(i)];
      for (int j = 0; j < m.size(); ++j)
        out.body << "," << (i == j ? std::string("-") : m.margin(i, j).str());
      out.body << "\n";
    }
    return;
  }
  out.body << "pairwise margins (row beats column among expressed ballots):\n";
  out.body << "        ";
  for (const auto& id : m.ids()) out.body << id << "\t";
  out.body << "\n";
  for (int i = 0; i < m.size(); ++i) {
    out.body << "  " << m.ids()[static_cast<std::size_t>(i)] << "\t";
    for (int j = 0; j < m.size(); ++j)
      out.body << (i == j ? std::string("-") : m.margin(i, j).str()) << "\t";
    out.body << "\n";
  }
}

void print_witness(Output& out, const Witness& w) {
  out.body << "  witness (" << w.kind << "): " << w.detail << "\n";
  for (std::size_t i = 0; i < w.situations.size(); ++i) {
    const Situation& s = w.situations[i];
    std::vector<std::string> proposal_ids;
    for (int p : s.proposal()) proposal_ids.push_back(s.profile().policies().id(p));
    out.body << "    situation " << i + 1 << " (proposal " << join(proposal_ids, ",") << "):\n";
    print_profile(out, s, "      ");
    out.body << "      -> " << to_string(w.observed[i], s.profile().policies()) << "\n";
  }
  if (w.voter)
    out.body << "    voter under test: position " << *w.voter + 1 << "\n";
}

void print_verdicts(Output& out, const std::vector<ConditionVerdict>& verdicts,
                    bool with_witness = true) {
  for (const auto& v : verdicts) {
    out.body << (v.passed ? "pass" : "FAIL") << "  " << v.condition << "  [rule " << v.rule
             << ", " << v.bounds.policies << " policies, " << v.bounds.voters << " voters]\n";
    if (!v.notes.empty()) out.body << "  note: " << v.notes << "\n";
    if (!v.passed && v.witness && with_witness) print_witness(out, *v.witness);
  }
}

// Rule registries ------------------------------------------------------------

BinaryRule binary_rule_by_name(const std::string& name, const std::string& alpha) {
  auto need_alpha = [&]() {
    if (alpha.empty()) throw input_error("rule " + name + " requires --alpha p/q");
    return Rational::parse(alpha);
  };
  if (name == "simple-majority") return BinaryRule::simple_majority();
  if (name == "non-minority") return BinaryRule::non_minority();
  if (name == "absolute-majority") return BinaryRule::absolute_majority(need_alpha());
  if (name == "absolute-special-majority")
    return BinaryRule::absolute_special_majority(need_alpha());
  if (name == "pareto") return BinaryRule::pareto();
  throw input_error("unknown two-policy rule: " + name);
}

BinaryRule weighted_rule_by_name(const std::string& name, const std::string& alpha) {
  if (name == "weighted-majority") return BinaryRule::simple_majority();
  if (name == "weighted-non-minority") return BinaryRule::non_minority();
  if (name == "weighted-absolute-majority")
    return binary_rule_by_name("absolute-majority", alpha);
  return binary_rule_by_name(name, alpha);
}

Bias parse_bias(const std::string& spec, std::uint64_t seed) {
  if (spec.rfind("policy:", 0) == 0) return Bias::policy(spec.substr(7));
  if (spec.rfind("voter:", 0) == 0) return Bias::voter(spec.substr(6));
  if (spec == "random") return Bias::random(seed);
  throw input_error("bias must be policy:<id>, voter:<id> or random");
}

ChoiceFunction choice_function_by_name(const std::string& name, const std::string& alpha,
                                       const std::string& weights_csv, const std::string& bias,
                                       std::uint64_t seed, int voters) {
  if (name == "plurality") return cf_plurality();
  if (name == "borda") return cf_borda();
  if (name == "condorcet") return cf_condorcet();
  if (name == "unanimous") return cf_unanimous();
  if (name == "unresolved") return cf_unresolved();
  if (name == "biased")
    return cf_biased(parse_bias(bias.empty() ? "policy:A" : bias, seed));
  if (name == "weighted-majority" || name == "weighted-non-minority" ||
      name == "weighted-absolute-majority") {
    if (weights_csv.empty()) throw input_error("rule " + name + " requires --weights");
    auto w = parse_weights(weights_csv);
    if (static_cast<int>(w.size()) != voters)
      throw input_error("--weights must list one weight per voter");
    std::vector<std::pair<std::string, long long>> by_id;
    for (std::size_t i = 0; i < w.size(); ++i)
      by_id.emplace_back("v" + std::to_string(i + 1), w[i]);
    return lift_binary(weighted_rule_by_name(name, alpha), by_id);
  }
  return lift_binary(binary_rule_by_name(name, alpha));
}

// Subcommand bodies ----------------------------------------------------------

int run_tally(Output& out, const std::string& path, const std::string& rule,
              const std::string& proposal, bool no_abstain) {
  std::string content = read_file(path);
  out.note_input(path, content);
  Situation s = with_proposal(parse_ballot_text(content, path), proposal);
  const PolicySet& policies = s.profile().policies();

  if (rule == "plurality") {
    PluralityTally t = plurality_tally(s, !no_abstain);
    if (out.format == "csv") {
      out.body << "policy,first_choice_votes\n";
      for (std::size_t i = 0; i < t.policies.size(); ++i)
        out.body << policies.id(t.policies[i]) << "," << t.counts[i] << "\n";
    } else {
      out.body << "plurality tally:\n";
      for (std::size_t i = 0; i < t.policies.size(); ++i)
        out.body << "  " << policies.id(t.policies[i]) << ": " << t.counts[i] << "\n";
      if (t.abstentions > 0) out.body << "  abstentions: " << t.abstentions << "\n";
    }
    print_choice(out, t.choice, policies);
    return 0;
  }
  if (rule == "borda") {
    BordaTally t = borda(s);
    if (out.format == "csv") {
      out.body << "policy,score\n";
      for (std::size_t i = 0; i < t.policies.size(); ++i)
        out.body << policies.id(t.policies[i]) << "," << t.scores[i].str() << "\n";
    } else {
      out.body << "borda scores:\n";
      for (std::size_t i = 0; i < t.policies.size(); ++i)
        out.body << "  " << policies.id(t.policies[i]) << ": " << t.scores[i].str() << "\n";
      out.body << "ranking: " << format_ranking(t.ranking, policies) << "\n";
    }
    print_choice(out, t.choice, policies);
    return 0;
  }
  if (rule == "condorcet") {
    CondorcetResult r = condorcet(s);
    print_matrix(out, r.matrix);
    if (r.choice.empty()) {
      out.body << "no Condorcet winner\n";
      for (const auto& cyc : r.cycles) {
        std::vector<std::string> ids;
        for (int local : cyc.members)
          ids.push_back(r.matrix.ids()[static_cast<std::size_t>(local)]);
        out.body << "cycle: {" << join(ids, ", ") << "} min margin " << cyc.min_margin.str()
                 << "\n";
      }
    }
    print_choice(out, r.choice, policies);
    return 0;
  }
  throw input_error("tally rule must be plurality, borda or condorcet");
}

int run_tally2(Output& out, const std::string& path, const std::string& rule,
               const std::string& alpha) {
  std::string content = read_file(path);
  out.note_input(path, content);
  TernaryBallots ballots = parse_ternary_text(content, path);
  BinaryRule r = binary_rule_by_name(rule, alpha);
  TernaryProfile d = ballots.profile();
  int outcome = tally(r, d);
  auto q = simplex_point(d);
  out.body << "ballots: " << d.size() << " (+1: " << d.count(1) << ", 0: " << d.count(0)
           << ", -1: " << d.count(-1) << ")\n";
  out.body << "simplex point: (" << q.first.str() << ", " << q.second.str() << ")\n";
  out.body << "outcome: " << ballot_value(outcome) << "\n";
  if (r.kind() == BinaryRule::Kind::Pareto) {
    switch (pareto_flavor(d)) {
      case ParetoFlavor::For: out.body << "pareto: adopted without dissent\n"; break;
      case ParetoFlavor::Against: out.body << "pareto: rejected without dissent\n"; break;
      case ParetoFlavor::Indifference: out.body << "pareto: collective indifference\n"; break;
      case ParetoFlavor::Unresolved: out.body << "pareto: unresolved conflict\n"; break;
    }
  }
  if (outcome != 0 && d.size() - d.count(0) <= 1)
    out.body << "validity: questionable, all ballots bar one abstained (quorum anomaly)\n";
  return 0;
}

std::vector<std::string> wanted_conditions(const std::string& conditions) {
  if (conditions == "all" || conditions.empty()) return {};
  return split(conditions, ',');
}

bool condition_wanted(const std::vector<std::string>& want, const std::string& name) {
  if (want.empty()) return true;
  for (const auto& w : want)
    if (w == name) return true;
  return false;
}

int run_audit(Output& out, const std::string& rule, int policies, int voters,
              const std::string& conditions, const std::string& alpha,
              const std::string& weights, const std::string& bias, std::uint64_t seed,
              bool expect_pass) {
  ChoiceFunction f = choice_function_by_name(rule, alpha, weights, bias, seed, voters);
  HarnessBounds b{policies, voters};
  auto want = wanted_conditions(conditions);
  std::vector<ConditionVerdict> verdicts;
  if (condition_wanted(want, "admissible-orderings"))
    verdicts.push_back(check_admissible_orderings(f, b));
  if (condition_wanted(want, "monotonicity")) verdicts.push_back(check_monotonicity(f, b));
  if (condition_wanted(want, "independence")) verdicts.push_back(check_independence(f, b));
  if (condition_wanted(want, "non-imposition")) verdicts.push_back(check_non_imposition(f, b));
  if (condition_wanted(want, "non-dictatorial")) verdicts.push_back(check_non_dictatorial(f, b));
  if (verdicts.empty()) throw input_error("no known condition in --conditions " + conditions);
  print_verdicts(out, verdicts);
  bool all_passed = true;
  for (const auto& v : verdicts) all_passed = all_passed && v.passed;
  out.body << (all_passed ? "all conditions passed\n" : "some conditions failed\n");
  return expect_pass && !all_passed ? 2 : 0;
}

int run_audit2(Output& out, const std::string& rule, int voters, const std::string& conditions,
               const std::string& alpha, const std::string& weights, bool may, bool expect_pass) {
  BinaryRule r = binary_rule_by_name(rule, alpha);
  TernaryFn f;
  std::string label = rule;
  if (!weights.empty()) {
    WeightVector rho(parse_weights(weights));
    if (rho.size() != voters) throw input_error("--weights must list one weight per voter");
    f = as_fn(r, rho);
    label = "weighted " + rule;
  } else {
    f = as_fn(r);
  }
  auto want = wanted_conditions(conditions);
  struct Row {
    const char* name;
    ConditionReport report;
  };
  std::vector<Row> rows;
  auto add = [&](const char* name, ConditionReport rep) {
    if (condition_wanted(want, name)) rows.push_back({name, std::move(rep)});
  };
  add("strongly-neutral", check_strongly_neutral(f, voters));
  add("neutral", check_neutral(f, voters));
  add("strongly-monotonic", check_strongly_monotonic(f, voters));
  add("monotonic", check_monotonic(f, voters));
  add("egalitarian", check_egalitarian(f, voters));
  add("strongly-decisive", check_strongly_decisive(f, voters));
  add("unanimity-unambiguous", check_unanimity_unambiguous(f, voters));
  add("pro-biased", check_pro_biased(f, voters));
  if (rows.empty()) throw input_error("no known condition in --conditions " + conditions);

  bool all_passed = true;
  out.body << "conditions for " << label << " over " << voters << " voters (3^" << voters
           << " profiles):\n";
  for (const auto& row : rows) {
    out.body << (row.report.holds ? "pass" : "FAIL") << "  " << row.name << "\n";
    all_passed = all_passed && row.report.holds;
    if (!row.report.holds) {
      for (std::size_t i = 0; i < row.report.witness.size(); ++i) {
        out.body << "  witness profile " << i + 1 << ": (";
        const auto& ballots = row.report.witness[i].ballots;
        for (std::size_t k = 0; k < ballots.size(); ++k)
          out.body << (k ? ", " : "") << ballot_value(ballots[k]);
        out.body << ")\n";
      }
      if (!row.report.note.empty()) out.body << "  note: " << row.report.note << "\n";
    }
  }
  if (may) {
    MayReport m = may_uniqueness(voters < 2 ? voters : 2);
    out.body << "uniqueness search at n = " << m.n << ": " << m.functions_searched
             << " functions, " << m.survivors.size() << " satisfy strongly-neutral + "
             << "strongly-monotonic + egalitarian"
             << (m.unique && m.survivor_is_sign ? " (the sign rule)" : "") << "\n";
    all_passed = all_passed && m.unique && m.survivor_is_sign;
  }
  return expect_pass && !all_passed ? 2 : 0;
}

int run_impossibility(Output& out, int policies, int voters, std::uint64_t seed) {
  ImpossibilityReport report = impossibility_report(HarnessBounds{policies, voters}, seed);
  out.body << "conditions at " << policies << " policies, " << voters << " voters:\n\n";
  for (const auto& row : report.rows) {
    out.body << row.rule << ": " << (row.fails_somewhere ? "fails" : "PASSES ALL") << "\n";
    for (const auto& v : row.verdicts) {
      out.body << "  " << (v.passed ? "pass" : "FAIL") << "  " << v.condition;
      if (!v.passed && v.witness) out.body << "  (" << v.witness->kind << ")";
      out.body << "\n";
    }
    for (const auto& v : row.verdicts)
      if (!v.passed && v.witness) {
        print_witness(out, *v.witness);
        break;  // one replayable witness per rule keeps the report readable
      }
    out.body << "\n";
  }
  out.body << (report.every_rule_fails
                   ? "every rule fails at least one condition at these bounds\n"
                   : "UNEXPECTED: some rule passed every condition\n");
  return report.every_rule_fails ? 0 : 2;
}

int run_enumerate(Output& out, int policies, bool count_only) {
  if (count_only) {
    out.body << count_weak_orders(policies) << "\n";
    return 0;
  }
  std::vector<std::string> ids;
  for (int i = 0; i < policies; ++i) ids.push_back(std::string(1, static_cast<char>('A' + i)));
  PolicySet ps(ids);
  for (const auto& o : enumerate_weak_orders(policies)) out.body << to_string(o, ps) << "\n";
  return 0;
}

int run_pairwise(Output& out, const std::string& path, const std::string& proposal,
                 bool detect) {
  std::string content = read_file(path);
  out.note_input(path, content);
  Situation s = with_proposal(parse_ballot_text(content, path), proposal);
  MajorityMatrix m = pairwise_matrix(s);
  print_matrix(out, m);
  if (detect) {
    auto cycles = detect_cycles(m);
    if (cycles.empty()) {
      out.body << "no majority cycles\n";
    } else {
      for (const auto& c : cycles) {
        std::vector<std::string> ids;
        for (int local : c.members) ids.push_back(m.ids()[static_cast<std::size_t>(local)]);
        out.body << "cycle: {" << join(ids, ", ") << "} min margin " << c.min_margin.str()
                 << "\n";
      }
    }
  }
  return 0;
}

int run_agenda(Output& out, const std::string& path, const std::string& order_csv) {
  std::string content = read_file(path);
  out.note_input(path, content);
  Situation s = parse_ballot_text(content, path);
  const PolicySet& policies = s.profile().policies();
  std::vector<int> intro;
  for (const auto& id : split(order_csv, ',')) intro.push_back(policies.index_of(id));
  AgendaResult r = agenda(s, intro);
  for (const auto& stage : r.stages) {
    out.body << policies.id(stage.incumbent) << " vs " << policies.id(stage.challenger) << ": "
             << stage.votes_incumbent << ":" << stage.votes_challenger;
    if (stage.winner) out.body << " -> " << policies.id(*stage.winner);
    out.body << "\n";
  }
  if (r.tie_aborted) out.body << "aborted: drawn stage, the committee procedure has no tie rule\n";
  else out.body << "final: " << policies.id(*r.final) << "\n";
  return 0;
}

int run_maxmin(Output& out, const std::string& path, bool independent, int n, int trials,
               std::uint64_t seed, const std::vector<std::string>& kv) {
  if (independent) {
    for (const auto& item : kv) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw input_error("expected key=value, got " + item);
      std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      if (key == "n") n = std::stoi(value);
      else if (key == "trials") trials = std::stoi(value);
      else if (key == "seed") seed = std::stoull(value);
      else throw input_error("unknown key " + key);
    }
    MaxMinStats stats = independent_maxmin_mc(n, trials, seed);
    out.body << "independent variables: n=" << stats.n << " trials=" << stats.trials
             << " seed=" << stats.seed << "\n";
    out.body << "max observed min cyclic probability: " << stats.max_min.str() << " ("
             << stats.max_min.to_double() << ")\n";
    out.body << "mean min: " << stats.mean_min << ", degenerate resamples: " << stats.resampled
             << "\n";
    out.body << "ceiling for independent variables: 3/4\n";
    return 0;
  }
  if (path.empty()) throw input_error("maxmin needs a ballot file or --independent-mc");
  std::string content = read_file(path);
  out.note_input(path, content);
  Situation s = parse_ballot_text(content, path);
  MajorityMatrix m = pairwise_matrix(s);
  print_matrix(out, m);
  auto reports = audit_cycles(m);
  if (reports.empty()) {
    out.body << "no majority cycles\n";
  } else {
    for (const auto& r : reports) {
      std::vector<std::string> ids;
      for (int local : r.cycle) ids.push_back(m.ids()[static_cast<std::size_t>(local)]);
      out.body << "cycle " << join(ids, " -> ") << " -> " << ids.front() << ": min margin "
               << r.min_margin.str() << ", bound " << r.bound.str()
               << (r.bound_respected ? "" : "  ** BOUND VIOLATION: inconsistent margins **")
               << "\n";
    }
  }
  if (auto hint = elimination_hint(m)) {
    out.body << "elimination hint: every expressed ballot puts "
             << m.ids()[static_cast<std::size_t>(hint->first)] << " above "
             << m.ids()[static_cast<std::size_t>(hint->second)] << "\n";
  }
  return 0;
}

int run_weights(Output& out, const std::string& vector_csv, const std::string& rule,
                const std::string& alpha, const std::string& checks) {
  WeightVector rho(parse_weights(vector_csv));
  BinaryRule r = weighted_rule_by_name(rule.empty() ? "weighted-majority" : rule, alpha);
  auto want = wanted_conditions(checks);
  out.body << "weights: (" << vector_csv << "), total " << rho.total() << ", rule "
           << (rule.empty() ? "weighted-majority" : rule) << "\n";
  if (condition_wanted(want, "dictator")) {
    auto d = find_dictator(r, rho);
    if (d.first()) out.body << "dictator: voter " << *d.first() + 1 << "\n";
    else out.body << "dictator: none\n";
  }
  if (condition_wanted(want, "vetoer")) {
    auto v = find_vetoer(r, rho);
    if (v.found.empty()) {
      out.body << "vetoers: none\n";
    } else {
      out.body << "vetoers:";
      for (int j : v.found) out.body << " voter " << j + 1;
      out.body << "\n";
    }
  }
  if (condition_wanted(want, "essential")) {
    auto e = essential_voters(r, rho);
    out.body << "essential voters:";
    if (e.empty()) out.body << " none";
    for (int j : e) out.body << " voter " << j + 1;
    out.body << "\n";
  }
  if (condition_wanted(want, "bounds")) {
    auto b = check_weight_bounds(r, rho);
    out.body << "rho_max < W/2 safety bound: " << (b.max_weight_safe ? "satisfied" : "violated")
             << "\n";
    for (int j = 0; j < rho.size(); ++j) {
      out.body << "  voter " << j + 1 << " (weight " << rho.at(j) << "):";
      if (b.dictator_bound[static_cast<std::size_t>(j)]) out.body << " dictator-bound";
      if (b.vetoer_bound[static_cast<std::size_t>(j)]) out.body << " vetoer-bound";
      if (!b.dictator_bound[static_cast<std::size_t>(j)] &&
          !b.vetoer_bound[static_cast<std::size_t>(j)])
        out.body << " within bounds";
      out.body << "\n";
    }
  }
  return 0;
}

int run_tree(Output& out, const std::string& tree_path, const std::string& ballots_path) {
  std::string tree_content = read_file(tree_path);
  std::string ballots_content = read_file(ballots_path);
  out.note_input(tree_path, tree_content);
  out.note_input(ballots_path, ballots_content);
  TernaryBallots ballots = parse_ternary_text(ballots_content, ballots_path);
  CouncilNode root = parse_council_text(tree_content, ballots, tree_path);
  TernaryProfile d = ballots.profile();
  int tree_outcome = evaluate_tree(root, d);
  int direct = tally(BinaryRule::simple_majority(), d);
  out.body << "council outcome: " << ballot_value(tree_outcome) << "\n";
  out.body << "direct majority over all " << d.size() << " voters: " << ballot_value(direct)
           << "\n";
  if (tree_outcome != direct)
    out.body << "note: the representative outcome differs from the direct vote\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collective-choice tallies, audits and cycle analytics"};
  app.require_subcommand(1);
  app.fallthrough();  // global --seed/--format may follow the subcommand

  Output out;
  std::uint64_t seed = 1;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for all randomized modes")->capture_default_str();

  std::string path, rule, alpha, proposal, weights, bias, conditions = "all", order_csv,
                                                          vector_csv, checks = "all";
  int policies = 3, voters = 3, mc_n = 3, mc_trials = 100000;
  bool no_abstain = false, count_only = false, detect = false, expect_pass = false,
       independent = false, may = false;
  std::vector<std::string> kv;

  auto* tally_cmd = app.add_subcommand("tally", "rank-ballot election over a ballot file");
  tally_cmd->add_option("ballots", path, "ballot file")->required();
  tally_cmd->add_option("--rule", rule, "plurality|borda|condorcet")->required();
  tally_cmd->add_option("--proposal", proposal, "comma-separated subset of policies");
  tally_cmd->add_flag("--no-abstain", no_abstain, "reject ballots with tied first choices");

  auto* tally2_cmd = app.add_subcommand("tally2", "two-policy ternary division");
  tally2_cmd->add_option("ballots", path, "ternary ballot file")->required();
  tally2_cmd->add_option("--rule", rule, "two-policy rule")->required();
  tally2_cmd->add_option("--alpha", alpha, "threshold p/q for the absolute rules");

  auto* audit_cmd = app.add_subcommand("audit", "run the five condition checks on a rule");
  audit_cmd->add_option("--rule", rule, "choice function name")->required();
  audit_cmd->add_option("--policies", policies, "proposal size")->required();
  audit_cmd->add_option("--voters", voters, "electorate size")->required();
  audit_cmd->add_option("--conditions", conditions, "all or a comma list");
  audit_cmd->add_option("--alpha", alpha, "threshold for absolute rules");
  audit_cmd->add_option("--weights", weights, "per-voter weights for the weighted rules");
  audit_cmd->add_option("--bias", bias, "policy:<id>, voter:<id> or random");
  audit_cmd->add_flag("--expect-pass", expect_pass, "exit 2 when any check fails");

  auto* audit2_cmd = app.add_subcommand("audit2", "two-policy rule conditions, exhaustively");
  audit2_cmd->add_option("--rule", rule, "two-policy rule")->required();
  audit2_cmd->add_option("--voters", voters, "electorate size")->required();
  audit2_cmd->add_option("--conditions", conditions, "all or a comma list");
  audit2_cmd->add_option("--alpha", alpha, "threshold for absolute rules");
  audit2_cmd->add_option("--weights", weights, "per-voter weights");
  audit2_cmd->add_flag("--may-uniqueness", may, "also run the uniqueness search (n <= 2)");
  audit2_cmd->add_flag("--expect-pass", expect_pass, "exit 2 when any check fails");

  auto* imp_cmd = app.add_subcommand("impossibility", "audit every built-in rule at once");
  imp_cmd->add_option("--policies", policies, "proposal size")->capture_default_str();
  imp_cmd->add_option("--voters", voters, "electorate size")->capture_default_str();

  auto* enum_cmd = app.add_subcommand("enumerate", "count or list weak orderings");
  enum_cmd->add_option("--policies", policies, "number of policies")->required();
  enum_cmd->add_flag("--count-only", count_only, "print only the count");

  auto* pair_cmd = app.add_subcommand("pairwise", "pairwise majority matrix");
  pair_cmd->add_option("ballots", path, "ballot file")->required();
  pair_cmd->add_option("--proposal", proposal, "comma-separated subset of policies");
  pair_cmd->add_flag("--detect-cycles", detect, "report strongly connected majority cycles");

  auto* agenda_cmd = app.add_subcommand("agenda", "sequential pairwise committee procedure");
  agenda_cmd->add_option("ballots", path, "ballot file")->required();
  agenda_cmd->add_option("--order", order_csv, "introduction order, e.g. A,B,C")->required();

  auto* maxmin_cmd = app.add_subcommand("maxmin", "cycle margins against the (n-1)/n ceiling");
  maxmin_cmd->add_option("ballots", path, "ballot file");
  maxmin_cmd->add_flag("--independent-mc", independent, "Monte Carlo over independent variables");
  maxmin_cmd->add_option("--n", mc_n, "number of variables")->capture_default_str();
  maxmin_cmd->add_option("--trials", mc_trials, "number of trials")->capture_default_str();
  maxmin_cmd->add_option("params", kv, "key=value overrides (n=, trials=, seed=)");

  auto* weights_cmd = app.add_subcommand("weights", "dictator/vetoer/essential analysis");
  weights_cmd->add_option("--vector", vector_csv, "comma-separated weights")->required();
  weights_cmd->add_option("--rule", rule, "weighted rule")->capture_default_str();
  weights_cmd->add_option("--alpha", alpha, "threshold for absolute rules");
  weights_cmd->add_option("--check", checks, "dictator,vetoer,essential,bounds or all");

  auto* tree_cmd = app.add_subcommand("tree", "evaluate a council tree over ternary ballots");
  tree_cmd->add_option("council", path, "council tree file")->required();
  std::string ballots_path;
  tree_cmd->add_option("ballots", ballots_path, "ternary ballot file")->required();

  CLI11_PARSE(app, argc, argv);

  std::ostringstream echo;
  for (int i = 1; i < argc; ++i) echo << (i > 1 ? " " : "") << argv[i];
  out.note_config(echo.str());

  try {
    int code = 0;
    if (*tally_cmd) code = run_tally(out, path, rule, proposal, no_abstain);
    else if (*tally2_cmd) code = run_tally2(out, path, rule, alpha);
    else if (*audit_cmd)
      code = run_audit(out, rule, policies, voters, conditions, alpha, weights, bias, seed,
                       expect_pass);
    else if (*audit2_cmd)
      code = run_audit2(out, rule, voters, conditions, alpha, weights, may, expect_pass);
    else if (*imp_cmd) code = run_impossibility(out, policies, voters, seed);
    else if (*enum_cmd) code = run_enumerate(out, policies, count_only);
    else if (*pair_cmd) code = run_pairwise(out, path, proposal, detect);
    else if (*agenda_cmd) code = run_agenda(out, path, order_csv);
    else if (*maxmin_cmd) code = run_maxmin(out, path, independent, mc_n, mc_trials, seed, kv);
    else if (*weights_cmd) code = run_weights(out, vector_csv, rule, alpha, checks);
    else if (*tree_cmd) code = run_tree(out, path, ballots_path);
    out.flush();
    return code;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
