#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "agora/binary_rules.hpp"
#include "agora/prefs.hpp"
#include "agora/weighted.hpp"

namespace agora {

/** Parse failure with position information, formatted "source:line: what". */
struct parse_error : input_error {
  parse_error(const std::string& source, int line, const std::string& what)
      : input_error(source + ":" + std::to_string(line) + ": " + what) {}
};

namespace io_detail {

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

inline std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool is_blank(const std::string& text) {
  return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace io_detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fnv1a_hex(const std::string& content) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// --- ranked ballot files -------------------------------------------------------
//
//   # comment anywhere
//   policies: A B C
//   voter x: A > B = C
//
// `>` separates indifference classes, `=` joins policies inside one. A
// voter line normally mentions every policy exactly once; raw relation
// lists with repeated mentions (and `;` separators) are accepted as long
// as they close into a total preorder -- a cyclic relation is rejected.

/** Parses ballot text into a situation whose proposal is the whole policy
    set. Diagnostics carry the source name and line number. */
inline Situation parse_ballot_text(const std::string& text, const std::string& source = "<input>") {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  std::optional<PolicySet> policies;
  std::vector<std::string> voters;
  std::vector<WeakOrder> orders;

  while (std::getline(in, line)) {
    ++lineno;
    line = io_detail::strip_comment(line);
    if (io_detail::is_blank(line)) continue;

    auto colon = line.find(':');
    if (colon == std::string::npos) throw parse_error(source, lineno, "expected ':'");
    auto head = io_detail::split_ws(line.substr(0, colon));
    std::string rest = line.substr(colon + 1);

    if (head.size() == 1 && head[0] == "policies") {
      if (policies) throw parse_error(source, lineno, "duplicate policies line");
      auto ids = io_detail::split_ws(rest);
      if (ids.empty()) throw parse_error(source, lineno, "no policies listed");
      try {
        policies.emplace(ids);
      } catch (const input_error& e) {
        throw parse_error(source, lineno, e.what());
      }
      continue;
    }
    if (head.size() == 2 && head[0] == "voter") {
      if (!policies) throw parse_error(source, lineno, "voter line before policies line");
      for (const auto& v : voters)
        if (v == head[1]) throw parse_error(source, lineno, "duplicate voter: " + head[1]);

      // Tokenize the ranking: ids and the operators >, =, ;.
      std::vector<std::string> toks;
      std::string cur;
      for (char c : rest) {
        if (c == '>' || c == '=' || c == ';') {
          if (!cur.empty()) toks.push_back(cur);
          cur.clear();
          toks.push_back(std::string(1, c));
        } else if (c == ' ' || c == '\t' || c == '\r') {
          if (!cur.empty()) toks.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!cur.empty()) toks.push_back(cur);

      std::vector<WeakOrder::Pair> pairs;
      int prev = -1;
      char pending = 0;
      try {
        for (const auto& t : toks) {
          if (t == ">" || t == "=") {
            if (prev < 0 || pending) throw parse_error(source, lineno, "misplaced operator " + t);
            pending = t[0];
          } else if (t == ";") {
            prev = -1;
            pending = 0;
          } else {
            int p = policies->index_of(t);
            if (prev >= 0 && pending) {
              pairs.push_back({prev, pending, p});
            } else if (prev >= 0) {
              throw parse_error(source, lineno, "missing operator before " + t);
            }
            prev = p;
            pending = 0;
          }
        }
        if (pending) throw parse_error(source, lineno, "ranking ends with an operator");
        if (pairs.empty() && policies->size() > 1)
          throw parse_error(source, lineno, "voter line does not rank the policies");
        if (pairs.empty())
          orders.push_back(WeakOrder::from_classes({{0}}));
        else
          orders.push_back(WeakOrder::from_pairs(pairs, policies->size()));
      } catch (const parse_error&) {
        throw;
      } catch (const input_error& e) {
        throw parse_error(source, lineno, e.what());
      }
      voters.push_back(head[1]);
      continue;
    }
    throw parse_error(source, lineno, "expected 'policies:' or 'voter <id>:'");
  }

  if (!policies) throw parse_error(source, lineno, "missing policies line");
  if (voters.empty()) throw parse_error(source, lineno, "no ballots");
  return Situation(Profile(*policies, std::move(voters), std::move(orders)));
}

inline Situation parse_ballot_file(const std::string& path) {
  return parse_ballot_text(read_file(path), path);
}

// --- ternary ballot files -------------------------------------------------------
//
//   voter x: +1
//   voter y: 0
//   voter z: -1

struct TernaryBallots {
  std::vector<std::string> voters;
  std::vector<int> ballots;

  TernaryProfile profile() const { return TernaryProfile(ballots); }
  int voter_index(const std::string& id) const {
    for (std::size_t i = 0; i < voters.size(); ++i)
      if (voters[i] == id) return static_cast<int>(i);
    throw input_error("unknown voter id: " + id);
  }
};

inline TernaryBallots parse_ternary_text(const std::string& text,
                                         const std::string& source = "<input>") {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  TernaryBallots out;
  while (std::getline(in, line)) {
    ++lineno;
    line = io_detail::strip_comment(line);
    if (io_detail::is_blank(line)) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw parse_error(source, lineno, "expected ':'");
    auto head = io_detail::split_ws(line.substr(0, colon));
    auto vals = io_detail::split_ws(line.substr(colon + 1));
    if (head.size() != 2 || head[0] != "voter" || vals.size() != 1)
      throw parse_error(source, lineno, "expected 'voter <id>: +1|0|-1'");
    for (const auto& v : out.voters)
      if (v == head[1]) throw parse_error(source, lineno, "duplicate voter: " + head[1]);
    int ballot;
    if (vals[0] == "+1" || vals[0] == "1") ballot = 1;
    else if (vals[0] == "0") ballot = 0;
    else if (vals[0] == "-1") ballot = -1;
    else throw parse_error(source, lineno, "ballot must be +1, 0 or -1");
    out.voters.push_back(head[1]);
    out.ballots.push_back(ballot);
  }
  if (out.voters.empty()) throw parse_error(source, lineno, "no ballots");
  return out;
}

inline TernaryBallots parse_ternary_file(const std::string& path) {
  return parse_ternary_text(read_file(path), path);
}

// --- council tree files ------------------------------------------------------------
//
//   council (1 1 1) {
//     council (1 1 1) { voter a  voter b  voter c }
//     voter d
//   }
//
// Leaf voters refer to ids from the accompanying ternary ballot file.

namespace io_detail {

struct Tokens {
  std::vector<std::string> items;
  std::vector<int> lines;
  std::size_t pos = 0;
  std::string source;

  bool done() const { return pos >= items.size(); }
  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : items[pos];
  }
  std::string take() {
    if (done()) throw parse_error(source, lines.empty() ? 0 : lines.back(), "unexpected end of file");
    return items[pos++];
  }
  int line() const {
    return done() ? (lines.empty() ? 0 : lines.back()) : lines[pos];
  }
};

inline Tokens tokenize_tree(const std::string& text, const std::string& source) {
  Tokens t;
  t.source = source;
  int lineno = 1;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      t.items.push_back(cur);
      t.lines.push_back(lineno);
      cur.clear();
    }
  };
  bool comment = false;
  for (char c : text) {
    if (c == '\n') {
      flush();
      comment = false;
      ++lineno;
      continue;
    }
    if (comment) continue;
    if (c == '#') {
      flush();
      comment = true;
    } else if (c == '(' || c == ')' || c == '{' || c == '}') {
      flush();
      t.items.push_back(std::string(1, c));
      t.lines.push_back(lineno);
    } else if (c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return t;
}

inline CouncilNode parse_council_node(Tokens& t, const TernaryBallots& ballots) {
  int at = t.line();
  std::string kw = t.take();
  if (kw == "voter") {
    std::string id = t.take();
    try {
      return CouncilNode::leaf(ballots.voter_index(id));
    } catch (const input_error& e) {
      throw parse_error(t.source, at, e.what());
    }
  }
  if (kw != "council") throw parse_error(t.source, at, "expected 'council' or 'voter'");
  if (t.take() != "(") throw parse_error(t.source, at, "expected '(' after council");
  std::vector<long long> weights;
  while (t.peek() != ")") {
    std::string w = t.take();
    try {
      weights.push_back(std::stoll(w));
    } catch (const std::exception&) {
      throw parse_error(t.source, at, "malformed weight: " + w);
    }
  }
  t.take();  // ')'
  if (t.take() != "{") throw parse_error(t.source, at, "expected '{' after weights");
  std::vector<CouncilNode> children;
  while (t.peek() != "}") {
    if (t.done()) throw parse_error(t.source, at, "council never closed");
    children.push_back(parse_council_node(t, ballots));
  }
  t.take();  // '}'
  try {
    return CouncilNode::council(std::move(children), std::move(weights));
  } catch (const input_error& e) {
    throw parse_error(t.source, at, e.what());
  }
}

}  // namespace io_detail

inline CouncilNode parse_council_text(const std::string& text, const TernaryBallots& ballots,
                                      const std::string& source = "<input>") {
  io_detail::Tokens t = io_detail::tokenize_tree(text, source);
  if (t.done()) throw parse_error(source, 1, "empty council file");
  CouncilNode root = io_detail::parse_council_node(t, ballots);
  if (!t.done()) throw parse_error(source, t.line(), "trailing input after the root council");
  return root;
}

inline CouncilNode parse_council_file(const std::string& path, const TernaryBallots& ballots) {
  return parse_council_text(read_file(path), ballots, path);
}

}  // namespace agora
