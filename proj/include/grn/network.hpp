#ifndef GRN_NETWORK_HPP
#define GRN_NETWORK_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grn/diagnostic.hpp"

namespace grn {

using GeneId = std::size_t;

/// A total assignment of levels to the genes of a network, indexed by GeneId.
struct State {
  std::vector<int> levels;

  State() = default;
  explicit State(std::vector<int> l) : levels(std::move(l)) {}

  int operator[](GeneId g) const { return levels[g]; }
  int& operator[](GeneId g) { return levels[g]; }
  std::size_t size() const { return levels.size(); }

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : s.levels) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Gene {
  std::string name;
  int max_level = 1;
  SourceSpan span;
};

enum class Sign { activator, inhibitor };

struct Edge {
  GeneId source = 0;
  GeneId target = 0;
  Sign sign = Sign::activator;
  int threshold = 1;
  SourceSpan span;
  SourceSpan threshold_span;
};

enum class Comparator { ge, le, eq, gt, lt };

inline const char* to_string(Comparator c) {
  switch (c) {
    case Comparator::ge: return ">=";
    case Comparator::le: return "<=";
    case Comparator::eq: return "=";
    case Comparator::gt: return ">";
    case Comparator::lt: return "<";
  }
  return "?";
}

constexpr bool compare(int level, Comparator cmp, int value) {
  switch (cmp) {
    case Comparator::ge: return level >= value;
    case Comparator::le: return level <= value;
    case Comparator::eq: return level == value;
    case Comparator::gt: return level > value;
    case Comparator::lt: return level < value;
  }
  return false;
}

/// Boolean condition over gene levels. Vectors of an incomplete element type
/// are fine since C++17, so the tree keeps plain value semantics.
struct Condition {
  enum class Kind { atom, negation, conjunction, disjunction };

  Kind kind = Kind::atom;
  GeneId gene = 0;
  Comparator cmp = Comparator::ge;
  int value = 0;
  std::vector<Condition> operands;
  SourceSpan span;
  SourceSpan value_span;

  static Condition atom(GeneId g, Comparator c, int v, SourceSpan sp = {}, SourceSpan vsp = {}) {
    Condition out;
    out.gene = g;
    out.cmp = c;
    out.value = v;
    out.span = sp;
    out.value_span = vsp;
    return out;
  }
  static Condition negation(Condition inner) {
    Condition out;
    out.kind = Kind::negation;
    out.span = inner.span;
    out.operands.push_back(std::move(inner));
    return out;
  }
  static Condition conjunction(Condition lhs, Condition rhs) {
    return binary(Kind::conjunction, std::move(lhs), std::move(rhs));
  }
  static Condition disjunction(Condition lhs, Condition rhs) {
    return binary(Kind::disjunction, std::move(lhs), std::move(rhs));
  }

  /// Calls `fn` on every atom, left to right.
  template <class Fn>
  void for_each_atom(Fn&& fn) const {
    if (kind == Kind::atom) {
      fn(*this);
      return;
    }
    for (const auto& op : operands) op.for_each_atom(fn);
  }

 private:
  static Condition binary(Kind k, Condition lhs, Condition rhs) {
    Condition out;
    out.kind = k;
    out.span = cover(lhs.span, rhs.span);
    out.operands.push_back(std::move(lhs));
    out.operands.push_back(std::move(rhs));
    return out;
  }
};

struct Clause {
  Condition when;
  int target = 0;
  SourceSpan target_span;
};

struct Rule {
  GeneId gene = 0;
  std::vector<Clause> clauses;
  int default_level = 0;
  SourceSpan span;
  SourceSpan default_span;
};

/// A multivalued logical regulatory network.
///
/// A validated network (no error diagnostics from `validate`) additionally
/// keeps `rules[g].gene == g`, which `lower` establishes; the semantic
/// functions below rely on that indexing.
struct Network {
  std::string name;
  std::vector<Gene> genes;
  std::vector<Edge> edges;
  std::vector<Rule> rules;
  State initial;
  std::vector<SourceSpan> initial_spans;

  std::size_t gene_count() const { return genes.size(); }

  std::optional<GeneId> find_gene(std::string_view gene_name) const {
    for (GeneId g = 0; g < genes.size(); ++g) {
      if (genes[g].name == gene_name) return g;
    }
    return std::nullopt;
  }
};

inline bool eval_condition(const Condition& cond, const State& s) {
  switch (cond.kind) {
    case Condition::Kind::atom:
      if (cond.gene >= s.size()) {
        throw std::out_of_range("condition references gene #" + std::to_string(cond.gene) +
                                " outside the state");
      }
      return compare(s[cond.gene], cond.cmp, cond.value);
    case Condition::Kind::negation:
      return !eval_condition(cond.operands.front(), s);
    case Condition::Kind::conjunction:
      return eval_condition(cond.operands[0], s) && eval_condition(cond.operands[1], s);
    case Condition::Kind::disjunction:
      return eval_condition(cond.operands[0], s) || eval_condition(cond.operands[1], s);
  }
  return false;
}

/// Level gene `g` tends toward in state `s`: the target of the first clause
/// whose condition holds, otherwise the rule default.
inline int target_level(const Network& n, GeneId g, const State& s) {
  const Rule& rule = n.rules[g];
  for (const auto& clause : rule.clauses) {
    if (eval_condition(clause.when, s)) return clause.target;
  }
  return rule.default_level;
}

/// Asynchronous unit-step successors, one per gene whose target differs
/// from its current level, in gene order.
inline std::vector<std::pair<GeneId, State>> successors(const Network& n, const State& s) {
  std::vector<std::pair<GeneId, State>> out;
  for (GeneId g = 0; g < n.gene_count(); ++g) {
    const int t = target_level(n, g, s);
    if (t == s[g]) continue;
    State next = s;
    next[g] += t > s[g] ? 1 : -1;
    out.emplace_back(g, std::move(next));
  }
  return out;
}

inline bool is_stable(const Network& n, const State& s) {
  for (GeneId g = 0; g < n.gene_count(); ++g) {
    if (target_level(n, g, s) != s[g]) return false;
  }
  return true;
}

/// Number of potential states, saturating at `limit + 1`.
inline std::size_t state_space_size(const Network& n, std::size_t limit) {
  std::size_t total = 1;
  for (const auto& g : n.genes) {
    const auto dom = static_cast<std::size_t>(g.max_level) + 1;
    if (total > limit / dom) return limit + 1;
    total *= dom;
  }
  return total;
}

/// Calls `fn` on every potential state in lexicographic order.
template <class Fn>
void for_each_state(const Network& n, Fn&& fn) {
  State s(std::vector<int>(n.gene_count(), 0));
  while (true) {
    fn(static_cast<const State&>(s));
    std::size_t g = n.gene_count();
    while (g > 0) {
      --g;
      if (s[g] < n.genes[g].max_level) {
        ++s[g];
        break;
      }
      s[g] = 0;
      if (g == 0) return;
    }
    if (n.gene_count() == 0) return;
  }
}

inline std::string describe_state(const Network& n, const State& s) {
  std::string out;
  for (GeneId g = 0; g < n.gene_count(); ++g) {
    if (g) out += ' ';
    out += n.genes[g].name + '=' + std::to_string(s[g]);
  }
  return out;
}

/// Semantic checks on a structurally complete network. Returns every
/// diagnostic, sorted by source position.
inline std::vector<Diagnostic> validate(const Network& n) {
  std::vector<Diagnostic> out;
  const auto gene_ok = [&](GeneId g) { return g < n.gene_count(); };
  const auto name_of = [&](GeneId g) {
    return gene_ok(g) ? "'" + n.genes[g].name + "'" : "#" + std::to_string(g);
  };

  std::map<std::string, GeneId> names;
  for (GeneId g = 0; g < n.gene_count(); ++g) {
    const auto& gene = n.genes[g];
    if (!names.emplace(gene.name, g).second) {
      out.push_back(make_error("E004", "duplicate gene '" + gene.name + "'", gene.span));
    }
    if (gene.max_level < 1) {
      out.push_back(make_error("E003", "gene '" + gene.name + "' needs at least two levels",
                               gene.span));
    }
  }

  std::map<std::pair<GeneId, GeneId>, const Edge*> edge_of;
  for (const auto& e : n.edges) {
    if (!gene_ok(e.source) || !gene_ok(e.target)) {
      out.push_back(make_error("E002", "edge references an undeclared gene", e.span));
      continue;
    }
    if (!edge_of.emplace(std::pair{e.source, e.target}, &e).second) {
      out.push_back(make_error("E004",
                               "duplicate edge " + name_of(e.source) + " to " + name_of(e.target),
                               e.span));
    }
    const int max = n.genes[e.source].max_level;
    if (e.threshold < 1 || e.threshold > max) {
      out.push_back(make_error("E003",
                               "threshold " + std::to_string(e.threshold) + " outside 1.." +
                                   std::to_string(max) + " for " + name_of(e.source),
                               e.threshold_span));
    }
  }

  std::vector<int> rule_count(n.gene_count(), 0);
  std::vector<std::set<GeneId>> read_by(n.gene_count());
  for (const auto& rule : n.rules) {
    if (!gene_ok(rule.gene)) {
      out.push_back(make_error("E002", "rule for an undeclared gene", rule.span));
      continue;
    }
    if (++rule_count[rule.gene] == 2) {
      out.push_back(make_error("E004", "duplicate rule for " + name_of(rule.gene), rule.span));
    }
    const int max = n.genes[rule.gene].max_level;
    const auto check_level = [&](int level, SourceSpan span) {
      if (level < 0 || level > max) {
        out.push_back(make_error("E003",
                                 "target level " + std::to_string(level) + " outside 0.." +
                                     std::to_string(max) + " for " + name_of(rule.gene),
                                 span));
      }
    };
    std::set<GeneId> missing_reported;
    for (const auto& clause : rule.clauses) {
      clause.when.for_each_atom([&](const Condition& atom) {
        if (!gene_ok(atom.gene)) {
          out.push_back(make_error("E002", "condition references an undeclared gene", atom.span));
          return;
        }
        read_by[rule.gene].insert(atom.gene);
        const int amax = n.genes[atom.gene].max_level;
        if (atom.value < 0 || atom.value > amax) {
          out.push_back(make_error("E003",
                                   "constant " + std::to_string(atom.value) + " outside 0.." +
                                       std::to_string(amax) + " for " + name_of(atom.gene),
                                   atom.value_span));
        }
        const auto edge = edge_of.find({atom.gene, rule.gene});
        if (edge == edge_of.end()) {
          if (missing_reported.insert(atom.gene).second) {
            out.push_back(make_error("E005",
                                     "rule for " + name_of(rule.gene) + " reads " +
                                         name_of(atom.gene) + " but no edge " +
                                         name_of(atom.gene) + " to " + name_of(rule.gene) +
                                         " is declared",
                                     atom.span));
          }
        } else if (edge->second->threshold != atom.value) {
          out.push_back(make_warning("W002",
                                     "constant " + std::to_string(atom.value) +
                                         " differs from the threshold " +
                                         std::to_string(edge->second->threshold) +
                                         " of edge " + name_of(atom.gene) + " to " +
                                         name_of(rule.gene),
                                     atom.value_span));
        }
      });
      check_level(clause.target, clause.target_span);
    }
    check_level(rule.default_level, rule.default_span);
  }
  for (GeneId g = 0; g < n.gene_count(); ++g) {
    if (rule_count[g] == 0) {
      out.push_back(make_error("E004", "gene " + name_of(g) + " has no rule", n.genes[g].span));
    }
  }

  for (const auto& e : n.edges) {
    if (!gene_ok(e.source) || !gene_ok(e.target)) continue;
    if (!read_by[e.target].contains(e.source)) {
      out.push_back(make_warning("W001",
                                 "edge " + name_of(e.source) + " to " + name_of(e.target) +
                                     " is never read by the rule for " + name_of(e.target),
                                 e.span));
    }
  }

  if (n.initial.size() != n.gene_count()) {
    out.push_back(make_error("E003", "initial state does not cover every gene", SourceSpan{}));
  } else {
    for (GeneId g = 0; g < n.gene_count(); ++g) {
      const int v = n.initial[g];
      if (v < 0 || v > n.genes[g].max_level) {
        const SourceSpan span = g < n.initial_spans.size() ? n.initial_spans[g] : n.genes[g].span;
        out.push_back(make_error("E003",
                                 "initial level " + std::to_string(v) + " outside 0.." +
                                     std::to_string(n.genes[g].max_level) + " for " + name_of(g),
                                 span));
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::pair{a.span.line, a.span.column} < std::pair{b.span.line, b.span.column};
  });
  return out;
}

}  // namespace grn

#endif
