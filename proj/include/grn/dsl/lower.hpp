#ifndef GRN_DSL_LOWER_HPP
#define GRN_DSL_LOWER_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grn/dsl/ast.hpp"
#include "grn/dsl/parser.hpp"
#include "grn/formula.hpp"
#include "grn/network.hpp"

namespace grn::dsl {

template <class T>
struct LowerResult {
  std::optional<T> value;  // present only when there are no errors
  std::vector<Diagnostic> diagnostics;

  explicit operator bool() const { return value.has_value(); }
};

namespace detail {

inline constexpr GeneId unresolved = std::numeric_limits<GeneId>::max();

inline int clamp_level(long long v) {
  return static_cast<int>(std::min<long long>(v, std::numeric_limits<int>::max()));
}

class Lowering {
 public:
  explicit Lowering(const NetworkAst& ast) : ast_(ast) {}

  LowerResult<Network> run() {
    Network net;
    net.name = ast_.name.text;

    for (const auto& decl : ast_.decls) {
      if (const auto* g = std::get_if<GeneDecl>(&decl)) {
        if (ids_.contains(g->name.text)) {
          diags_.push_back(make_error("E004", "duplicate gene '" + g->name.text + "'", g->name.span));
          continue;
        }
        ids_.emplace(g->name.text, net.genes.size());
        net.genes.push_back({g->name.text, clamp_level(g->max_level.value), g->name.span});
      }
    }

    net.initial = State(std::vector<int>(net.genes.size(), 0));
    for (const auto& gene : net.genes) net.initial_spans.push_back(gene.span);
    std::vector<bool> assigned(net.genes.size(), false);

    for (const auto& decl : ast_.decls) {
      if (const auto* e = std::get_if<EdgeDecl>(&decl)) {
        const GeneId src = resolve(e->source);
        const GeneId dst = resolve(e->target);
        if (src == unresolved || dst == unresolved) continue;
        net.edges.push_back({src, dst, e->sign, clamp_level(e->threshold.value), e->span,
                             e->threshold.span});
      } else if (const auto* r = std::get_if<RuleDecl>(&decl)) {
        const GeneId g = resolve(r->gene);
        if (g == unresolved) continue;
        Rule rule;
        rule.gene = g;
        rule.span = r->span;
        rule.default_level = clamp_level(r->default_level.value);
        rule.default_span = r->default_level.span;
        for (const auto& c : r->clauses) {
          rule.clauses.push_back({condition(c.when), clamp_level(c.target.value), c.target.span});
        }
        net.rules.push_back(std::move(rule));
      } else if (const auto* init = std::get_if<InitDecl>(&decl)) {
        for (const auto& a : init->assignments) {
          const GeneId g = resolve(a.gene);
          if (g == unresolved) continue;
          if (assigned[g]) {
            diags_.push_back(make_error("E004", "gene '" + a.gene.text + "' is initialized twice",
                                        a.span));
            continue;
          }
          assigned[g] = true;
          net.initial[g] = clamp_level(a.level.value);
          net.initial_spans[g] = a.level.span;
        }
      }
    }

    // Unresolved atoms were reported here with their names; validate's
    // nameless E002 for the same atoms is dropped.
    for (auto& d : validate(net)) {
      if (d.code != "E002") diags_.push_back(std::move(d));
    }
    std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::pair{a.span.line, a.span.column} < std::pair{b.span.line, b.span.column};
    });

    LowerResult<Network> out;
    out.diagnostics = std::move(diags_);
    if (!has_errors(out.diagnostics)) {
      std::stable_sort(net.rules.begin(), net.rules.end(),
                       [](const Rule& a, const Rule& b) { return a.gene < b.gene; });
      out.value = std::move(net);
    }
    return out;
  }

 private:
  GeneId resolve(const Name& name) {
    const auto it = ids_.find(name.text);
    if (it != ids_.end()) return it->second;
    diags_.push_back(make_error("E002", "unknown gene '" + name.text + "'", name.span));
    return unresolved;
  }

  Condition condition(const CondAst& c) {
    switch (c.kind) {
      case CondAst::Kind::atom:
        return Condition::atom(resolve(c.gene), c.cmp, clamp_level(c.value.value), c.span,
                               c.value.span);
      case CondAst::Kind::negation:
        return Condition::negation(condition(c.operands[0]));
      case CondAst::Kind::conjunction:
        return Condition::conjunction(condition(c.operands[0]), condition(c.operands[1]));
      case CondAst::Kind::disjunction:
        return Condition::disjunction(condition(c.operands[0]), condition(c.operands[1]));
      case CondAst::Kind::group:
        return condition(c.operands[0]);
    }
    return {};
  }

  const NetworkAst& ast_;
  std::map<std::string, GeneId> ids_;
  std::vector<Diagnostic> diags_;
};

class FormulaLowering {
 public:
  explicit FormulaLowering(const Network& net) : net_(net) {}

  std::optional<Formula> run(const FormulaAst& f) {
    switch (f.kind) {
      case FormulaAst::Kind::atom: {
        const auto g = net_.find_gene(f.gene.text);
        if (!g) {
          diags.push_back(make_error("E002", "unknown gene '" + f.gene.text + "'", f.gene.span));
          return std::nullopt;
        }
        const int max = net_.genes[*g].max_level;
        if (f.value.value > max) {
          diags.push_back(make_error("E003",
                                     "constant " + std::to_string(f.value.value) + " outside 0.." +
                                         std::to_string(max) + " for '" + f.gene.text + "'",
                                     f.value.span));
          return std::nullopt;
        }
        return Formula::atom(*g, f.cmp, static_cast<int>(f.value.value));
      }
      case FormulaAst::Kind::deadlock:
        return Formula::deadlock();
      case FormulaAst::Kind::group:
        return run(f.operands[0]);
      case FormulaAst::Kind::negation: {
        auto inner = run(f.operands[0]);
        if (!inner) return std::nullopt;
        return Formula::negation(std::move(*inner));
      }
      case FormulaAst::Kind::conjunction:
      case FormulaAst::Kind::disjunction: {
        auto lhs = run(f.operands[0]);
        auto rhs = run(f.operands[1]);
        if (!lhs || !rhs) return std::nullopt;
        return Formula::binary(f.kind == FormulaAst::Kind::conjunction
                                   ? Formula::Kind::conjunction
                                   : Formula::Kind::disjunction,
                               std::move(*lhs), std::move(*rhs));
      }
      case FormulaAst::Kind::temporal: {
        auto inner = run(f.operands[0]);
        if (!inner) return std::nullopt;
        static constexpr Formula::Kind kinds[] = {Formula::Kind::EX, Formula::Kind::EF,
                                                  Formula::Kind::EG, Formula::Kind::AX,
                                                  Formula::Kind::AF, Formula::Kind::AG};
        return Formula::unary(kinds[static_cast<int>(f.op)], std::move(*inner));
      }
    }
    return std::nullopt;
  }

  std::vector<Diagnostic> diags;

 private:
  const Network& net_;
};

}  // namespace detail

/// Resolves names, checks ranges and builds the Network. Genes missing from
/// `init` start at level 0. On success the rules are indexed by gene.
inline LowerResult<Network> lower(const NetworkAst& ast) {
  return detail::Lowering(ast).run();
}

inline LowerResult<Formula> lower(const FormulaAst& ast, const Network& net) {
  detail::FormulaLowering lowering(net);
  LowerResult<Formula> out;
  auto f = lowering.run(ast);
  out.diagnostics = std::move(lowering.diags);
  if (f && out.diagnostics.empty()) out.value = std::move(f);
  return out;
}

inline LowerResult<Query> lower(const QueryAst& ast, const Network& net) {
  LowerResult<Query> out;
  Query q;
  q.kind = static_cast<Query::Kind>(ast.kind);
  if (ast.formula) {
    auto f = lower(*ast.formula, net);
    out.diagnostics = std::move(f.diagnostics);
    if (!f) return out;
    q.formula = std::move(f.value);
  }
  out.value = std::move(q);
  return out;
}

/// Parse then lower. Parse errors short-circuit lowering.
inline LowerResult<Network> load_network(std::string_view text) {
  auto parsed = parse_network(text);
  if (!parsed) return {std::nullopt, std::move(parsed.diagnostics)};
  return lower(*parsed.ast);
}

inline LowerResult<Query> load_query(std::string_view text, const Network& net) {
  auto parsed = parse_query(text);
  if (!parsed) return {std::nullopt, std::move(parsed.diagnostics)};
  return lower(*parsed.ast, net);
}

inline LowerResult<Formula> load_formula(std::string_view text, const Network& net) {
  auto parsed = parse_formula(text);
  if (!parsed) return {std::nullopt, std::move(parsed.diagnostics)};
  return lower(*parsed.ast, net);
}

}  // namespace grn::dsl

#endif
