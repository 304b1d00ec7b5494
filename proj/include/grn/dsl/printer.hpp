#ifndef GRN_DSL_PRINTER_HPP
#define GRN_DSL_PRINTER_HPP

#include <string>
#include <type_traits>
#include <variant>

#include "grn/dsl/ast.hpp"

namespace grn::dsl {

namespace detail {

// Binding strength used to decide where parentheses are needed when a tree
// was built by hand rather than parsed (parsed trees carry explicit groups).
inline int precedence(CondAst::Kind k) {
  switch (k) {
    case CondAst::Kind::disjunction: return 1;
    case CondAst::Kind::conjunction: return 2;
    default: return 3;
  }
}

inline int precedence(FormulaAst::Kind k) {
  switch (k) {
    case FormulaAst::Kind::disjunction: return 1;
    case FormulaAst::Kind::conjunction: return 2;
    default: return 3;
  }
}

template <class Node>
void print_node(std::string& out, const Node& node, int min_prec);

inline void print_atom(std::string& out, const Name& gene, Comparator cmp, const Number& value) {
  out += gene.text;
  out += ' ';
  out += to_string(cmp);
  out += ' ';
  out += std::to_string(value.value);
}

template <class Node>
void print_node(std::string& out, const Node& node, int min_prec) {
  using Kind = typename Node::Kind;
  const int prec = precedence(node.kind);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (node.kind) {
    case Kind::atom:
      print_atom(out, node.gene, node.cmp, node.value);
      break;
    case Kind::negation:
      out += "not ";
      print_node(out, node.operands[0], 3);
      break;
    case Kind::conjunction:
    case Kind::disjunction:
      print_node(out, node.operands[0], prec);
      out += node.kind == Kind::conjunction ? " and " : " or ";
      print_node(out, node.operands[1], prec + 1);
      break;
    case Kind::group:
      out += '(';
      print_node(out, node.operands[0], 0);
      out += ')';
      break;
    default:
      if constexpr (std::is_same_v<Node, FormulaAst>) {
        if (node.kind == Kind::deadlock) {
          out += "deadlock";
        } else {
          out += to_string(node.op);
          out += ' ';
          print_node(out, node.operands[0], 3);
        }
      }
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string pretty_print(const CondAst& cond) {
  std::string out;
  detail::print_node(out, cond, 0);
  return out;
}

inline std::string pretty_print(const FormulaAst& formula) {
  std::string out;
  detail::print_node(out, formula, 0);
  return out;
}

inline std::string pretty_print(const QueryAst& query) {
  switch (query.kind) {
    case QueryAst::Kind::check:
      return "check " + pretty_print(*query.formula);
    case QueryAst::Kind::stable:
      return query.formula ? "stable where " + pretty_print(*query.formula) : "stable";
    case QueryAst::Kind::count_reachable:
      return "count reachable";
  }
  return {};
}

/// Canonical text: one declaration per line in source order, single spaces
/// between tokens, no comments.
inline std::string pretty_print(const NetworkAst& ast) {
  std::string out = "network " + ast.name.text + "\n";
  for (const auto& decl : ast.decls) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, GeneDecl>) {
            out += "gene " + d.name.text + " levels 0.." + std::to_string(d.max_level.value);
          } else if constexpr (std::is_same_v<T, EdgeDecl>) {
            out += d.source.text + (d.sign == Sign::activator ? " -> " : " -| ") + d.target.text +
                   " threshold " + std::to_string(d.threshold.value);
          } else if constexpr (std::is_same_v<T, RuleDecl>) {
            out += "rule " + d.gene.text + ":";
            for (std::size_t i = 0; i < d.clauses.size(); ++i) {
              out += i == 0 ? " when " : ", when ";
              out += pretty_print(d.clauses[i].when);
              out += " -> " + std::to_string(d.clauses[i].target.value);
            }
            out += " default " + std::to_string(d.default_level.value);
          } else {
            out += "init ";
            for (std::size_t i = 0; i < d.assignments.size(); ++i) {
              if (i) out += ", ";
              out += d.assignments[i].gene.text + " = " +
                     std::to_string(d.assignments[i].level.value);
            }
          }
        },
        decl);
    out += '\n';
  }
  return out;
}

}  // namespace grn::dsl

#endif
