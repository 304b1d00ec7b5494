#ifndef GRN_DSL_AST_HPP
#define GRN_DSL_AST_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grn/diagnostic.hpp"
#include "grn/network.hpp"

// Syntax trees for the network and query languages. Every node carries the
// span it was parsed from; equality compares structure only and ignores
// spans, so a reparsed pretty-print compares equal to the original.

namespace grn::dsl {

struct Name {
  std::string text;
  SourceSpan span;
  friend bool operator==(const Name& a, const Name& b) { return a.text == b.text; }
};

struct Number {
  long long value = 0;
  SourceSpan span;
  friend bool operator==(const Number& a, const Number& b) { return a.value == b.value; }
};

/// Rule condition. `group` records explicit parentheses.
struct CondAst {
  enum class Kind { atom, negation, conjunction, disjunction, group };

  Kind kind = Kind::atom;
  Name gene;
  Comparator cmp = Comparator::ge;
  Number value;
  std::vector<CondAst> operands;
  SourceSpan span;

  friend bool operator==(const CondAst& a, const CondAst& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::atom) return a.gene == b.gene && a.cmp == b.cmp && a.value == b.value;
    return a.operands == b.operands;
  }
};

struct GeneDecl {
  Name name;
  Number max_level;
  SourceSpan span;
  friend bool operator==(const GeneDecl& a, const GeneDecl& b) {
    return a.name == b.name && a.max_level == b.max_level;
  }
};

struct EdgeDecl {
  Name source;
  Sign sign = Sign::activator;
  Name target;
  Number threshold;
  SourceSpan span;
  friend bool operator==(const EdgeDecl& a, const EdgeDecl& b) {
    return a.source == b.source && a.sign == b.sign && a.target == b.target &&
           a.threshold == b.threshold;
  }
};

struct ClauseAst {
  CondAst when;
  Number target;
  SourceSpan span;
  friend bool operator==(const ClauseAst& a, const ClauseAst& b) {
    return a.when == b.when && a.target == b.target;
  }
};

struct RuleDecl {
  Name gene;
  std::vector<ClauseAst> clauses;
  Number default_level;
  SourceSpan span;
  friend bool operator==(const RuleDecl& a, const RuleDecl& b) {
    return a.gene == b.gene && a.clauses == b.clauses && a.default_level == b.default_level;
  }
};

struct Assignment {
  Name gene;
  Number level;
  SourceSpan span;
  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.gene == b.gene && a.level == b.level;
  }
};

struct InitDecl {
  std::vector<Assignment> assignments;
  SourceSpan span;
  friend bool operator==(const InitDecl& a, const InitDecl& b) {
    return a.assignments == b.assignments;
  }
};

using Decl = std::variant<GeneDecl, EdgeDecl, RuleDecl, InitDecl>;

struct NetworkAst {
  Name name;
  std::vector<Decl> decls;
  SourceSpan span;
  friend bool operator==(const NetworkAst& a, const NetworkAst& b) {
    return a.name == b.name && a.decls == b.decls;
  }
};

enum class Temporal { EX, EF, EG, AX, AF, AG };

inline const char* to_string(Temporal t) {
  switch (t) {
    case Temporal::EX: return "EX";
    case Temporal::EF: return "EF";
    case Temporal::EG: return "EG";
    case Temporal::AX: return "AX";
    case Temporal::AF: return "AF";
    case Temporal::AG: return "AG";
  }
  return "?";
}

struct FormulaAst {
  enum class Kind { atom, deadlock, negation, conjunction, disjunction, temporal, group };

  Kind kind = Kind::atom;
  Temporal op = Temporal::EF;
  Name gene;
  Comparator cmp = Comparator::ge;
  Number value;
  std::vector<FormulaAst> operands;
  SourceSpan span;

  friend bool operator==(const FormulaAst& a, const FormulaAst& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::atom: return a.gene == b.gene && a.cmp == b.cmp && a.value == b.value;
      case Kind::deadlock: return true;
      case Kind::temporal: return a.op == b.op && a.operands == b.operands;
      default: return a.operands == b.operands;
    }
  }
};

struct QueryAst {
  enum class Kind { check, stable, count_reachable };

  Kind kind = Kind::check;
  std::optional<FormulaAst> formula;  // check: always; stable: the optional filter
  SourceSpan span;

  friend bool operator==(const QueryAst& a, const QueryAst& b) {
    return a.kind == b.kind && a.formula == b.formula;
  }
};

template <class Ast>
struct ParseResult {
  std::optional<Ast> ast;  // present only when there are no errors
  std::vector<Diagnostic> diagnostics;

  explicit operator bool() const { return ast.has_value(); }
};

}  // namespace grn::dsl

#endif
