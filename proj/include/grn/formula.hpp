#ifndef GRN_FORMULA_HPP
#define GRN_FORMULA_HPP

#include <optional>
#include <string>
#include <vector>

#include "grn/network.hpp"

namespace grn {

/// CTL-fragment formula with gene references resolved to ids.
struct Formula {
  enum class Kind { atom, deadlock, negation, conjunction, disjunction, EX, EF, EG, AX, AF, AG };

  Kind kind = Kind::atom;
  GeneId gene = 0;
  Comparator cmp = Comparator::ge;
  int value = 0;
  std::vector<Formula> operands;

  static Formula atom(GeneId g, Comparator c, int v) {
    Formula f;
    f.gene = g;
    f.cmp = c;
    f.value = v;
    return f;
  }
  static Formula deadlock() {
    Formula f;
    f.kind = Kind::deadlock;
    return f;
  }
  static Formula unary(Kind k, Formula inner) {
    Formula f;
    f.kind = k;
    f.operands.push_back(std::move(inner));
    return f;
  }
  static Formula negation(Formula inner) { return unary(Kind::negation, std::move(inner)); }
  static Formula binary(Kind k, Formula lhs, Formula rhs) {
    Formula f;
    f.kind = k;
    f.operands.push_back(std::move(lhs));
    f.operands.push_back(std::move(rhs));
    return f;
  }

  bool is_temporal() const { return kind >= Kind::EX; }

  const Formula& operand() const { return operands.front(); }

  friend bool operator==(const Formula&, const Formula&) = default;
};

inline const char* to_string(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::EX: return "EX";
    case Formula::Kind::EF: return "EF";
    case Formula::Kind::EG: return "EG";
    case Formula::Kind::AX: return "AX";
    case Formula::Kind::AF: return "AF";
    case Formula::Kind::AG: return "AG";
    case Formula::Kind::negation: return "not";
    case Formula::Kind::conjunction: return "and";
    case Formula::Kind::disjunction: return "or";
    case Formula::Kind::deadlock: return "deadlock";
    case Formula::Kind::atom: return "atom";
  }
  return "?";
}

/// Fully parenthesized rendering, valid query syntax.
inline std::string to_string(const Formula& f, const Network& n) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return n.genes[f.gene].name + " " + to_string(f.cmp) + " " + std::to_string(f.value);
    case Formula::Kind::deadlock:
      return "deadlock";
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
      return "(" + to_string(f.operands[0], n) + " " + to_string(f.kind) + " " +
             to_string(f.operands[1], n) + ")";
    default:
      return std::string(to_string(f.kind)) + " " + to_string(f.operand(), n);
  }
}

/// What a query asks for.
struct Query {
  enum class Kind { check, stable, count_reachable };

  Kind kind = Kind::check;
  std::optional<Formula> formula;
};

}  // namespace grn

#endif
