#ifndef GRN_CHECKER_HPP
#define GRN_CHECKER_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "grn/formula.hpp"
#include "grn/mdd.hpp"
#include "grn/network.hpp"
#include "grn/symbolic.hpp"

namespace grn {

using mdd::BigInt;

struct Verdict {
  bool holds = false;
  std::optional<std::vector<State>> evidence;
  BigInt reachable_count = 0;
  BigInt satisfying_reachable_count = 0;
};

struct StableReport {
  BigInt count = 0;
  std::vector<State> states;  // lexicographic, at most the enumeration cap
};

inline constexpr std::size_t stable_enumeration_cap = 1000;

/// Satisfaction set of `f` over the full potential state space.
///
/// Paths are finite when they reach a dead state: EG f holds in a dead state
/// satisfying f, so EG is the greatest fixpoint of f ∩ (pre(X) ∪ dead).
inline mdd::StateSet eval_ctl(SymbolicModel& model, const Formula& f) {
  auto& e = model.engine();
  using K = Formula::Kind;
  switch (f.kind) {
    case K::atom:
      return e.from_predicate(f.gene, f.cmp, f.value);
    case K::deadlock:
      return model.deadlocks();
    case K::negation:
      return e.complement(eval_ctl(model, f.operand()));
    case K::conjunction:
      return e.intersect(eval_ctl(model, f.operands[0]), eval_ctl(model, f.operands[1]));
    case K::disjunction:
      return e.unite(eval_ctl(model, f.operands[0]), eval_ctl(model, f.operands[1]));
    case K::EX:
      return e.pre_image(eval_ctl(model, f.operand()));
    case K::EF: {
      const auto target = eval_ctl(model, f.operand());
      return e.lfp([&](const mdd::StateSet& x) { return e.unite(target, e.pre_image(x)); });
    }
    case K::EG: {
      const auto inner = eval_ctl(model, f.operand());
      const auto dead = model.deadlocks();
      return e.gfp([&](const mdd::StateSet& x) {
        return e.intersect(inner, e.unite(e.pre_image(x), dead));
      });
    }
    case K::AX:
      return e.complement(eval_ctl(model, Formula::unary(K::EX, Formula::negation(f.operand()))));
    case K::AF:
      return e.complement(eval_ctl(model, Formula::unary(K::EG, Formula::negation(f.operand()))));
    case K::AG:
      return e.complement(eval_ctl(model, Formula::unary(K::EF, Formula::negation(f.operand()))));
  }
  return e.empty();
}

/// Shortest path from the initial state into `target`, if one is reachable.
inline std::optional<std::vector<State>> symbolic_witness(SymbolicModel& model,
                                                         const mdd::StateSet& target) {
  auto path = model.engine().bfs_witness(model.initial(), target);
  if (!path) return std::nullopt;
  std::vector<State> out;
  for (auto& values : *path) out.emplace_back(std::move(values));
  return out;
}

/// Verdict at the initial state. Evidence: a shortest witness for a true
/// EF g, a shortest counterexample for a false AG g, nothing otherwise.
inline Verdict check(SymbolicModel& model, const Formula& f) {
  auto& e = model.engine();
  Verdict v;
  const auto sat = eval_ctl(model, f);
  v.holds = e.contains(sat, model.network().initial.levels);
  const auto& reach = model.reachable();
  v.reachable_count = e.count(reach);
  v.satisfying_reachable_count = e.count(e.intersect(reach, sat));
  if (f.kind == Formula::Kind::EF && v.holds) {
    v.evidence = symbolic_witness(model, eval_ctl(model, f.operand()));
  } else if (f.kind == Formula::Kind::AG && !v.holds) {
    v.evidence = symbolic_witness(model, e.complement(eval_ctl(model, f.operand())));
  }
  return v;
}

/// The first `cap` members of `s` in lexicographic gene order, whatever the
/// variable order of the engine.
inline std::vector<State> enumerate_lexicographic(mdd::Engine& e, const mdd::StateSet& s,
                                                  std::size_t cap) {
  std::vector<State> out;
  const std::size_t genes = e.order().size();
  std::vector<int> values(genes, 0);
  const auto descend = [&](auto& self, const mdd::StateSet& rest, std::size_t g) -> void {
    if (g == genes) {
      out.emplace_back(values);
      return;
    }
    for (int v = 0; v < e.order().domains[g] && out.size() < cap; ++v) {
      const auto sub = e.intersect(rest, e.from_predicate(g, Comparator::eq, v));
      if (sub.is_empty()) continue;
      values[g] = v;
      self(self, sub, g + 1);
    }
  };
  if (cap > 0 && !s.is_empty()) descend(descend, s, 0);
  return out;
}

inline StableReport stable_states(SymbolicModel& model, const std::optional<Formula>& where,
                                  std::size_t cap = stable_enumeration_cap) {
  auto& e = model.engine();
  mdd::StateSet stable = model.deadlocks();
  if (where) stable = e.intersect(stable, eval_ctl(model, *where));
  StableReport report;
  report.count = e.count(stable);
  report.states = enumerate_lexicographic(e, stable, cap);
  return report;
}

inline BigInt count_reachable(SymbolicModel& model) {
  return model.engine().count(model.reachable());
}

}  // namespace grn

#endif
