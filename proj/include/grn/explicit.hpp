#ifndef GRN_EXPLICIT_HPP
#define GRN_EXPLICIT_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "grn/checker.hpp"
#include "grn/formula.hpp"
#include "grn/network.hpp"

// Explicit-state oracle: hash-set BFS over the network's own successor
// function and direct CTL evaluation on the resulting graph. It shares no
// code with the Petri-net compiler or the decision-diagram engine.

namespace grn::oracle {

/// The state graph outgrew the cap; use the symbolic engine.
class StateCapExceeded : public std::runtime_error {
 public:
  explicit StateCapExceeded(std::size_t cap)
      : std::runtime_error("explicit exploration exceeded the cap of " + std::to_string(cap) +
                           " states; use the symbolic engine"),
        cap(cap) {}
  std::size_t cap;
};

inline constexpr std::size_t default_state_cap = 1'000'000;

/// States reachable from the initial state, with successor and predecessor
/// lists. Index 0 is the initial state; indices follow BFS discovery order.
struct StateGraph {
  std::vector<State> states;
  std::unordered_map<State, std::size_t, StateHash> index;
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::vector<std::size_t>> pred;

  std::size_t size() const { return states.size(); }
};

inline StateGraph explore(const Network& n, std::size_t cap = default_state_cap) {
  StateGraph g;
  const auto add = [&](const State& s) -> std::size_t {
    const auto [it, inserted] = g.index.emplace(s, g.states.size());
    if (inserted) {
      if (g.states.size() >= cap) throw StateCapExceeded(cap);
      g.states.push_back(s);
      g.succ.emplace_back();
    }
    return it->second;
  };
  add(n.initial);
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    const State current = g.states[i];
    for (const auto& [gene, next] : successors(n, current)) {
      const std::size_t j = add(next);
      g.succ[i].push_back(j);
    }
  }
  g.pred.assign(g.size(), {});
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j : g.succ[i]) g.pred[j].push_back(i);
  }
  return g;
}

inline std::vector<State> explicit_reachable(const Network& n,
                                             std::size_t cap = default_state_cap) {
  return explore(n, cap).states;
}

namespace detail {

using Sat = std::vector<bool>;

inline Sat evaluate(const StateGraph& g, const Formula& f) {
  using K = Formula::Kind;
  const std::size_t n = g.size();
  Sat out(n, false);
  switch (f.kind) {
    case K::atom:
      for (std::size_t i = 0; i < n; ++i) out[i] = compare(g.states[i][f.gene], f.cmp, f.value);
      return out;
    case K::deadlock:
      for (std::size_t i = 0; i < n; ++i) out[i] = g.succ[i].empty();
      return out;
    case K::negation: {
      out = evaluate(g, f.operand());
      out.flip();
      return out;
    }
    case K::conjunction:
    case K::disjunction: {
      const Sat a = evaluate(g, f.operands[0]);
      const Sat b = evaluate(g, f.operands[1]);
      for (std::size_t i = 0; i < n; ++i) out[i] = f.kind == K::conjunction ? a[i] && b[i] : a[i] || b[i];
      return out;
    }
    case K::EX:
    case K::AX: {
      const Sat a = evaluate(g, f.operand());
      for (std::size_t i = 0; i < n; ++i) {
        const auto& s = g.succ[i];
        out[i] = f.kind == K::EX ? std::any_of(s.begin(), s.end(), [&](auto j) { return a[j]; })
                                 : std::all_of(s.begin(), s.end(), [&](auto j) { return a[j]; });
      }
      return out;
    }
    case K::EF: {
      // backward search from the target states
      out = evaluate(g, f.operand());
      std::deque<std::size_t> work;
      for (std::size_t i = 0; i < n; ++i) {
        if (out[i]) work.push_back(i);
      }
      while (!work.empty()) {
        const std::size_t j = work.front();
        work.pop_front();
        for (std::size_t i : g.pred[j]) {
          if (!out[i]) {
            out[i] = true;
            work.push_back(i);
          }
        }
      }
      return out;
    }
    case K::AF: {
      // a state joins once it satisfies f, or it is live and every successor joined
      const Sat a = evaluate(g, f.operand());
      std::vector<std::size_t> pending(n);
      std::deque<std::size_t> work;
      for (std::size_t i = 0; i < n; ++i) {
        pending[i] = g.succ[i].size();
        if (a[i]) {
          out[i] = true;
          work.push_back(i);
        }
      }
      while (!work.empty()) {
        const std::size_t j = work.front();
        work.pop_front();
        for (std::size_t i : g.pred[j]) {
          if (out[i]) continue;
          // successor lists have no duplicates: each successor differs in a different gene
          if (--pending[i] == 0) {
            out[i] = true;
            work.push_back(i);
          }
        }
      }
      return out;
    }
    case K::EG:
    case K::AG: {
      // drop states that violate f or (EG) have only dropped successors and are live,
      // (AG) have any dropped successor
      out = evaluate(g, f.operand());
      std::vector<std::size_t> alive(n);
      for (std::size_t i = 0; i < n; ++i) alive[i] = g.succ[i].size();
      std::deque<std::size_t> work;
      for (std::size_t i = 0; i < n; ++i) {
        if (!out[i]) work.push_back(i);
      }
      while (!work.empty()) {
        const std::size_t j = work.front();
        work.pop_front();
        for (std::size_t i : g.pred[j]) {
          if (!out[i]) continue;
          if (f.kind == K::AG || --alive[i] == 0) {
            out[i] = false;
            work.push_back(i);
          }
        }
      }
      return out;
    }
  }
  return out;
}

inline std::vector<State> shortest_path(const StateGraph& g, const Sat& target) {
  std::vector<std::size_t> parent(g.size(), g.size());
  std::deque<std::size_t> work{0};
  parent[0] = 0;
  while (!work.empty()) {
    const std::size_t i = work.front();
    work.pop_front();
    if (target[i]) {
      std::vector<State> path;
      for (std::size_t k = i;; k = parent[k]) {
        path.push_back(g.states[k]);
        if (k == 0) break;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (std::size_t j : g.succ[i]) {
      if (parent[j] == g.size()) {
        parent[j] = i;
        work.push_back(j);
      }
    }
  }
  return {};
}

}  // namespace detail

/// Explicit-state verdict with the same evidence policy as `check`.
inline Verdict explicit_check(const Network& n, const Formula& f,
                              std::size_t cap = default_state_cap) {
  const StateGraph g = explore(n, cap);
  const auto sat = detail::evaluate(g, f);
  Verdict v;
  v.holds = sat[0];
  v.reachable_count = g.size();
  v.satisfying_reachable_count = static_cast<std::size_t>(std::count(sat.begin(), sat.end(), true));
  if (f.kind == Formula::Kind::EF && v.holds) {
    v.evidence = detail::shortest_path(g, detail::evaluate(g, f.operand()));
  } else if (f.kind == Formula::Kind::AG && !v.holds) {
    auto bad = detail::evaluate(g, f.operand());
    bad.flip();
    v.evidence = detail::shortest_path(g, bad);
  }
  return v;
}

/// Stable states by enumerating the full potential space.
inline StableReport explicit_stable(const Network& n, const std::optional<Formula>& where,
                                    std::size_t cap = default_state_cap,
                                    std::size_t enumeration_cap = stable_enumeration_cap) {
  if (state_space_size(n, cap) > cap) throw StateCapExceeded(cap);
  StableReport report;
  for_each_state(n, [&](const State& s) {
    if (!is_stable(n, s)) return;
    if (where) {
      // a single-state graph is enough for state formulas over a dead state
      StateGraph g;
      g.states.push_back(s);
      g.succ.emplace_back();
      g.pred.emplace_back();
      if (!detail::evaluate(g, *where)[0]) return;
    }
    ++report.count;
    if (report.states.size() < enumeration_cap) report.states.push_back(s);
  });
  return report;
}

}  // namespace grn::oracle

#endif
