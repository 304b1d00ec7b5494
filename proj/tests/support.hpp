#ifndef GRN_TESTS_SUPPORT_HPP
#define GRN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grn/grn.hpp"

namespace grn::testing {

inline const char* toggle_text =
    "network Toggle\n"
    "gene a levels 0..1\n"
    "gene b levels 0..1\n"
    "a -| b threshold 1\n"
    "b -| a threshold 1\n"
    "rule a: when b >= 1 -> 0 default 1\n"
    "rule b: when a >= 1 -> 0 default 1\n"
    "init a = 0, b = 0\n";

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string model_path(const std::string& name) {
  return std::string(GRN_MODELS_DIR) + "/" + name;
}

inline Network load(std::string_view text) {
  auto r = dsl::load_network(text);
  if (!r) {
    std::string msg = "fixture does not load:";
    for (const auto& d : r.diagnostics) msg += "\n" + format(d);
    throw std::runtime_error(msg);
  }
  return std::move(*r.value);
}

inline Network load_model(const std::string& name) { return load(read_text(model_path(name))); }

inline Formula formula(const Network& n, std::string_view text) {
  auto r = dsl::load_formula(text, n);
  if (!r) throw std::runtime_error("bad formula: " + std::string(text));
  return std::move(*r.value);
}

inline std::string monotone_text(int n) {
  std::string t = "network M" + std::to_string(n) + "\n";
  for (int i = 0; i < n; ++i) t += "gene g" + std::to_string(i) + " levels 0..1\n";
  for (int i = 0; i < n; ++i) t += "rule g" + std::to_string(i) + ": default 1\n";
  t += "init ";
  for (int i = 0; i < n; ++i) t += (i ? ", g" : "g") + std::to_string(i) + " = 0";
  return t + "\n";
}

// ---- random generators ------------------------------------------------------

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline const char* random_cmp(Rng& rng) {
  static const char* cmps[] = {">=", "<=", "=", ">", "<"};
  return cmps[uniform(rng, 0, 4)];
}

struct RandomShape {
  int max_genes = 4;
  int max_level = 3;
  bool extra_spacing = false;  // comments, blank lines and odd spacing
};

/// A well-formed model in the network grammar. Every rule reads only genes
/// with an edge into it, so the result always lowers without errors.
inline std::string random_model_text(Rng& rng, RandomShape shape = {}) {
  const int n = uniform(rng, 1, shape.max_genes);
  std::vector<int> max(n);
  std::vector<std::string> name(n);
  for (int g = 0; g < n; ++g) {
    max[g] = uniform(rng, 1, shape.max_level);
    name[g] = std::string(1, static_cast<char>('a' + g)) + (coin(rng, 0.3) ? "_" + std::to_string(g) : "");
  }
  std::vector<std::vector<int>> regulators(n);
  std::ostringstream out;
  const auto sep = [&] { return shape.extra_spacing && coin(rng, 0.3) ? "   " : " "; };
  if (shape.extra_spacing) out << "# random model\n\n";
  out << "network R" << uniform(rng, 0, 9999) << '\n';
  for (int g = 0; g < n; ++g) out << "gene" << sep() << name[g] << " levels 0.." << max[g] << '\n';
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      if (!coin(rng, 0.45)) continue;
      regulators[t].push_back(s);
      out << name[s] << (coin(rng) ? " -> " : " -| ") << name[t] << " threshold "
          << uniform(rng, 1, max[s]) << '\n';
      if (shape.extra_spacing && coin(rng, 0.2)) out << "  # edge\n";
    }
  }
  const auto atom = [&](int t) {
    const int s = regulators[t][static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(regulators[t].size()) - 1))];
    return name[s] + " " + random_cmp(rng) + " " + std::to_string(uniform(rng, 0, max[s]));
  };
  std::function<std::string(int, int)> cond = [&](int t, int depth) -> std::string {
    const int pick = depth == 0 ? 0 : uniform(rng, 0, 4);
    switch (pick) {
      case 1: return "not " + cond(t, depth - 1);
      case 2: return cond(t, depth - 1) + " and " + cond(t, depth - 1);
      case 3: return cond(t, depth - 1) + " or " + cond(t, depth - 1);
      case 4: return "(" + cond(t, depth - 1) + ")";
      default: return atom(t);
    }
  };
  for (int g = 0; g < n; ++g) {
    out << "rule " << name[g] << ':';
    if (!regulators[g].empty()) {
      const int clauses = uniform(rng, 0, 3);
      for (int c = 0; c < clauses; ++c) {
        out << (c ? ", " : " ") << "when " << cond(g, uniform(rng, 0, 2)) << " -> "
            << uniform(rng, 0, max[g]);
      }
    }
    out << " default " << uniform(rng, 0, max[g]) << '\n';
  }
  out << "init";
  for (int g = 0; g < n; ++g) out << (g ? ", " : " ") << name[g] << " = " << uniform(rng, 0, max[g]);
  out << '\n';
  return out.str();
}

/// Random CTL formula text over the genes of `n`, nesting depth at most `depth`.
inline std::string random_formula_text(Rng& rng, const Network& n, int depth) {
  static const char* temporal[] = {"EX", "EF", "EG", "AX", "AF", "AG"};
  if (depth == 0 || coin(rng, 0.2)) {
    if (coin(rng, 0.15)) return "deadlock";
    const auto g = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n.gene_count()) - 1));
    return n.genes[g].name + " " + random_cmp(rng) + " " +
           std::to_string(uniform(rng, 0, n.genes[g].max_level));
  }
  switch (uniform(rng, 0, 3)) {
    case 0: return "not " + random_formula_text(rng, n, depth - 1);
    case 1:
      return "(" + random_formula_text(rng, n, depth - 1) + " and " +
             random_formula_text(rng, n, depth - 1) + ")";
    case 2:
      return "(" + random_formula_text(rng, n, depth - 1) + " or " +
             random_formula_text(rng, n, depth - 1) + ")";
    default:
      return std::string(temporal[uniform(rng, 0, 5)]) + " " +
             random_formula_text(rng, n, depth - 1);
  }
}

// ---- brute-force reference ----------------------------------------------------
// Kleene iteration over explicit sets of the full state space, straight from
// the textbook fixpoint characterisations. Slow and obviously correct.

struct BruteForce {
  const Network& net;
  std::vector<State> states;
  std::map<State, std::vector<State>> next;

  explicit BruteForce(const Network& n) : net(n) {
    for_each_state(n, [&](const State& s) {
      states.push_back(s);
      auto& out = next[s];
      for (auto& [g, t] : successors(n, s)) out.push_back(t);
    });
  }

  using Set = std::set<State>;

  Set all() const { return Set(states.begin(), states.end()); }

  Set pre(const Set& x) const {
    Set out;
    for (const auto& s : states) {
      for (const auto& t : next.at(s)) {
        if (x.count(t)) {
          out.insert(s);
          break;
        }
      }
    }
    return out;
  }

  Set complement(const Set& x) const {
    Set out;
    for (const auto& s : states) {
      if (!x.count(s)) out.insert(s);
    }
    return out;
  }

  static Set meet(const Set& a, const Set& b) {
    Set out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }
  static Set join(const Set& a, const Set& b) {
    Set out = a;
    out.insert(b.begin(), b.end());
    return out;
  }

  Set dead() const { return complement(pre(all())); }

  Set eval(const Formula& f) const {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::atom: {
        Set out;
        for (const auto& s : states) {
          if (compare(s[f.gene], f.cmp, f.value)) out.insert(s);
        }
        return out;
      }
      case K::deadlock: return dead();
      case K::negation: return complement(eval(f.operand()));
      case K::conjunction: return meet(eval(f.operands[0]), eval(f.operands[1]));
      case K::disjunction: return join(eval(f.operands[0]), eval(f.operands[1]));
      case K::EX: return pre(eval(f.operand()));
      case K::AX: {
        // every successor satisfies f, vacuous in dead states
        const Set a = eval(f.operand());
        Set out;
        for (const auto& s : states) {
          const auto& succ = next.at(s);
          if (std::all_of(succ.begin(), succ.end(), [&](const State& t) { return a.count(t) > 0; })) {
            out.insert(s);
          }
        }
        return out;
      }
      case K::EF: {
        const Set a = eval(f.operand());
        Set x;
        while (true) {
          Set y = join(a, pre(x));
          if (y == x) return x;
          x = std::move(y);
        }
      }
      case K::EG: {
        const Set a = eval(f.operand());
        const Set d = dead();
        Set x = all();
        while (true) {
          Set y = meet(a, join(pre(x), d));
          if (y == x) return x;
          x = std::move(y);
        }
      }
      case K::AF: return complement(eval(Formula::unary(K::EG, Formula::negation(f.operand()))));
      case K::AG: return complement(eval(Formula::unary(K::EF, Formula::negation(f.operand()))));
    }
    return {};
  }

  Set reachable() const {
    Set seen{net.initial};
    std::vector<State> work{net.initial};
    while (!work.empty()) {
      const State s = work.back();
      work.pop_back();
      for (const auto& t : next.at(s)) {
        if (seen.insert(t).second) work.push_back(t);
      }
    }
    return seen;
  }

  /// BFS distance from the initial state to the nearest state in `target`.
  std::optional<std::size_t> distance(const Set& target) const {
    Set seen{net.initial};
    std::vector<State> layer{net.initial};
    for (std::size_t d = 0; !layer.empty(); ++d) {
      for (const auto& s : layer) {
        if (target.count(s)) return d;
      }
      std::vector<State> nxt;
      for (const auto& s : layer) {
        for (const auto& t : next.at(s)) {
          if (seen.insert(t).second) nxt.push_back(t);
        }
      }
      layer = std::move(nxt);
    }
    return std::nullopt;
  }
};

/// The symbolic set as explicit states, enumerated over the full space.
inline std::set<State> to_explicit(SymbolicModel& model, const mdd::StateSet& s) {
  std::set<State> out;
  for (auto& v : model.engine().enumerate(s, std::numeric_limits<std::size_t>::max())) {
    out.insert(State(std::move(v)));
  }
  return out;
}

/// Checks a path against the network: starts at the initial state, each
/// step is a successor, the last state is in `target`.
inline bool valid_path(const Network& n, const std::vector<State>& path,
                       const std::set<State>& target) {
  if (path.empty() || path.front() != n.initial || !target.count(path.back())) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto succ = successors(n, path[i]);
    if (std::none_of(succ.begin(), succ.end(), [&](const auto& p) { return p.second == path[i + 1]; })) {
      return false;
    }
  }
  return true;
}

}  // namespace grn::testing

#endif
