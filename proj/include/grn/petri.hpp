#ifndef GRN_PETRI_HPP
#define GRN_PETRI_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "grn/network.hpp"

namespace grn::pn {

using PlaceId = std::size_t;
using TransitionId = std::size_t;

/// Arc multiset: (place, weight) pairs sorted by place, weights >= 1.
using Arcs = std::vector<std::pair<PlaceId, int>>;

struct Place {
  std::string name;
  int capacity = 1;
};

/// A place appearing in both `consume` and `produce` is read as well as
/// updated; a pure test is a self-loop of equal weights.
struct Transition {
  std::string name;
  Arcs consume;
  Arcs produce;
};

struct Marking {
  std::vector<int> tokens;

  int operator[](PlaceId p) const { return tokens[p]; }
  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;
};

struct PetriNet {
  std::string name;
  std::vector<Place> places;
  std::vector<Transition> transitions;
  Marking initial;
};

/// Bijection between network states and consistent markings. Gene g owns
/// places 2g (P_g, tokens = level) and 2g+1 (Q_g, tokens = max - level).
struct StateMap {
  std::vector<int> max_levels;

  static constexpr PlaceId level_place(GeneId g) { return 2 * g; }
  static constexpr PlaceId complement_place(GeneId g) { return 2 * g + 1; }
  static constexpr GeneId gene_of(PlaceId p) { return p / 2; }
  static constexpr bool is_complement(PlaceId p) { return p % 2 == 1; }

  Marking to_marking(const State& s) const {
    Marking m;
    m.tokens.reserve(2 * max_levels.size());
    for (GeneId g = 0; g < max_levels.size(); ++g) {
      m.tokens.push_back(s[g]);
      m.tokens.push_back(max_levels[g] - s[g]);
    }
    return m;
  }

  /// Inverse of to_marking; nullopt for markings that break the complement
  /// invariant.
  std::optional<State> to_state(const Marking& m) const {
    if (m.tokens.size() != 2 * max_levels.size()) return std::nullopt;
    State s(std::vector<int>(max_levels.size()));
    for (GeneId g = 0; g < max_levels.size(); ++g) {
      const int p = m.tokens[level_place(g)];
      const int q = m.tokens[complement_place(g)];
      if (p < 0 || q < 0 || p + q != max_levels[g]) return std::nullopt;
      s[g] = p;
    }
    return s;
  }
};

struct CompiledNet {
  PetriNet net;
  StateMap map;
};

namespace detail {

/// Cut points k in 1..max where atoms over `reg` distinguish level k-1 from k.
inline std::vector<int> cut_points(const Rule& rule, GeneId reg, int max) {
  std::set<int> cuts;
  for (const auto& clause : rule.clauses) {
    clause.when.for_each_atom([&](const Condition& a) {
      if (a.gene != reg) return;
      switch (a.cmp) {
        case Comparator::ge:
        case Comparator::lt: cuts.insert(a.value); break;
        case Comparator::gt:
        case Comparator::le: cuts.insert(a.value + 1); break;
        case Comparator::eq:
          cuts.insert(a.value);
          cuts.insert(a.value + 1);
          break;
      }
    });
  }
  std::vector<int> out;
  for (int k : cuts) {
    if (k >= 1 && k <= max) out.push_back(k);
  }
  return out;
}

struct Interval {
  int lo;
  int hi;
};

inline std::vector<Interval> partition(const std::vector<int>& cuts, int max) {
  std::vector<Interval> out;
  int lo = 0;
  for (int k : cuts) {
    out.push_back({lo, k - 1});
    lo = k;
  }
  out.push_back({lo, max});
  return out;
}

class ArcBuilder {
 public:
  void test(PlaceId p, int weight) {
    if (weight > 0) test_[p] = std::max(test_[p], weight);
  }
  void take(PlaceId p) { ++take_[p]; }
  void give(PlaceId p) { ++give_[p]; }

  void build(Arcs& consume, Arcs& produce) const {
    std::set<PlaceId> places;
    for (const auto& [p, w] : test_) places.insert(p);
    for (const auto& [p, w] : take_) places.insert(p);
    for (const auto& [p, w] : give_) places.insert(p);
    for (PlaceId p : places) {
      const int t = get(test_, p);
      const int c = std::max(t, get(take_, p));
      const int out = c - get(take_, p) + get(give_, p);
      if (c > 0) consume.emplace_back(p, c);
      if (out > 0) produce.emplace_back(p, out);
    }
  }

 private:
  static int get(const std::map<PlaceId, int>& m, PlaceId p) {
    const auto it = m.find(p);
    return it == m.end() ? 0 : it->second;
  }
  std::map<PlaceId, int> test_;
  std::map<PlaceId, int> take_;
  std::map<PlaceId, int> give_;
};

}  // namespace detail

/// Compiles a validated network into a P/T net with complement places.
///
/// For each gene, the levels of its regulators are partitioned into the
/// intervals its rule can distinguish. Every combination of regulator
/// intervals (a context) and own level where the rule's target differs from
/// the level yields one unit-step transition guarded by weighted self-loops.
/// Transitions are emitted for every syntactic level, reachable or not.
inline CompiledNet compile(const Network& n) {
  CompiledNet out;
  out.net.name = n.name;
  for (const auto& gene : n.genes) {
    out.map.max_levels.push_back(gene.max_level);
    out.net.places.push_back({"P_" + gene.name, gene.max_level});
    out.net.places.push_back({"Q_" + gene.name, gene.max_level});
  }
  out.net.initial = out.map.to_marking(n.initial);

  std::set<std::pair<Arcs, Arcs>> seen;
  for (GeneId g = 0; g < n.gene_count(); ++g) {
    const Rule& rule = n.rules[g];
    const int max = n.genes[g].max_level;

    std::set<GeneId> read;
    for (const auto& clause : rule.clauses) {
      clause.when.for_each_atom([&](const Condition& a) { read.insert(a.gene); });
    }
    read.erase(g);  // the own level is fixed per transition

    struct Regulator {
      GeneId gene;
      std::vector<detail::Interval> intervals;
    };
    std::vector<Regulator> regs;
    for (GeneId r : read) {
      const int rmax = n.genes[r].max_level;
      auto intervals = detail::partition(detail::cut_points(rule, r, rmax), rmax);
      if (intervals.size() > 1) regs.push_back({r, std::move(intervals)});
    }

    for (int level = 0; level <= max; ++level) {
      std::vector<std::size_t> ctx(regs.size(), 0);
      while (true) {
        State probe(std::vector<int>(n.gene_count(), 0));
        probe[g] = level;
        for (std::size_t i = 0; i < regs.size(); ++i) probe[regs[i].gene] = regs[i].intervals[ctx[i]].lo;
        const int target = target_level(n, g, probe);

        if (target != level) {
          const bool up = target > level;
          detail::ArcBuilder arcs;
          const PlaceId p = StateMap::level_place(g);
          const PlaceId q = StateMap::complement_place(g);
          arcs.test(p, level);
          arcs.test(q, max - level);
          std::string name = std::string(up ? "inc_" : "dec_") + n.genes[g].name + "@" +
                             std::to_string(level);
          if (!regs.empty()) name += '[';
          for (std::size_t i = 0; i < regs.size(); ++i) {
            const auto [lo, hi] = regs[i].intervals[ctx[i]];
            const GeneId r = regs[i].gene;
            arcs.test(StateMap::level_place(r), lo);
            arcs.test(StateMap::complement_place(r), n.genes[r].max_level - hi);
            if (i) name += ',';
            name += n.genes[r].name + ':' + std::to_string(lo) + ".." + std::to_string(hi);
          }
          if (!regs.empty()) name += ']';
          if (up) {
            arcs.take(q);
            arcs.give(p);
          } else {
            arcs.take(p);
            arcs.give(q);
          }
          Transition t{std::move(name), {}, {}};
          arcs.build(t.consume, t.produce);
          if (seen.emplace(t.consume, t.produce).second) out.net.transitions.push_back(std::move(t));
        }

        std::size_t i = 0;
        for (; i < regs.size(); ++i) {
          if (++ctx[i] < regs[i].intervals.size()) break;
          ctx[i] = 0;
        }
        if (i == regs.size()) break;
      }
    }
  }
  return out;
}

inline bool is_enabled(const Transition& t, const Marking& m) {
  return std::all_of(t.consume.begin(), t.consume.end(),
                     [&](const auto& arc) { return m[arc.first] >= arc.second; });
}

inline std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m) {
  std::vector<TransitionId> out;
  for (TransitionId t = 0; t < net.transitions.size(); ++t) {
    if (is_enabled(net.transitions[t], m)) out.push_back(t);
  }
  return out;
}

/// Fires `t` at `m`. Throws std::invalid_argument if `t` is not enabled.
inline Marking fire(const PetriNet& net, const Marking& m, TransitionId t) {
  const Transition& tr = net.transitions.at(t);
  if (!is_enabled(tr, m)) {
    throw std::invalid_argument("transition '" + tr.name + "' is not enabled");
  }
  Marking out = m;
  for (const auto& [p, w] : tr.consume) out.tokens[p] -= w;
  for (const auto& [p, w] : tr.produce) out.tokens[p] += w;
  return out;
}

inline std::string to_dot(const PetriNet& net) {
  std::string out = "digraph \"" + net.name + "\" {\n  rankdir=LR;\n";
  for (PlaceId p = 0; p < net.places.size(); ++p) {
    out += "  \"" + net.places[p].name + "\" [shape=circle, label=\"" + net.places[p].name +
           "\\n" + std::to_string(net.initial[p]) + "\"];\n";
  }
  for (TransitionId t = 0; t < net.transitions.size(); ++t) {
    out += "  \"t" + std::to_string(t) + "\" [shape=box, label=\"" + net.transitions[t].name +
           "\"];\n";
  }
  for (TransitionId t = 0; t < net.transitions.size(); ++t) {
    const auto id = "\"t" + std::to_string(t) + "\"";
    for (const auto& [p, w] : net.transitions[t].consume) {
      out += "  \"" + net.places[p].name + "\" -> " + id + " [label=\"" + std::to_string(w) +
             "\"];\n";
    }
    for (const auto& [p, w] : net.transitions[t].produce) {
      out += "  " + id + " -> \"" + net.places[p].name + "\" [label=\"" + std::to_string(w) +
             "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

inline nlohmann::ordered_json to_json(const PetriNet& net) {
  nlohmann::ordered_json places = nlohmann::ordered_json::array();
  for (PlaceId p = 0; p < net.places.size(); ++p) {
    places.push_back({{"name", net.places[p].name},
                      {"capacity", net.places[p].capacity},
                      {"initial", net.initial[p]}});
  }
  nlohmann::ordered_json transitions = nlohmann::ordered_json::array();
  for (const auto& t : net.transitions) {
    nlohmann::ordered_json consume = nlohmann::ordered_json::object();
    nlohmann::ordered_json produce = nlohmann::ordered_json::object();
    for (const auto& [p, w] : t.consume) consume[net.places[p].name] = w;
    for (const auto& [p, w] : t.produce) produce[net.places[p].name] = w;
    transitions.push_back({{"name", t.name}, {"consume", consume}, {"produce", produce}});
  }
  nlohmann::ordered_json out;
  out["places"] = std::move(places);
  out["transitions"] = std::move(transitions);
  return out;
}

}  // namespace grn::pn

#endif
