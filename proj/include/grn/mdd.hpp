#ifndef GRN_MDD_HPP
#define GRN_MDD_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grn/network.hpp"

// Quasi-reduced ordered multi-valued decision diagrams.
//
// Every path from a root visits every level exactly once; a node whose
// children are all the empty terminal is itself the empty terminal. With a
// unique table this makes node ids canonical: two sets are equal iff their
// root ids are equal.

namespace grn::mdd {

using BigInt = boost::multiprecision::cpp_int;
using NodeId = std::uint32_t;

inline constexpr NodeId empty_node = 0;
inline constexpr NodeId full_node = 1;

/// Node-store limit or deadline hit. The engine stays consistent.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t peak)
      : std::runtime_error(what), peak_nodes(peak) {}
  std::size_t peak_nodes;
};

/// Variable domains plus the level at which each variable is decided.
struct VarOrder {
  std::vector<int> domains;         // indexed by variable id
  std::vector<std::size_t> levels;  // variable id decided at each level, top first

  static VarOrder declaration(std::vector<int> domains) {
    VarOrder o{std::move(domains), {}};
    for (std::size_t v = 0; v < o.domains.size(); ++v) o.levels.push_back(v);
    return o;
  }
  static VarOrder reversed(std::vector<int> domains) {
    VarOrder o = declaration(std::move(domains));
    std::reverse(o.levels.begin(), o.levels.end());
    return o;
  }
  std::size_t size() const { return domains.size(); }
};

/// One transition: a guard on every variable (an empty vector leaves the
/// variable unconstrained) and an optional +1/-1 step on one variable.
struct GuardedUpdate {
  std::vector<std::vector<bool>> guard;
  std::optional<std::size_t> var;
  int delta = 0;
  std::string label;

  bool allows(std::size_t v, int value) const {
    return guard[v].empty() || guard[v][static_cast<std::size_t>(value)];
  }
};

struct SymbolicRelation {
  std::vector<GuardedUpdate> updates;
};

struct Limits {
  std::size_t max_nodes = std::size_t{1} << 24;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Stats {
  std::size_t peak_nodes = 0;  // largest node-store occupancy observed
  std::size_t nodes = 0;       // current occupancy
  std::size_t cache_lookups = 0;
  std::size_t cache_hits = 0;
  std::size_t fixpoint_rounds = 0;
  std::size_t collections = 0;
};

class Engine;

/// Reference-holding handle to a canonical set. Handles keep their nodes
/// alive across garbage collection; they must not outlive their engine or
/// be mixed across engines.
class StateSet {
 public:
  StateSet() = default;
  StateSet(const StateSet& other) : engine_(other.engine_), id_(other.id_) { acquire(); }
  StateSet(StateSet&& other) noexcept : engine_(other.engine_), id_(other.id_) {
    other.engine_ = nullptr;
  }
  StateSet& operator=(StateSet other) noexcept {
    std::swap(engine_, other.engine_);
    std::swap(id_, other.id_);
    return *this;
  }
  ~StateSet() { release(); }

  bool is_empty() const { return id_ == empty_node; }
  NodeId id() const { return id_; }
  const Engine* engine() const { return engine_; }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.engine_ == b.engine_ && a.id_ == b.id_;
  }

 private:
  friend class Engine;
  StateSet(Engine* engine, NodeId id) : engine_(engine), id_(id) { acquire(); }
  inline void acquire();
  inline void release();

  Engine* engine_ = nullptr;
  NodeId id_ = empty_node;
};

class Engine {
 public:
  explicit Engine(VarOrder order, SymbolicRelation relation = {}, Limits limits = {})
      : order_(std::move(order)), relation_(std::move(relation)), limits_(limits) {
    const std::size_t n = order_.size();
    level_of_var_.resize(n);
    for (std::size_t l = 0; l < n; ++l) level_of_var_[order_.levels[l]] = l;
    for (int d : order_.domains) {
      if (d < 1) throw std::invalid_argument("variable domains must be non-empty");
    }
    free_by_level_.resize(n);
    nodes_.push_back({static_cast<std::uint32_t>(n), 0, 1, false, false});  // empty terminal
    nodes_.push_back({static_cast<std::uint32_t>(n), 0, 1, false, false});  // full terminal
    table_.assign(1024, 0);

    for (auto& u : relation_.updates) prepare(u);

    full_by_level_.assign(n + 1, full_node);
    for (std::size_t l = n; l-- > 0;) {
      std::vector<NodeId> kids(domain_at(l), full_by_level_[l + 1]);
      full_by_level_[l] = make(l, kids);
      ++nodes_[full_by_level_[l]].ext;  // pinned for the engine's lifetime
    }
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const VarOrder& order() const { return order_; }
  const SymbolicRelation& relation() const { return relation_; }
  Stats stats() const {
    Stats s = stats_;
    s.nodes = in_use_;
    return s;
  }
  std::size_t live_nodes() const { return in_use_; }

  // ---- construction ------------------------------------------------------

  StateSet empty() { return wrap(empty_node); }
  StateSet full() { return wrap(full_by_level_[0]); }

  /// States whose variable `var` takes a value in `allowed`.
  StateSet from_values(std::size_t var, const std::vector<bool>& allowed) {
    safe_point();
    check_var(var);
    NodeId below = full_node;
    for (std::size_t l = order_.size(); l-- > 0;) {
      std::vector<NodeId> kids(domain_at(l), below);
      if (order_.levels[l] == var) {
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (i >= allowed.size() || !allowed[i]) kids[i] = empty_node;
        }
      }
      below = make(l, kids);
    }
    return wrap(below);
  }

  /// States satisfying `var cmp value`. Throws std::out_of_range if the
  /// constant is outside the variable's domain.
  StateSet from_predicate(std::size_t var, Comparator cmp, int value) {
    check_var(var);
    const int dom = order_.domains[var];
    if (value < 0 || value >= dom) {
      throw std::out_of_range("constant " + std::to_string(value) + " outside the domain 0.." +
                              std::to_string(dom - 1));
    }
    std::vector<bool> allowed(static_cast<std::size_t>(dom));
    for (int i = 0; i < dom; ++i) allowed[static_cast<std::size_t>(i)] = compare(i, cmp, value);
    return from_values(var, allowed);
  }

  /// The one-state set; `values` is indexed by variable id.
  StateSet singleton(const std::vector<int>& values) {
    safe_point();
    if (values.size() != order_.size()) throw std::invalid_argument("state has the wrong arity");
    NodeId below = full_node;
    for (std::size_t l = order_.size(); l-- > 0;) {
      const int v = values[order_.levels[l]];
      if (v < 0 || v >= static_cast<int>(domain_at(l))) {
        throw std::out_of_range("value outside the variable's domain");
      }
      std::vector<NodeId> kids(domain_at(l), empty_node);
      kids[static_cast<std::size_t>(v)] = below;
      below = make(l, kids);
    }
    return wrap(below);
  }

  // ---- set algebra -------------------------------------------------------

  StateSet unite(const StateSet& a, const StateSet& b) {
    check_pair(a, b);
    return wrap(unite(a.id(), b.id()));
  }
  StateSet intersect(const StateSet& a, const StateSet& b) {
    check_pair(a, b);
    return wrap(intersect(a.id(), b.id()));
  }
  StateSet difference(const StateSet& a, const StateSet& b) {
    check_pair(a, b);
    return wrap(difference(a.id(), b.id()));
  }
  StateSet complement(const StateSet& a) {
    check_own(a);
    safe_point();
    return wrap(difference(full_by_level_[0], a.id()));
  }

  bool contains(const StateSet& a, const std::vector<int>& values) const {
    NodeId n = a.id();
    for (std::size_t l = 0; l < order_.size() && n != empty_node; ++l) {
      n = child(n, static_cast<std::size_t>(values[order_.levels[l]]));
    }
    return n == full_node;
  }

  BigInt count(const StateSet& a) const {
    std::unordered_map<NodeId, BigInt> memo;
    return count(a.id(), memo);
  }

  /// Number of internal nodes in the diagram of `a`.
  std::size_t node_count(const StateSet& a) const {
    std::vector<NodeId> stack{a.id()};
    std::unordered_map<NodeId, bool> seen;
    std::size_t total = 0;
    while (!stack.empty()) {
      const NodeId n = stack.back();
      stack.pop_back();
      if (n <= full_node || !seen.emplace(n, true).second) continue;
      ++total;
      for (std::size_t i = 0; i < domain_at(nodes_[n].level); ++i) stack.push_back(child(n, i));
    }
    return total;
  }

  /// The first state of `a` in level order (smallest value at each level).
  std::optional<std::vector<int>> pick(const StateSet& a) const {
    if (a.is_empty()) return std::nullopt;
    std::vector<int> values(order_.size(), 0);
    NodeId n = a.id();
    for (std::size_t l = 0; l < order_.size(); ++l) {
      for (std::size_t i = 0; i < domain_at(l); ++i) {
        if (child(n, i) != empty_node) {
          values[order_.levels[l]] = static_cast<int>(i);
          n = child(n, i);
          break;
        }
      }
    }
    return values;
  }

  /// Up to `cap` states of `a`, in level order.
  std::vector<std::vector<int>> enumerate(const StateSet& a, std::size_t cap) const {
    std::vector<std::vector<int>> out;
    std::vector<int> values(order_.size(), 0);
    enumerate(a.id(), 0, values, out, cap);
    return out;
  }

  // ---- relational operators ---------------------------------------------

  StateSet post_image(const StateSet& a) {
    check_own(a);
    safe_point();
    NodeId r = empty_node;
    for (std::size_t u = 0; u < relation_.updates.size(); ++u) r = unite(r, post(u, a.id()));
    return wrap(r);
  }

  StateSet pre_image(const StateSet& a) {
    check_own(a);
    safe_point();
    NodeId r = empty_node;
    for (std::size_t u = 0; u < relation_.updates.size(); ++u) r = unite(r, pre(u, a.id()));
    return wrap(r);
  }

  StateSet post_image(const StateSet& a, std::size_t update) {
    check_own(a);
    safe_point();
    return wrap(post(update, a.id()));
  }

  StateSet pre_image(const StateSet& a, std::size_t update) {
    check_own(a);
    safe_point();
    return wrap(pre(update, a.id()));
  }

  // ---- fixpoints ---------------------------------------------------------

  /// Least fixpoint of `init ∪ post(X)`, by breadth-first frontiers. Within
  /// a round the updates are chained: each one is applied to the states the
  /// previous ones already produced.
  StateSet reachable(const StateSet& init) {
    StateSet reached = init;
    StateSet frontier = init;
    while (!frontier.is_empty()) {
      ++stats_.fixpoint_rounds;
      safe_point();
      StateSet grown = frontier;
      for (std::size_t u = 0; u < relation_.updates.size(); ++u) {
        grown = unite(grown, post_image(grown, u));
      }
      frontier = difference(grown, reached);
      reached = unite(reached, frontier);
    }
    return reached;
  }

  /// Least fixpoint of a monotone transformer, iterated from the empty set.
  template <class F>
  StateSet lfp(F&& f) {
    return iterate(empty(), f);
  }

  /// Greatest fixpoint of a monotone transformer, iterated from the full set.
  template <class F>
  StateSet gfp(F&& f) {
    return iterate(full(), f);
  }

  /// Shortest path from some state of `init` to some state of `target`, as
  /// value vectors indexed by variable id. Layers are strict BFS layers
  /// (no chaining) so the path length is the BFS distance.
  std::optional<std::vector<std::vector<int>>> bfs_witness(const StateSet& init,
                                                           const StateSet& target) {
    std::vector<StateSet> layers{init};
    StateSet visited = init;
    while (true) {
      StateSet hit = intersect(layers.back(), target);
      if (!hit.is_empty()) {
        std::vector<std::vector<int>> path{*pick(hit)};
        for (std::size_t k = layers.size() - 1; k-- > 0;) {
          StateSet prev = intersect(layers[k], pre_image(singleton(path.back())));
          path.push_back(*pick(prev));
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      ++stats_.fixpoint_rounds;
      safe_point();
      StateSet next = difference(post_image(layers.back()), visited);
      if (next.is_empty()) return std::nullopt;
      visited = unite(visited, next);
      layers.push_back(std::move(next));
    }
  }

  /// GC and deadline checkpoint. Only called where every node that must
  /// survive is referenced by a StateSet.
  void safe_point() {
    if (limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline) {
      throw ResourceError("timeout exceeded", stats_.peak_nodes);
    }
    if (in_use_ >= live_after_gc_ + std::max<std::size_t>(gc_min_growth, live_after_gc_ / 4)) {
      collect();
    }
  }

 private:
  friend class StateSet;

  struct Node {
    std::uint32_t level;
    std::uint32_t children;  // offset into pool_
    std::uint32_t ext;       // StateSet references
    bool mark;
    bool free;
  };

  struct CacheKey {
    std::uint32_t op;
    NodeId a;
    NodeId b;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
  };
  struct CacheHash {
    std::size_t operator()(const CacheKey& k) const noexcept {
      std::uint64_t h = (std::uint64_t{k.op} << 40) ^ (std::uint64_t{k.a} << 20) ^ k.b;
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
      return static_cast<std::size_t>(h);
    }
  };

  enum : std::uint32_t { op_union = 1, op_intersect, op_difference, op_update_base };

  static constexpr std::size_t gc_min_growth = 64;

  template <class F>
  StateSet iterate(StateSet x, F& f) {
    while (true) {
      ++stats_.fixpoint_rounds;
      safe_point();
      StateSet y = f(static_cast<const StateSet&>(x));
      if (y == x) return y;
      x = std::move(y);
    }
  }

  void prepare(GuardedUpdate& u) {
    u.guard.resize(order_.size());
    for (std::size_t v = 0; v < order_.size(); ++v) {
      if (!u.guard[v].empty()) u.guard[v].resize(static_cast<std::size_t>(order_.domains[v]), false);
    }
    if (u.var) {
      check_var(*u.var);
      const auto dom = static_cast<std::size_t>(order_.domains[*u.var]);
      auto& g = u.guard[*u.var];
      if (g.empty()) g.assign(dom, true);
      g.resize(dom, false);
      for (std::size_t i = 0; i < dom; ++i) {
        const auto j = static_cast<long long>(i) + u.delta;
        if (j < 0 || j >= static_cast<long long>(dom)) g[i] = false;
      }
    }
    std::size_t deepest = 0;
    bool any = false;
    for (std::size_t v = 0; v < order_.size(); ++v) {
      if (!u.guard[v].empty() || (u.var && *u.var == v)) {
        deepest = std::max(deepest, level_of_var_[v]);
        any = true;
      }
    }
    // Levels at or below this are left untouched by the update.
    deepest_level_.push_back(any ? deepest + 1 : 0);
  }

  void check_var(std::size_t var) const {
    if (var >= order_.size()) throw std::out_of_range("unknown variable");
  }
  void check_own(const StateSet& a) const {
    if (a.engine_ != this && a.engine_ != nullptr) {
      throw std::invalid_argument("state set belongs to another engine");
    }
  }
  void check_pair(const StateSet& a, const StateSet& b) {
    check_own(a);
    check_own(b);
    safe_point();
  }

  StateSet wrap(NodeId id) {
    StateSet s(this, id);
    stats_.peak_nodes = std::max(stats_.peak_nodes, in_use_);
    return s;
  }

  std::size_t domain_at(std::size_t level) const {
    return level < order_.size() ? static_cast<std::size_t>(order_.domains[order_.levels[level]])
                                 : 0;
  }

  NodeId child(NodeId n, std::size_t i) const { return pool_[nodes_[n].children + i]; }
  std::size_t level(NodeId n) const { return nodes_[n].level; }

  static std::size_t hash_node(std::size_t level, const NodeId* kids, std::size_t count) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ level;
    for (std::size_t i = 0; i < count; ++i) {
      h ^= kids[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h ^= h >> 29;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 32;
    return static_cast<std::size_t>(h);
  }

  bool same_node(NodeId n, std::size_t lvl, const NodeId* kids) const {
    if (nodes_[n].level != lvl) return false;
    return std::equal(kids, kids + domain_at(lvl), pool_.begin() + nodes_[n].children);
  }

  NodeId make(std::size_t lvl, const std::vector<NodeId>& kids) {
    if (std::all_of(kids.begin(), kids.end(), [](NodeId k) { return k == empty_node; })) {
      return empty_node;
    }
    const std::size_t mask = table_.size() - 1;
    std::size_t slot = hash_node(lvl, kids.data(), kids.size()) & mask;
    while (table_[slot] != 0) {
      if (same_node(table_[slot], lvl, kids.data())) return table_[slot];
      slot = (slot + 1) & mask;
    }

    if (in_use_ >= limits_.max_nodes) {
      throw ResourceError("node limit of " + std::to_string(limits_.max_nodes) + " exceeded",
                          stats_.peak_nodes);
    }
    NodeId id;
    if (!free_by_level_[lvl].empty()) {
      id = free_by_level_[lvl].back();
      free_by_level_[lvl].pop_back();
      nodes_[id].free = false;
      nodes_[id].ext = 0;
    } else {
      id = static_cast<NodeId>(nodes_.size());
      nodes_.push_back({static_cast<std::uint32_t>(lvl), static_cast<std::uint32_t>(pool_.size()),
                        0, false, false});
      pool_.resize(pool_.size() + kids.size());
    }
    std::copy(kids.begin(), kids.end(), pool_.begin() + nodes_[id].children);
    table_[slot] = id;
    ++in_use_;
    stats_.peak_nodes = std::max(stats_.peak_nodes, in_use_);
    if (2 * in_use_ > table_.size()) rehash(table_.size() * 2);
    return id;
  }

  void rehash(std::size_t size) {
    table_.assign(size, 0);
    const std::size_t mask = size - 1;
    for (NodeId id = 2; id < nodes_.size(); ++id) {
      if (nodes_[id].free) continue;
      const auto lvl = nodes_[id].level;
      std::size_t slot = hash_node(lvl, pool_.data() + nodes_[id].children, domain_at(lvl)) & mask;
      while (table_[slot] != 0) slot = (slot + 1) & mask;
      table_[slot] = id;
    }
  }

  std::optional<NodeId> cached(std::uint32_t op, NodeId a, NodeId b) {
    ++stats_.cache_lookups;
    const auto it = cache_.find({op, a, b});
    if (it == cache_.end()) return std::nullopt;
    ++stats_.cache_hits;
    return it->second;
  }

  NodeId unite(NodeId a, NodeId b) {
    if (a == empty_node) return b;
    if (b == empty_node || a == b) return a;
    if (a > b) std::swap(a, b);
    if (auto hit = cached(op_union, a, b)) return *hit;
    const std::size_t lvl = level(a);
    std::vector<NodeId> kids(domain_at(lvl));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const NodeId ca = child(a, i);
      const NodeId cb = child(b, i);
      kids[i] = unite(ca, cb);
    }
    const NodeId r = make(lvl, kids);
    cache_[{op_union, a, b}] = r;
    return r;
  }

  NodeId intersect(NodeId a, NodeId b) {
    if (a == empty_node || b == empty_node) return empty_node;
    if (a == b) return a;
    if (a > b) std::swap(a, b);
    if (auto hit = cached(op_intersect, a, b)) return *hit;
    const std::size_t lvl = level(a);
    std::vector<NodeId> kids(domain_at(lvl));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const NodeId ca = child(a, i);
      const NodeId cb = child(b, i);
      kids[i] = intersect(ca, cb);
    }
    const NodeId r = make(lvl, kids);
    cache_[{op_intersect, a, b}] = r;
    return r;
  }

  NodeId difference(NodeId a, NodeId b) {
    if (a == empty_node || a == b) return empty_node;
    if (b == empty_node) return a;
    if (auto hit = cached(op_difference, a, b)) return *hit;
    const std::size_t lvl = level(a);
    std::vector<NodeId> kids(domain_at(lvl));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const NodeId ca = child(a, i);
      const NodeId cb = child(b, i);
      kids[i] = difference(ca, cb);
    }
    const NodeId r = make(lvl, kids);
    cache_[{op_difference, a, b}] = r;
    return r;
  }

  NodeId post(std::size_t u, NodeId a) {
    if (a == empty_node) return empty_node;
    const std::size_t lvl = level(a);
    if (lvl >= deepest_level_[u]) return a;
    const auto op = static_cast<std::uint32_t>(op_update_base + 2 * u);
    if (auto hit = cached(op, a, 0)) return *hit;
    const GuardedUpdate& upd = relation_.updates[u];
    const std::size_t var = order_.levels[lvl];
    const int shift = upd.var && *upd.var == var ? upd.delta : 0;
    std::vector<NodeId> kids(domain_at(lvl), empty_node);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!upd.allows(var, static_cast<int>(i))) continue;
      const auto j = static_cast<long long>(i) + shift;
      if (j < 0 || j >= static_cast<long long>(kids.size())) continue;
      const NodeId c = child(a, i);
      kids[static_cast<std::size_t>(j)] = post(u, c);
    }
    const NodeId r = make(lvl, kids);
    cache_[{op, a, 0}] = r;
    return r;
  }

  NodeId pre(std::size_t u, NodeId a) {
    if (a == empty_node) return empty_node;
    const std::size_t lvl = level(a);
    if (lvl >= deepest_level_[u]) return a;
    const auto op = static_cast<std::uint32_t>(op_update_base + 2 * u + 1);
    if (auto hit = cached(op, a, 0)) return *hit;
    const GuardedUpdate& upd = relation_.updates[u];
    const std::size_t var = order_.levels[lvl];
    const int shift = upd.var && *upd.var == var ? upd.delta : 0;
    std::vector<NodeId> kids(domain_at(lvl), empty_node);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!upd.allows(var, static_cast<int>(i))) continue;
      const auto j = static_cast<long long>(i) + shift;
      if (j < 0 || j >= static_cast<long long>(kids.size())) continue;
      const NodeId c = child(a, static_cast<std::size_t>(j));
      kids[i] = pre(u, c);
    }
    const NodeId r = make(lvl, kids);
    cache_[{op, a, 0}] = r;
    return r;
  }

  BigInt count(NodeId n, std::unordered_map<NodeId, BigInt>& memo) const {
    if (n == empty_node) return 0;
    if (n == full_node) return 1;
    if (const auto it = memo.find(n); it != memo.end()) return it->second;
    BigInt total = 0;
    for (std::size_t i = 0; i < domain_at(level(n)); ++i) total += count(child(n, i), memo);
    memo.emplace(n, total);
    return total;
  }

  void enumerate(NodeId n, std::size_t lvl, std::vector<int>& values,
                 std::vector<std::vector<int>>& out, std::size_t cap) const {
    if (n == empty_node || out.size() >= cap) return;
    if (lvl == order_.size()) {
      out.push_back(values);
      return;
    }
    for (std::size_t i = 0; i < domain_at(lvl); ++i) {
      values[order_.levels[lvl]] = static_cast<int>(i);
      enumerate(child(n, i), lvl + 1, values, out, cap);
    }
  }

  void collect() {
    ++stats_.collections;
    std::vector<NodeId> stack;
    for (NodeId id = 2; id < nodes_.size(); ++id) {
      if (!nodes_[id].free && nodes_[id].ext > 0) stack.push_back(id);
    }
    while (!stack.empty()) {
      const NodeId n = stack.back();
      stack.pop_back();
      if (n <= full_node || nodes_[n].mark) continue;
      nodes_[n].mark = true;
      for (std::size_t i = 0; i < domain_at(nodes_[n].level); ++i) stack.push_back(child(n, i));
    }
    for (NodeId id = 2; id < nodes_.size(); ++id) {
      Node& node = nodes_[id];
      if (node.free) continue;
      if (node.mark) {
        node.mark = false;
        continue;
      }
      node.free = true;
      free_by_level_[node.level].push_back(id);
      --in_use_;
    }
    std::erase_if(cache_, [&](const auto& entry) {
      const auto& [key, result] = entry;
      return nodes_[key.a].free || nodes_[key.b].free || nodes_[result].free;
    });
    rehash(table_.size());
    live_after_gc_ = in_use_;
  }

  VarOrder order_;
  SymbolicRelation relation_;
  Limits limits_;
  std::vector<std::size_t> level_of_var_;
  std::vector<std::size_t> deepest_level_;
  std::vector<Node> nodes_;
  std::vector<NodeId> pool_;
  std::vector<std::vector<NodeId>> free_by_level_;
  std::vector<NodeId> table_;
  std::unordered_map<CacheKey, NodeId, CacheHash> cache_;
  std::vector<NodeId> full_by_level_;
  std::size_t in_use_ = 0;
  std::size_t live_after_gc_ = 0;
  Stats stats_;
};

inline void StateSet::acquire() {
  if (engine_ && id_ > full_node) ++engine_->nodes_[id_].ext;
}

inline void StateSet::release() {
  if (engine_ && id_ > full_node) --engine_->nodes_[id_].ext;
  engine_ = nullptr;
}

}  // namespace grn::mdd

#endif
