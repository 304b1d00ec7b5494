#ifndef GRN_SYMBOLIC_HPP
#define GRN_SYMBOLIC_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "grn/mdd.hpp"
#include "grn/network.hpp"
#include "grn/petri.hpp"

namespace grn {

enum class VariableOrder { declaration, reverse };

/// Collapses each P/T transition onto gene variables: weighted arcs on P_g
/// and Q_g become an interval guard on g, and the net token change on P_g
/// becomes the +1/-1 effect.
inline mdd::SymbolicRelation relation_from_net(const pn::CompiledNet& compiled) {
  using pn::StateMap;
  const auto& maxes = compiled.map.max_levels;
  mdd::SymbolicRelation rel;
  for (const auto& t : compiled.net.transitions) {
    mdd::GuardedUpdate u;
    u.label = t.name;
    u.guard.resize(maxes.size());
    std::vector<int> lo(maxes.size(), 0);
    std::vector<int> hi(maxes);
    std::vector<bool> touched(maxes.size(), false);
    std::vector<int> delta(maxes.size(), 0);
    for (const auto& [p, w] : t.consume) {
      const GeneId g = StateMap::gene_of(p);
      touched[g] = true;
      if (StateMap::is_complement(p)) {
        hi[g] = std::min(hi[g], maxes[g] - w);
      } else {
        lo[g] = std::max(lo[g], w);
        delta[g] -= w;
      }
    }
    for (const auto& [p, w] : t.produce) {
      if (!StateMap::is_complement(p)) delta[StateMap::gene_of(p)] += w;
    }
    for (GeneId g = 0; g < maxes.size(); ++g) {
      if (touched[g]) {
        u.guard[g].assign(static_cast<std::size_t>(maxes[g]) + 1, false);
        for (int v = lo[g]; v <= hi[g]; ++v) u.guard[g][static_cast<std::size_t>(v)] = true;
      }
      if (delta[g] != 0) {
        if (u.var || (delta[g] != 1 && delta[g] != -1)) {
          throw std::logic_error("transition '" + t.name + "' is not a unit step on one gene");
        }
        u.var = g;
        u.delta = delta[g];
      }
    }
    rel.updates.push_back(std::move(u));
  }
  return rel;
}

struct SymbolicOptions {
  VariableOrder order = VariableOrder::declaration;
  mdd::Limits limits;
};

/// A network loaded into an MDD engine: one variable per gene (variable id
/// = gene id), with the transition relation derived from the compiled net.
class SymbolicModel {
 public:
  explicit SymbolicModel(const Network& n, SymbolicOptions options = {})
      : network_(n), compiled_(pn::compile(n)) {
    std::vector<int> domains;
    for (const auto& g : n.genes) domains.push_back(g.max_level + 1);
    auto order = options.order == VariableOrder::declaration
                     ? mdd::VarOrder::declaration(std::move(domains))
                     : mdd::VarOrder::reversed(std::move(domains));
    engine_ = std::make_unique<mdd::Engine>(std::move(order), relation_from_net(compiled_),
                                            options.limits);
  }

  const Network& network() const { return network_; }
  const pn::CompiledNet& compiled() const { return compiled_; }
  mdd::Engine& engine() { return *engine_; }

  mdd::StateSet initial() { return engine_->singleton(network_.initial.levels); }

  const mdd::StateSet& reachable() {
    if (!reachable_) reachable_ = engine_->reachable(initial());
    return *reachable_;
  }

  /// States with no successor, over the full potential space.
  const mdd::StateSet& deadlocks() {
    if (!deadlocks_) deadlocks_ = engine_->complement(engine_->pre_image(engine_->full()));
    return *deadlocks_;
  }

  State to_state(std::vector<int> values) const { return State(std::move(values)); }

 private:
  Network network_;
  pn::CompiledNet compiled_;
  std::unique_ptr<mdd::Engine> engine_;
  // Declared after engine_ so they are released before it.
  std::optional<mdd::StateSet> reachable_;
  std::optional<mdd::StateSet> deadlocks_;
};

}  // namespace grn

#endif
