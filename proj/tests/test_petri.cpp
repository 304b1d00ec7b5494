#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace grn;
using namespace grn::pn;
using grn::testing::toggle_text;

namespace {

std::optional<TransitionId> find(const PetriNet& net, const std::string& name) {
  for (TransitionId t = 0; t < net.transitions.size(); ++t) {
    if (net.transitions[t].name == name) return t;
  }
  return std::nullopt;
}

std::set<std::string> names(const PetriNet& net, const std::vector<TransitionId>& ids) {
  std::set<std::string> out;
  for (auto t : ids) out.insert(net.transitions[t].name);
  return out;
}

Network single_gene_default(int default_level) {
  return grn::testing::load("network S\ngene g levels 0..1\nrule g: default " +
                            std::to_string(default_level) + "\ninit g = 0\n");
}

}  // namespace

TEST(Compile, Toggle) {
  const auto c = compile(grn::testing::load(toggle_text));
  ASSERT_EQ(c.net.places.size(), 4u);
  EXPECT_EQ(c.net.places[0].name, "P_a");
  EXPECT_EQ(c.net.places[1].name, "Q_a");
  EXPECT_EQ(c.net.places[2].name, "P_b");
  EXPECT_EQ(c.net.places[3].name, "Q_b");
  ASSERT_EQ(c.net.transitions.size(), 4u);

  const auto& inc_a = c.net.transitions[*find(c.net, "inc_a@0[b:0..0]")];
  // consumes Q_a, produces P_a, tests Q_b >= 1
  EXPECT_EQ(inc_a.consume, (Arcs{{1, 1}, {3, 1}}));
  EXPECT_EQ(inc_a.produce, (Arcs{{0, 1}, {3, 1}}));
  const auto& dec_a = c.net.transitions[*find(c.net, "dec_a@1[b:1..1]")];
  EXPECT_EQ(dec_a.consume, (Arcs{{0, 1}, {2, 1}}));
  EXPECT_EQ(dec_a.produce, (Arcs{{1, 1}, {2, 1}}));
  EXPECT_TRUE(find(c.net, "inc_b@0[a:0..0]"));
  EXPECT_TRUE(find(c.net, "dec_b@1[a:1..1]"));
}

TEST(Compile, TransitionsForEveryLevel) {
  const auto c = compile(single_gene_default(0));
  EXPECT_EQ(c.net.places.size(), 2u);
  ASSERT_EQ(c.net.transitions.size(), 1u);
  EXPECT_EQ(c.net.transitions[0].name, "dec_g@1");
}

TEST(Compile, OnlyWhereTargetDiffers) {
  const auto c = compile(grn::testing::load(
      "network S\ngene g levels 0..3\nrule g: default 2\ninit g = 0\n"));
  std::set<std::string> expected{"inc_g@0", "inc_g@1", "dec_g@3"};
  std::set<std::string> got;
  for (const auto& t : c.net.transitions) got.insert(t.name);
  EXPECT_EQ(got, expected);
}

TEST(Compile, MultivaluedGuardWeights) {
  const auto c = compile(grn::testing::load(
      "network C\ngene a levels 0..3\ngene b levels 0..1\na -> b threshold 2\n"
      "rule a: default 0\nrule b: when a >= 2 -> 1 default 0\ninit a = 0, b = 0\n"));
  const auto t = find(c.net, "inc_b@0[a:2..3]");
  ASSERT_TRUE(t);
  // tests P_a >= 2; the interval reaches max so Q_a is not tested
  EXPECT_EQ(c.net.transitions[*t].consume, (Arcs{{0, 2}, {3, 1}}));
  EXPECT_TRUE(find(c.net, "dec_b@1[a:0..1]"));
}

TEST(Enabled, Toggle) {
  const auto c = compile(grn::testing::load(toggle_text));
  EXPECT_EQ(c.net.initial, (Marking{{0, 1, 0, 1}}));
  EXPECT_EQ(names(c.net, enabled(c.net, c.net.initial)),
            (std::set<std::string>{"inc_a@0[b:0..0]", "inc_b@0[a:0..0]"}));
  EXPECT_TRUE(enabled(c.net, c.map.to_marking(State({1, 0}))).empty());

  PetriNet empty;
  empty.places.push_back({"p", 1});
  EXPECT_TRUE(enabled(empty, Marking{{1}}).empty());
}

TEST(Fire, Toggle) {
  const auto c = compile(grn::testing::load(toggle_text));
  const Marking m = fire(c.net, c.net.initial, *find(c.net, "inc_a@0[b:0..0]"));
  EXPECT_EQ(c.map.to_state(m), State({1, 0}));
  EXPECT_THROW(fire(c.net, m, *find(c.net, "inc_b@0[a:0..0]")), std::invalid_argument);
}

TEST(Fire, SelfLoopAndInverse) {
  PetriNet net;
  net.places = {{"p", 2}, {"q", 2}};
  net.transitions.push_back({"test", {{0, 1}}, {{0, 1}}});
  net.transitions.push_back({"move", {{0, 1}}, {{1, 1}}});
  net.transitions.push_back({"back", {{1, 1}}, {{0, 1}}});
  const Marking m{{1, 1}};
  EXPECT_EQ(fire(net, m, 0), m);
  EXPECT_EQ(fire(net, fire(net, m, 1), 2), m);
}

TEST(StateMap, RoundTripAndInvariant) {
  const StateMap map{{1, 3}};
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 3; ++b) {
      const State s({a, b});
      const Marking m = map.to_marking(s);
      EXPECT_EQ(m[0] + m[1], 1);
      EXPECT_EQ(m[2] + m[3], 3);
      EXPECT_EQ(map.to_state(m), s);
    }
  }
  EXPECT_FALSE(map.to_state(Marking{{1, 1, 0, 3}}));
}

TEST(Dot, ToggleNodesAndDeterminism) {
  const auto net = compile(grn::testing::load(toggle_text)).net;
  const std::string dot = to_dot(net);
  std::size_t nodes = 0;
  for (std::size_t pos = 0; (pos = dot.find("shape=", pos)) != std::string::npos; ++pos) ++nodes;
  EXPECT_EQ(nodes, 8u);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_EQ(dot, to_dot(compile(grn::testing::load(toggle_text)).net));
}

TEST(Dot, PlacesOnly) {
  PetriNet net;
  net.name = "N";
  net.places = {{"P_g", 1}, {"Q_g", 1}};
  net.initial = Marking{{0, 1}};
  const std::string dot = to_dot(net);
  EXPECT_EQ(dot.find("shape=box"), std::string::npos);
  EXPECT_NE(dot.find("\"Q_g\" [shape=circle"), std::string::npos);
}

TEST(Json, Toggle) {
  const auto j = to_json(compile(grn::testing::load(toggle_text)).net);
  ASSERT_EQ(j["places"].size(), 4u);
  ASSERT_EQ(j["transitions"].size(), 4u);
  EXPECT_EQ(j["places"][1]["name"], "Q_a");
  EXPECT_EQ(j["places"][1]["initial"], 1);
  EXPECT_EQ(j["transitions"][0]["name"], "inc_a@0[b:0..0]");
  EXPECT_EQ(j["transitions"][0]["consume"]["Q_b"], 1);
}

// Firing a transition from any consistent marking moves exactly like the
// network's successor relation.
TEST(Compile, StepwiseBisimilarOnRandomModels) {
  grn::testing::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const Network n = grn::testing::load(grn::testing::random_model_text(rng));
    const auto c = compile(n);
    for_each_state(n, [&](const State& s) {
      std::set<State> via_net;
      for (auto& [g, t] : successors(n, s)) via_net.insert(t);
      std::set<State> via_pn;
      const Marking m = c.map.to_marking(s);
      for (auto t : enabled(c.net, m)) {
        const auto next = c.map.to_state(fire(c.net, m, t));
        ASSERT_TRUE(next);
        via_pn.insert(*next);
      }
      EXPECT_EQ(via_pn, via_net);
    });
  }
}
