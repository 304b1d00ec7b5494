#include <gtest/gtest.h>

#include "support.hpp"

using namespace grn;
using grn::testing::toggle_text;

namespace {

std::vector<std::string> codes(std::string_view text) {
  const auto r = dsl::load_network(text);
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.code);
  return out;
}

const std::string two_genes = "network X\ngene a levels 0..1\ngene b levels 0..1\n";

}  // namespace

TEST(Lower, Toggle) {
  const auto r = dsl::load_network(toggle_text);
  ASSERT_TRUE(r.value);
  EXPECT_TRUE(r.diagnostics.empty());
  const Network& n = *r.value;
  ASSERT_EQ(n.gene_count(), 2u);
  EXPECT_EQ(n.genes[0].name, "a");
  EXPECT_EQ(n.edges.size(), 2u);
  EXPECT_EQ(n.edges[0].sign, Sign::inhibitor);
  EXPECT_EQ(n.edges[0].source, 0u);
  EXPECT_EQ(n.edges[0].target, 1u);
  ASSERT_EQ(n.rules.size(), 2u);
  EXPECT_EQ(n.rules[0].gene, 0u);
  EXPECT_EQ(n.rules[0].default_level, 1);
  EXPECT_EQ(n.initial, State({0, 0}));
}

TEST(Lower, RulesIndexedByGene) {
  const auto r = dsl::load_network(two_genes + "rule b: default 0\nrule a: default 1\n");
  ASSERT_TRUE(r.value);
  EXPECT_EQ(r.value->rules[0].gene, 0u);
  EXPECT_EQ(r.value->rules[1].gene, 1u);
}

TEST(Lower, InitOutOfRange) {
  const auto r = dsl::load_network(two_genes + "rule a: default 0\nrule b: default 0\ninit a = 5\n");
  EXPECT_FALSE(r.value);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, "E003");
  EXPECT_EQ(r.diagnostics[0].span, (SourceSpan{6, 10, 1}));
}

TEST(Lower, DuplicateRule) {
  EXPECT_EQ(codes(two_genes + "rule a: default 0\nrule a: default 1\nrule b: default 0\n"),
            std::vector<std::string>{"E004"});
}

TEST(Lower, Duplicates) {
  EXPECT_EQ(codes(two_genes + "gene a levels 0..2\nrule a: default 0\nrule b: default 0\n"),
            std::vector<std::string>{"E004"});
  EXPECT_EQ(codes(two_genes + "a -> b threshold 1\na -| b threshold 1\n"
                              "rule a: default 0\nrule b: when a >= 1 -> 1 default 0\n"),
            std::vector<std::string>{"E004"});
  EXPECT_EQ(codes(two_genes + "rule a: default 0\nrule b: default 0\ninit a = 0\ninit a = 1\n"),
            std::vector<std::string>{"E004"});
}

TEST(Lower, MissingRule) {
  EXPECT_EQ(codes(two_genes + "rule a: default 0\n"), std::vector<std::string>{"E004"});
}

TEST(Lower, UnknownGene) {
  const auto r = dsl::load_network(two_genes + "rule a: default 0\nrule c: default 0\nrule b: default 0\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, "E002");
  EXPECT_NE(r.diagnostics[0].message.find("'c'"), std::string::npos);
  EXPECT_EQ(r.diagnostics[0].span, (SourceSpan{5, 6, 1}));
}

TEST(Lower, RangeErrors) {
  EXPECT_EQ(codes(two_genes + "a -> b threshold 2\nrule a: default 0\nrule b: when a >= 1 -> 1 default 0\n"),
            (std::vector<std::string>{"E003", "W002"}));
  EXPECT_EQ(codes(two_genes + "rule a: default 2\nrule b: default 0\n"),
            std::vector<std::string>{"E003"});
  EXPECT_EQ(codes(two_genes + "a -> b threshold 1\nrule a: default 0\nrule b: when a >= 3 -> 1 default 0\n"),
            (std::vector<std::string>{"E003", "W002"}));
}

TEST(Lower, RuleReadsUnconnectedGene) {
  const auto r = dsl::load_network(two_genes + "rule a: default 0\nrule b: when a >= 1 or a = 0 -> 1 default 0\n");
  EXPECT_FALSE(r.value);
  ASSERT_EQ(r.diagnostics.size(), 1u);  // once per rule and gene
  EXPECT_EQ(r.diagnostics[0].code, "E005");
  EXPECT_EQ(r.diagnostics[0].span, (SourceSpan{5, 14, 6}));
}

TEST(Lower, Warnings) {
  const auto r = dsl::load_network(two_genes + "a -> b threshold 1\nb -> a threshold 1\n"
                                               "rule a: default 0\nrule b: when a >= 1 -> 1 default 0\n");
  ASSERT_TRUE(r.value);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, "W001");
  EXPECT_EQ(r.diagnostics[0].span.line, 5);
}

TEST(Lower, DiagnosticsSortedAndFormatted) {
  const auto r = dsl::load_network(two_genes + "rule a: default 7\nrule b: default 9\n");
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_LT(r.diagnostics[0].span.line, r.diagnostics[1].span.line);
  EXPECT_EQ(format(r.diagnostics[0], "m.grn"), "m.grn:4:17: error E003: " + r.diagnostics[0].message);
}

TEST(LowerQuery, ResolvesAndChecksRanges) {
  const Network n = grn::testing::load(toggle_text);
  const auto ok = dsl::load_query("check EF (a = 1 and b = 0)", n);
  ASSERT_TRUE(ok.value);
  EXPECT_EQ(ok.value->kind, Query::Kind::check);
  EXPECT_EQ(ok.value->formula->kind, Formula::Kind::EF);

  const auto unknown = dsl::load_query("check EF z = 1", n);
  EXPECT_FALSE(unknown.value);
  ASSERT_EQ(unknown.diagnostics.size(), 1u);
  EXPECT_EQ(unknown.diagnostics[0].code, "E002");

  const auto range = dsl::load_query("stable where a = 2", n);
  EXPECT_FALSE(range.value);
  EXPECT_EQ(range.diagnostics.at(0).code, "E003");

  const auto count = dsl::load_query("count reachable", n);
  ASSERT_TRUE(count.value);
  EXPECT_FALSE(count.value->formula);
}

TEST(Lower, RandomModelsAreValid) {
  grn::testing::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const std::string text = grn::testing::random_model_text(rng);
    const auto r = dsl::load_network(text);
    ASSERT_TRUE(r.value) << text;
    EXPECT_FALSE(has_errors(validate(*r.value)));
  }
}
