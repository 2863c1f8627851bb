#include <gtest/gtest.h>

#include "support.hpp"

using namespace essence;
using essence::fixtures::resolve_text;

namespace {

std::vector<std::pair<std::string, std::string>> rule_paths(const std::vector<Diagnostic>& diags) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& d : diags) out.emplace_back(d.rule, d.path);
  return out;
}

using RP = std::vector<std::pair<std::string, std::string>>;

}  // namespace

TEST(Lint, Catalog) {
  ASSERT_EQ(kLintRules.size(), 4u);
  EXPECT_EQ(all_lint_ids(), (std::set<std::string>{"L001", "L002", "L003", "L004"}));
  for (const auto& r : kLintRules) EXPECT_EQ(r.severity, Severity::warning);
}

TEST(Lint, UnfedDeliverable) {
  auto model = resolve_text(R"(practice "P" area Customer {
  goal "g"
  output "Architecture Vision"
  output "Fed"
  space "S" goal "x" {
    activity "a"
      produces "Fed"
  }
})");
  EXPECT_EQ(rule_paths(run_lints(model)), (RP{{"L001", "practice.p/workproduct.architecture_vision"}}));
}

TEST(Lint, MultiplyDefinedDeliverable) {
  auto model = resolve_text(R"(practice "One" area Customer {
  goal "g"
  output "Request for Architecture Work" category other
}
practice "Two" area Customer {
  goal "g"
  output "Request for Architecture Work" category catalog
})");
  EXPECT_EQ(rule_paths(run_lints(model, {"L002"})),
            (RP{{"L002", "practice.one/workproduct.request_for_architecture_work"},
                {"L002", "practice.two/workproduct.request_for_architecture_work"}}));
}

TEST(Lint, SameDefinitionModuloWhitespaceIsFine) {
  auto model = resolve_text(R"(practice "One" area Customer {
  goal "g"
  output "W" category matrix description "Two  words "
}
practice "Two" area Customer {
  goal "g"
  output "W" category matrix description " Two words"
})");
  EXPECT_TRUE(run_lints(model, {"L002"}).empty());
  auto cased = resolve_text(R"(practice "One" area Customer {
  goal "g"
  output "W" category matrix description "two words"
}
practice "Two" area Customer {
  goal "g"
  output "W" category matrix description "Two words"
})");
  EXPECT_EQ(run_lints(cased, {"L002"}).size(), 2u);
}

TEST(Lint, UnassignedRole) {
  auto model = resolve_text(R"(kernel "K" { competency Governance area Endeavor }
role "Used" { competency Governance @ 3 }
role "Idle" { competency Governance @ 3 }
practice "P" area Endeavor {
  goal "g"
  space "S" goal "x" {
    activity "a"
      role "Used"
  }
})");
  EXPECT_EQ(rule_paths(run_lints(model)), (RP{{"L003", "role.idle"}}));
}

TEST(Lint, OpaqueStep) {
  auto model = resolve_text(R"(practice "P" area Endeavor {
  goal "g"
  space "Opaque" {
  }
  space "Has goal" goal "x" {
  }
  space "Has child" {
    space "Inner" goal "y" {
    }
  }
  space "Has activity" {
    activity "a"
  }
})");
  EXPECT_EQ(rule_paths(run_lints(model)), (RP{{"L004", "practice.p/space.opaque"}}));
}

TEST(Lint, CorpusReproducesFindings) {
  auto diags = run_lints(fixtures::corpus());
  std::map<std::string, int> counts;
  for (const auto& d : diags) {
    ++counts[d.rule];
    EXPECT_EQ(d.severity, Severity::warning);
  }
  EXPECT_GE(counts["L001"], 1);
  EXPECT_GE(counts["L003"], 1);
  EXPECT_GE(counts["L004"], 1);
}

TEST(Lint, EmptyModelAndEmptySelection) {
  EXPECT_TRUE(run_lints(fixtures::resolve_ok(ModelDocument{})).empty());
  EXPECT_TRUE(run_lints(fixtures::corpus(), {}).empty());
}

TEST(Lint, DisabledRulesProduceNothing) {
  for (const auto& id : all_lint_ids()) {
    auto diags = run_lints(fixtures::corpus(), {id});
    for (const auto& d : diags) EXPECT_EQ(d.rule, id);
  }
}

TEST(Lint, UnknownRuleListsValidIds) {
  try {
    run_lints(fixtures::corpus(), {"L001", "L999"});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unknown lint rule 'L999' (valid: L001, L002, L003, L004)");
  }
}

TEST(Lint, OrderedByDeclarationThenRule) {
  auto diags = run_lints(fixtures::corpus());
  auto order = declaration_order(fixtures::corpus());
  for (std::size_t i = 1; i < diags.size(); ++i) {
    auto prev = std::make_pair(order.at(diags[i - 1].path), diags[i - 1].rule);
    auto cur = std::make_pair(order.at(diags[i].path), diags[i].rule);
    EXPECT_LT(prev, cur);
  }
}

// Adding a producer for an unfed output removes exactly that L001.
TEST(Lint, UnfedMonotonicity) {
  int exercised = 0;
  for (unsigned seed = 1; seed <= 150; ++seed) {
    auto r = resolve(fixtures::parse_ok(fixtures::random_document(seed)));
    if (!r.ok()) continue;
    auto before = run_lints(*r.model);
    for (const auto& d : before) {
      if (d.rule != "L001") continue;
      ModelDocument doc = r.model->document();
      for (auto& p : doc.practices) {
        auto w = std::find_if(p.outputs.begin(), p.outputs.end(), [&](const WorkProduct& x) { return x.id == d.path; });
        if (w == p.outputs.end()) continue;
        ActivitySpace s;
        s.id = child_id(p.id, ElementKind::space, "feeder space");
        s.name = "feeder space";
        s.goal = "feed";
        Activity a;
        a.id = child_id(s.id, ElementKind::activity, "feeder");
        a.name = "feeder";
        a.space = Reference{s.name, s.id};
        a.produces.push_back(WorkProductContribution{Reference{w->name, {}}, std::nullopt});
        p.spaces.push_back(s);
        p.activities.push_back(a);
      }
      auto after = run_lints(fixtures::resolve_ok(doc));
      std::vector<Diagnostic> expected;
      for (const auto& b : before)
        if (!(b.rule == "L001" && b.path == d.path)) expected.push_back(b);
      EXPECT_EQ(after, expected) << "seed " << seed << " output " << d.path;
      ++exercised;
    }
  }
  EXPECT_GT(exercised, 20);
}
