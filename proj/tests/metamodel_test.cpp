#include <gtest/gtest.h>

#include "support.hpp"

using namespace essence;
using essence::fixtures::corpus;

TEST(Metamodel, AreaColorsAreFixed) {
  EXPECT_EQ(area_color(Area::customer), Color::green);
  EXPECT_EQ(area_color(Area::solution), Color::yellow);
  EXPECT_EQ(area_color(Area::endeavor), Color::blue);
  EXPECT_EQ(kAllAreas.size(), 3u);
  EXPECT_EQ(kAllCategories.size(), 4u);
}

TEST(Metamodel, LevelsRange) {
  EXPECT_FALSE(is_valid_level(0));
  for (int l = 1; l <= 5; ++l) EXPECT_TRUE(is_valid_level(l));
  EXPECT_FALSE(is_valid_level(6));
}

TEST(Metamodel, IdsAreKindPlusSlug) {
  EXPECT_EQ(slug("Stakeholder Representation"), "stakeholder_representation");
  EXPECT_EQ(slug("  Develop Statement of Architecture Work; Secure Approval "),
            "develop_statement_of_architecture_work_secure_approval");
  EXPECT_EQ(slug("Phase A"), "phase_a");
  EXPECT_EQ(make_id(ElementKind::work_product, "Value Chain Diagram"), "workproduct.value_chain_diagram");
  EXPECT_EQ(child_id("practice.phase_a", ElementKind::space, "Define Scope"), "practice.phase_a/space.define_scope");
}

TEST(Metamodel, LookupGovernance) {
  auto ref = lookup(corpus(), "competency.governance");
  ASSERT_TRUE(ref.has_value());
  ASSERT_EQ(kind_of(*ref), ElementKind::competency);
  const auto* c = std::get<const Competency*>(*ref);
  EXPECT_EQ(c->name, "Governance");
  EXPECT_EQ(c->area, Area::endeavor);
  EXPECT_FALSE(c->kernel_builtin);
}

TEST(Metamodel, LookupPhaseAPractice) {
  const auto* p = lookup_as<Practice>(corpus(), "practice.phase_a");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->name, "Phase A");
}

TEST(Metamodel, LookupAbsent) {
  ModelDocument empty;
  EXPECT_FALSE(lookup(empty, "competency.governance").has_value());
  EXPECT_FALSE(lookup(empty, "").has_value());
  EXPECT_FALSE(lookup(corpus(), "competency.alchemy").has_value());
}

TEST(Metamodel, IterAreasInOrder) {
  auto areas = iter_elements(corpus(), ElementKind::area);
  ASSERT_EQ(areas.size(), 3u);
  EXPECT_EQ(name_of(areas[0]), "Customer");
  EXPECT_EQ(name_of(areas[1]), "Solution");
  EXPECT_EQ(name_of(areas[2]), "Endeavor");
}

TEST(Metamodel, IterCompetencies) {
  auto comps = iter_elements(corpus(), ElementKind::competency);
  ASSERT_EQ(comps.size(), 7u);
  int builtin = 0;
  for (const auto& c : comps) builtin += std::get<const Competency*>(c)->kernel_builtin ? 1 : 0;
  EXPECT_EQ(builtin, 6);
}

TEST(Metamodel, IterEmpty) {
  ModelDocument empty;
  for (int k = 0; k <= static_cast<int>(ElementKind::phase); ++k)
    EXPECT_TRUE(iter_elements(empty, static_cast<ElementKind>(k)).empty());
}

TEST(Metamodel, IterIsStable) {
  for (int k = 0; k <= static_cast<int>(ElementKind::phase); ++k) {
    auto a = iter_elements(corpus(), static_cast<ElementKind>(k));
    auto b = iter_elements(corpus(), static_cast<ElementKind>(k));
    EXPECT_EQ(a, b);
  }
}

TEST(Metamodel, CorpusIdsUnique) {
  std::set<std::string> seen;
  for_each_element(corpus(), [&](ElementRef e) { EXPECT_TRUE(seen.insert(id_of(e)).second) << id_of(e); });
}

TEST(Metamodel, CorpusAlphaInvariants) {
  for (const auto& e : iter_elements(corpus(), ElementKind::alpha)) {
    const auto* alpha = std::get<const Alpha*>(e);
    ASSERT_FALSE(alpha->states.empty());
    std::set<std::string> names;
    std::set<ChecklistKey> keys;
    for (const auto& st : alpha->states) {
      EXPECT_TRUE(names.insert(st.name).second);
      ASSERT_FALSE(st.checklist.empty());
      std::set<std::string> texts;
      for (const auto& item : st.checklist) {
        EXPECT_TRUE(texts.insert(item.text).second);
        EXPECT_TRUE(keys.insert(item.key).second);
      }
    }
  }
}

TEST(Metamodel, CorpusNestingTerminates) {
  for (const auto& p : corpus().document().practices)
    for (const auto& s : p.spaces) {
      auto depth = nesting_depth(p.spaces, s);
      ASSERT_TRUE(depth.has_value());
      EXPECT_LE(*depth, 3);
    }
}

TEST(Metamodel, CorpusColonConvention) {
  for (const auto& p : corpus().document().practices) {
    std::map<std::string, std::vector<const WorkProductContribution*>> by_output;
    for (const auto& a : p.activities)
      for (const auto& c : a.produces) by_output[c.work_product.target].push_back(&c);
    for (const auto& [wp, contributions] : by_output) {
      if (contributions.size() < 2) continue;
      std::set<std::string> rendered;
      for (const auto* c : contributions) {
        ASSERT_TRUE(c->part.has_value()) << wp;
        EXPECT_FALSE(c->part->empty());
        EXPECT_TRUE(rendered.insert(c->rendered_name()).second) << c->rendered_name();
      }
    }
  }
}

TEST(Metamodel, StructuralEqualityIgnoresSpans) {
  auto a = fixtures::parse_ok("role \"R\" {\n  competency X @ 2\n}\n", "a.ess");
  auto b = fixtures::parse_ok("\n\nrole   \"R\" { competency X @ 2 }", "b.ess");
  EXPECT_NE(a.spans, b.spans);
  EXPECT_TRUE(structurally_equal(a, b));
  b.roles[0].competencies[0].level = 3;
  EXPECT_FALSE(structurally_equal(a, b));
}
