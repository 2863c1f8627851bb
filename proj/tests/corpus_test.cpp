#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace essence;

namespace {

togaf::CorpusManifest manifest() { return togaf::parse_manifest(togaf::corpus_manifest_text()); }

std::size_t count_activities(const std::vector<ActivitySpec>& specs) {
  std::size_t n = 0;
  for (const auto& a : specs) n += 1 + count_activities(a.sub_activities);
  return n;
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Corpus, ManifestParses) {
  auto m = manifest();
  EXPECT_EQ(m.at("phase_specs"), 10);
  EXPECT_EQ(m.at("phase A steps"), 11);
  EXPECT_EQ(m.at("lint L002"), 2);
}

TEST(Corpus, CountsMatchManifest) {
  auto m = manifest();
  const auto& doc = fixtures::corpus().document();
  EXPECT_EQ(static_cast<long>(togaf::corpus_files().size()), m.at("files"));
  EXPECT_EQ(static_cast<long>(iter_elements(doc, ElementKind::area).size()), m.at("areas"));
  EXPECT_EQ(static_cast<long>(iter_elements(doc, ElementKind::alpha).size()), m.at("alphas"));
  EXPECT_EQ(static_cast<long>(iter_elements(doc, ElementKind::competency).size()), m.at("competencies"));
  EXPECT_EQ(static_cast<long>(doc.kernels.at(0).spaces.size()), m.at("kernel_spaces"));
  EXPECT_EQ(static_cast<long>(doc.roles.size()), m.at("roles"));
  EXPECT_EQ(static_cast<long>(doc.phases.size()), m.at("phase_specs"));
  EXPECT_EQ(static_cast<long>(doc.practices.size()), m.at("practices"));
  EXPECT_EQ(static_cast<long>(doc.methods.size()), m.at("methods"));
  for (const auto& ph : doc.phases) {
    std::string prefix = "phase " + std::string(to_string(ph.code)) + " ";
    EXPECT_EQ(static_cast<long>(ph.steps.size()), m.at(prefix + "steps")) << prefix;
    if (m.count(prefix + "activities")) {
      std::size_t acts = 0;
      for (const auto& s : ph.steps) acts += count_activities(s.activities);
      EXPECT_EQ(static_cast<long>(acts), m.at(prefix + "activities")) << prefix;
    }
    if (m.count(prefix + "outputs")) EXPECT_EQ(static_cast<long>(ph.outputs.size()), m.at(prefix + "outputs"));
  }
}

TEST(Corpus, CheckAndLintMatchManifest) {
  auto m = manifest();
  auto diags = check_wellformedness(fixtures::corpus());
  EXPECT_EQ(static_cast<long>(count_severity(diags, Severity::error)), m.at("check errors"));
  EXPECT_EQ(static_cast<long>(count_severity(diags, Severity::warning)), m.at("check warnings"));
  std::map<std::string, long> lints;
  for (const auto& d : run_lints(fixtures::corpus())) ++lints[d.rule];
  for (const auto& id : all_lint_ids()) EXPECT_EQ(lints[id], m.at("lint " + id)) << id;
}

TEST(Corpus, PhaseUniverse) {
  std::set<PhaseCode> codes;
  for (const auto& ph : fixtures::corpus().document().phases) EXPECT_TRUE(codes.insert(ph.code).second);
  EXPECT_EQ(codes, std::set<PhaseCode>(kAllPhaseCodes.begin(), kAllPhaseCodes.end()));
}

TEST(Corpus, AdmMethod) {
  const auto& doc = fixtures::corpus().document();
  const auto* m = lookup_as<Method>(doc, "method.adm");
  ASSERT_NE(m, nullptr);
  ASSERT_TRUE(m->preamble.has_value());
  EXPECT_EQ(m->preamble->target, "practice.preliminary");
  std::vector<std::string> cycle;
  for (const auto& c : m->cycle) cycle.push_back(c.name);
  EXPECT_EQ(cycle, (std::vector<std::string>{"Phase A", "Phase B", "Phase C", "Phase D", "Phase E", "Phase F",
                                             "Phase G", "Phase H"}));
  ASSERT_EQ(m->concurrent.size(), 1u);
  EXPECT_EQ(m->concurrent[0].target, "practice.requirements_management");
}

TEST(Corpus, StubsHaveObjectiveOnly) {
  for (const auto& ph : fixtures::corpus().document().phases) {
    EXPECT_FALSE(ph.objective.empty());
    if (ph.code != PhaseCode::P && ph.code != PhaseCode::A) EXPECT_TRUE(ph.steps.empty());
  }
}

TEST(Corpus, EmbeddedMatchesSourceTree) {
  for (const auto& f : togaf::corpus_files())
    EXPECT_EQ(std::string(f.text), read(std::filesystem::path(ESSENCE_CORPUS_DIR) / std::string(f.name))) << f.name;
  EXPECT_EQ(std::string(togaf::corpus_manifest_text()), read(std::filesystem::path(ESSENCE_CORPUS_DIR) / "manifest"));
}

TEST(Corpus, WriteCorpus) {
  auto dir = std::filesystem::temp_directory_path() / "essence_corpus_test";
  std::filesystem::remove_all(dir);
  togaf::write_corpus(dir);
  for (const auto& f : togaf::corpus_files()) EXPECT_EQ(read(dir / std::string(f.name)), std::string(f.text));
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest"));
  std::filesystem::remove_all(dir);
}
