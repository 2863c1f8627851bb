#pragma once

// Shared fixtures and seeded generators for the test suites.

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "essence/essence.hpp"

namespace essence::fixtures {

inline ModelDocument parse_ok(std::string_view text, std::string_view file = "test.ess") {
  auto r = dsl::parse(text, file);
  if (!r.ok()) {
    std::string msg = "unexpected parse failure:";
    for (const auto& d : r.diagnostics) msg += "\n  " + dsl::format_parse_diagnostic(d);
    throw Error(msg);
  }
  return std::move(*r.document);
}

inline ResolvedModel resolve_ok(ModelDocument doc) {
  auto r = resolve(std::move(doc));
  if (!r.ok()) {
    std::string msg = "unexpected resolve failure:";
    for (const auto& d : r.diagnostics) msg += "\n  " + format_report_line(d);
    throw Error(msg);
  }
  return std::move(*r.model);
}

inline ResolvedModel resolve_text(std::string_view text) { return resolve_ok(parse_ok(text)); }

inline const ResolvedModel& corpus() {
  static const ResolvedModel model = resolve_ok(togaf::load_corpus());
  return model;
}

/// The bundled kernel alone, enough for mapping.
inline const ResolvedModel& kernel_only() {
  static const ResolvedModel model = [] {
    ModelDocument doc;
    doc.kernels = corpus().document().kernels;
    doc.roles = corpus().document().roles;
    return resolve_ok(doc);
  }();
  return model;
}

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return range(1, 100) <= percent; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
  }

  /// Display text with spaces, punctuation, quotes and occasional non-ASCII.
  std::string text(int min_words = 1, int max_words = 4) {
    static const std::vector<std::string> words{
        "alpha", "Beta", "gamma", "Vision", "scope", "plan", "x1", "Z", "repo", "café", "naïve",
        "Übersicht", "a-b", "c/d", "e.f", "\\\"quoted\\\"", "it's", "50%", "(draft)", "über", "x:y"};
    std::string out;
    int n = range(min_words, max_words);
    for (int i = 0; i < n; ++i) out += (i ? " " : "") + pick(words);
    return out;
  }

  /// Distinct display names: the running counter keeps slugs unique.
  std::string name(const std::string& stem) { return stem + " " + std::to_string(++counter_) + " " + text(0, 2); }

 private:
  std::mt19937 rng_;
  int counter_ = 0;
};

inline std::string q(const std::string& escaped) { return "\"" + escaped + "\""; }

/// A random well-formed (parseable) document exercising every declaration
/// kind. Strings are emitted already escaped.
inline std::string random_document(unsigned seed) {
  Gen g(seed);
  static const std::vector<std::string> areas{"Customer", "Solution", "Endeavor"};
  static const std::vector<std::string> colors{"green", "yellow", "blue"};
  static const std::vector<std::string> cats{"catalog", "matrix", "diagram", "other"};
  static const std::vector<std::string> tags{"acquires_information", "builds", "verifies", "governs", "leads"};
  std::string s;
  std::vector<std::string> competencies;

  int kernels = g.range(0, 2);
  for (int k = 0; k < kernels; ++k) {
    s += "kernel " + q(g.name("Kernel")) + " {\n";
    if (k == 0) {
      // Area ids are global, so only the first kernel declares them.
      int first = g.range(0, 2);
      for (int i = g.range(1, 3); i > 0; --i) {
        int a = (first + i) % 3;
        s += "  area " + areas[a] + " color " + colors[a] + "\n";
      }
    }
    for (int i = g.range(0, 2); i > 0; --i) {
      s += "  alpha " + q(g.name("Alpha")) + " area " + g.pick(areas) + " {\n";
      for (int st = g.range(1, 3); st > 0; --st) {
        s += "    state " + q(g.name("State")) + " {\n";
        for (int c = g.range(1, 3); c > 0; --c) s += "      check " + q(g.text()) + "\n";
        s += "    }\n";
      }
      s += "  }\n";
    }
    for (int i = g.range(0, 3); i > 0; --i) {
      std::string name = g.name("Comp");
      competencies.push_back(name);
      s += "  competency " + q(name) + " area " + g.pick(areas);
      if (g.chance(40)) s += " levels " + std::to_string(g.range(1, 5));
      s += "\n";
    }
    std::vector<std::string> spaces;
    for (int i = g.range(0, 3); i > 0; --i) {
      std::string name = g.name("Space");
      s += "  space " + q(name) + " area " + g.pick(areas);
      if (!spaces.empty() && g.chance(40)) s += " in " + q(g.pick(spaces));
      if (g.chance(50)) s += " goal " + q(g.text());
      s += "\n";
      spaces.push_back(name);
    }
    for (int i = g.range(0, 2); i > 0; --i) {
      s += "  workproduct " + q(g.name("WP")) + " category " + g.pick(cats);
      if (g.chance(50)) s += " description " + q(g.text());
      s += "\n";
    }
    s += "}\n\n";
  }

  std::vector<std::string> roles;
  for (int i = g.range(0, 2); i > 0 && !competencies.empty(); --i) {
    std::string name = g.name("Role");
    roles.push_back(name);
    s += "role " + q(name) + " {\n";
    for (int c = g.range(1, 2); c > 0; --c)
      s += "  competency " + q(g.pick(competencies)) + " @ " + std::to_string(g.range(1, 5)) + "\n";
    s += "}\n";
  }

  std::vector<std::string> practices;
  for (int p = g.range(0, 3); p > 0; --p) {
    std::string name = g.name("Practice");
    practices.push_back(name);
    s += "practice " + q(name) + " area " + g.pick(areas) + " {\n";
    for (int i = g.range(1, 2); i > 0; --i) s += "  goal " + q(g.text()) + "\n";
    for (int i = g.range(0, 2); i > 0; --i) s += "  input " + q(g.text()) + "\n";
    std::vector<std::string> outputs;
    for (int i = g.range(0, 3); i > 0; --i) {
      std::string o = g.name("Out");
      outputs.push_back(o);
      s += "  output " + q(o);
      if (g.chance(60)) s += " category " + g.pick(cats);
      if (g.chance(40)) s += " description " + q(g.text());
      s += "\n";
    }
    std::function<void(int, const std::string&)> space = [&](int depth, const std::string& indent) {
      s += indent + "space " + q(g.name("Step"));
      if (g.chance(40)) s += " area " + g.pick(areas);
      if (g.chance(60)) s += " goal " + q(g.text());
      s += " {\n";
      // Children interleave activities and spaces to exercise flattening.
      for (int i = g.range(0, 4); i > 0; --i) {
        if (depth < 4 && g.chance(25)) {
          space(depth + 1, indent + "  ");
          continue;
        }
        s += indent + "  activity " + q(g.name("Act")) + "\n";
        for (int r = g.range(0, 2); r > 0 && !competencies.empty(); --r)
          s += indent + "    requires " + q(g.pick(competencies)) + " @ " + std::to_string(g.range(1, 5)) + "\n";
        for (int r = g.range(0, 2); r > 0 && !outputs.empty(); --r) {
          std::string target = g.pick(outputs);
          if (g.chance(50)) target += ": " + g.text();
          s += indent + "    produces " + q(target) + "\n";
        }
        if (!roles.empty() && g.chance(40)) s += indent + "    role " + q(g.pick(roles)) + "\n";
        for (int r = g.range(0, 2); r > 0; --r) s += indent + "    tag " + g.pick(tags) + "\n";
      }
      s += indent + "}\n";
    };
    for (int i = g.range(0, 3); i > 0; --i) space(1, "  ");
    s += "}\n\n";
  }

  if (!practices.empty() && g.chance(70)) {
    s += "method " + q(g.name("Method")) + " {\n";
    if (g.chance(50)) s += "  preamble " + q(g.pick(practices)) + "\n";
    for (int i = g.range(1, 3); i > 0; --i) s += "  cycle " + q(g.pick(practices)) + "\n";
    if (g.chance(50)) s += "  concurrent " + q(g.pick(practices)) + "\n";
    s += "}\n";
  }

  std::set<std::string> used_codes;
  for (int i = g.range(0, 2); i > 0; --i) {
    static const std::vector<std::string> codes{"P", "A", "B", "RM"};
    std::string code = g.pick(codes);
    if (!used_codes.insert(code).second) continue;
    s += "togaf_phase " + code + " " + q(g.name("Phase")) + " {\n";
    s += "  objective " + q(g.text()) + "\n";
    std::vector<std::string> outputs;
    for (int o = g.range(0, 2); o > 0; --o) {
      outputs.push_back(g.name("Deliverable"));
      s += "  output " + q(outputs.back()) + " category " + g.pick(cats) + "\n";
    }
    std::function<void(int, const std::string&)> act = [&](int depth, const std::string& indent) {
      s += indent + "activity " + q(g.name("Task"));
      if (depth < 3 && g.chance(20)) {
        s += " {\n";
        for (int k = g.range(1, 3); k > 0; --k) act(depth + 1, indent + "  ");
        s += indent + "}\n";
        return;
      }
      s += "\n";
      if (!outputs.empty() && g.chance(50)) s += indent + "  feeds " + q(g.pick(outputs) + ": " + g.text()) + "\n";
      if (g.chance(30)) s += indent + "  role " + q(g.text()) + "\n";
      s += indent + "  tag " + g.pick(tags) + "\n";
    };
    for (int st = g.range(0, 3); st > 0; --st) {
      s += "  step " + q(g.name("Step"));
      if (g.chance(50)) s += " goal " + q(g.text());
      s += " {\n";
      for (int k = g.range(0, 3); k > 0; --k) act(1, "    ");
      s += "  }\n";
    }
    s += "}\n";
  }
  return s;
}

// -- phase spec generator for mapper properties ------------------------------

inline const std::vector<std::string>& all_tags() {
  static const std::vector<std::string> tags{"acquires_information", "understands_stakeholders",
                                             "processes_requirements", "endorses_requirements",
                                             "builds", "verifies", "leads", "coordinates", "governs"};
  return tags;
}

/// A random phase spec that satisfies the mapper's preconditions with nesting
/// depth at most `max_depth` (steps count as depth 1).
inline TogafPhaseSpec random_phase_spec(unsigned seed, int max_depth = 3) {
  Gen g(seed);
  TogafPhaseSpec spec;
  spec.code = PhaseCode::A;
  spec.id = phase_id(spec.code);
  spec.name = "Generated " + std::to_string(seed);
  spec.objective = g.text(2, 6);
  for (int i = g.range(0, 4); i > 0; --i) {
    OutputSpec o;
    o.name = g.name("Output");
    o.category = kAllCategories[static_cast<std::size_t>(g.range(0, 3))];
    if (g.chance(50)) o.description = g.text();
    spec.outputs.push_back(o);
  }
  std::map<std::string, std::set<std::string>> parts_used;
  std::function<ActivitySpec(int)> make = [&](int depth) {
    ActivitySpec a;
    a.name = g.name("Activity");
    if (depth <= max_depth && g.chance(20)) {
      for (int k = g.range(1, 3); k > 0; --k) a.sub_activities.push_back(make(depth + 1));
      return a;
    }
    std::set<std::string> chosen;
    for (int k = g.range(1, 3); k > 0; --k) chosen.insert(g.pick(all_tags()));
    a.tags.assign(chosen.begin(), chosen.end());
    if (!spec.outputs.empty() && g.chance(60)) {
      const auto& out = g.pick(spec.outputs).name;
      std::string part = "part " + std::to_string(parts_used[out].size() + 1);
      parts_used[out].insert(part);
      a.feeds.push_back(FeedSpec{out, part});
    }
    if (g.chance(25)) a.role = g.chance(50) ? "Architecture Board" : "Business Architect";
    return a;
  };
  for (int i = g.range(0, 4); i > 0; --i) {
    StepSpec st;
    st.name = g.name("Step");
    if (g.chance(70)) st.goal = g.text();
    for (int k = g.range(0, 4); k > 0; --k) st.activities.push_back(make(2));
    spec.steps.push_back(st);
  }
  return spec;
}

}  // namespace essence::fixtures
