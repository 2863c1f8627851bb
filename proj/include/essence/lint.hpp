#pragma once

// Quality findings about a resolved method model. All rules are warnings.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "essence/diagnostic.hpp"
#include "essence/metamodel.hpp"
#include "essence/validator.hpp"

namespace essence {

struct LintRule {
  std::string_view id;
  std::string_view name;
  Severity severity;
  std::string_view description;
};

inline constexpr std::array<LintRule, 4> kLintRules{{
    {"L001", "unfed-deliverable", Severity::warning,
     "A practice output that no activity of the practice produces; nothing says which activity feeds it."},
    {"L002", "multiply-defined-deliverable", Severity::warning,
     "The same work product is declared by several practices with a different category or description."},
    {"L003", "unassigned-role", Severity::warning,
     "A role is declared but no activity names it as responsible."},
    {"L004", "opaque-step", Severity::warning,
     "An activity space with neither goal text nor any activity or nested space."},
}};

inline std::set<std::string> all_lint_ids() {
  std::set<std::string> ids;
  for (const auto& r : kLintRules) ids.emplace(r.id);
  return ids;
}

/// Collapses whitespace runs to one space and trims; case is preserved.
inline std::string normalize_description(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

namespace detail {

inline void lint_unfed(const ModelDocument& doc, std::vector<Diagnostic>& out) {
  for (const auto& p : doc.practices) {
    std::set<std::string> produced;
    for (const auto& a : p.activities)
      for (const auto& c : a.produces) produced.insert(c.work_product.target);
    for (const auto& w : p.outputs)
      if (!produced.count(w.id))
        out.push_back(Diagnostic{"L001", Severity::warning, w.id,
                                 "output '" + w.name + "' of practice '" + p.name + "' is fed by no activity",
                                 doc.span_of(w.id)});
  }
}

inline void lint_multiply_defined(const ModelDocument& doc, std::vector<Diagnostic>& out) {
  struct Decl {
    const Practice* practice;
    const WorkProduct* product;
  };
  std::map<std::string, std::vector<Decl>> by_name;
  for (const auto& p : doc.practices)
    for (const auto& w : p.outputs) by_name[w.name].push_back({&p, &w});
  for (const auto& [name, decls] : by_name) {
    std::set<const Practice*> practices;
    std::set<std::pair<WorkProductCategory, std::string>> signatures;
    for (const auto& d : decls) {
      practices.insert(d.practice);
      signatures.emplace(d.product->category, normalize_description(d.product->description.value_or("")));
    }
    if (practices.size() < 2 || signatures.size() < 2) continue;
    for (const auto& d : decls) {
      std::string others;
      for (const auto& o : decls)
        if (o.practice != d.practice) others += (others.empty() ? "" : ", ") + o.practice->name;
      out.push_back(Diagnostic{"L002", Severity::warning, d.product->id,
                               "work product '" + name + "' (" + std::string(to_string(d.product->category)) +
                                   ") is defined differently in " + others,
                               doc.span_of(d.product->id)});
    }
  }
}

inline void lint_unassigned_roles(const ModelDocument& doc, std::vector<Diagnostic>& out) {
  std::set<std::string> referenced;
  for (const auto& p : doc.practices)
    for (const auto& a : p.activities)
      if (a.responsible_role) referenced.insert(a.responsible_role->target);
  for (const auto& r : doc.roles)
    if (!referenced.count(r.id))
      out.push_back(Diagnostic{"L003", Severity::warning, r.id,
                               "role '" + r.name + "' is not responsible for any activity", doc.span_of(r.id)});
}

inline void lint_opaque_steps(const ModelDocument& doc, std::vector<Diagnostic>& out) {
  for (const auto& p : doc.practices) {
    for (const auto& s : p.spaces) {
      if (s.goal && !s.goal->empty()) continue;
      bool has_content =
          std::any_of(p.activities.begin(), p.activities.end(), [&](const Activity& a) { return a.space.target == s.id; }) ||
          std::any_of(p.spaces.begin(), p.spaces.end(),
                      [&](const ActivitySpace& c) { return c.parent && c.parent->target == s.id; });
      if (!has_content)
        out.push_back(Diagnostic{"L004", Severity::warning, s.id,
                                 "activity space '" + s.name + "' states no goal and contains no activities",
                                 doc.span_of(s.id)});
    }
  }
}

}  // namespace detail

/// Runs the enabled rules; throws `Error` naming the valid ids when `enabled`
/// contains an unknown one.
inline std::vector<Diagnostic> run_lints(const ResolvedModel& model, const std::set<std::string>& enabled) {
  auto valid = all_lint_ids();
  for (const auto& id : enabled) {
    if (!valid.count(id)) {
      std::string list;
      for (const auto& v : valid) list += (list.empty() ? "" : ", ") + v;
      throw Error("unknown lint rule '" + id + "' (valid: " + list + ")");
    }
  }
  const ModelDocument& doc = model.document();
  std::vector<Diagnostic> out;
  if (enabled.count("L001")) detail::lint_unfed(doc, out);
  if (enabled.count("L002")) detail::lint_multiply_defined(doc, out);
  if (enabled.count("L003")) detail::lint_unassigned_roles(doc, out);
  if (enabled.count("L004")) detail::lint_opaque_steps(doc, out);
  sort_diagnostics(doc, out);
  return out;
}

inline std::vector<Diagnostic> run_lints(const ResolvedModel& model) { return run_lints(model, all_lint_ids()); }

}  // namespace essence
