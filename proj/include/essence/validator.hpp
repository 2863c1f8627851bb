#pragma once

// Name resolution and well-formedness rules.
//
// Rule catalog:
//   V001 dangling reference                      error
//   V002 duplicate name within a kind and scope  error
//   V010 practice without goal                   error
//   V011 activity-space nesting depth exceeded   error
//   V012 activity-space nesting cycle            error
//   V013 competency level outside 1..5           error
//   V014 multi-contributor work product lacks distinct part text   error
//   V015 declared practice area not in the area-profile plurality  warning
//   V016 activity attached to no space           error
//   V017 method preamble/concurrent practice also listed in cycle  error

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "essence/diagnostic.hpp"
#include "essence/metamodel.hpp"

namespace essence {

struct ResolveResult;
inline ResolveResult resolve(ModelDocument model);

/// A document whose by-name references all carry targets. Only `resolve`
/// produces one.
class ResolvedModel {
 public:
  const ModelDocument& document() const { return doc_; }
  operator const ModelDocument&() const { return doc_; }

 private:
  explicit ResolvedModel(ModelDocument doc) : doc_(std::move(doc)) {}
  friend ResolveResult resolve(ModelDocument model);
  ModelDocument doc_;
};

struct ResolveResult {
  std::optional<ResolvedModel> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

struct WellformednessConfig {
  int max_nesting_depth = 3;
};

struct AreaProfile {
  std::array<int, 3> counts{0, 0, 0};
  /// Areas with the maximal count, in enumeration order; empty when nothing
  /// was counted.
  std::vector<Area> plurality;

  int count(Area a) const { return counts[static_cast<std::size_t>(a)]; }
  bool in_plurality(Area a) const {
    return std::find(plurality.begin(), plurality.end(), a) != plurality.end();
  }
};

/// Orders diagnostics by element declaration order, then rule id.
inline void sort_diagnostics(const ModelDocument& model, std::vector<Diagnostic>& diags) {
  auto order = declaration_order(model);
  auto pos = [&](const std::string& path) {
    auto it = order.find(path);
    return it == order.end() ? order.size() : it->second;
  };
  std::stable_sort(diags.begin(), diags.end(), [&](const Diagnostic& a, const Diagnostic& b) {
    auto pa = pos(a.path), pb = pos(b.path);
    if (pa != pb) return pa < pb;
    return a.rule < b.rule;
  });
}

namespace detail {

class Resolver {
 public:
  explicit Resolver(ModelDocument& doc) : doc_(doc) {}

  std::vector<Diagnostic> run() {
    index();
    for (auto& k : doc_.kernels) resolve_kernel(k);
    for (auto& r : doc_.roles)
      for (auto& c : r.competencies) bind(c.competency, competencies_, "competency", r.id);
    for (auto& p : doc_.phases) check_phase(p);
    for (auto& p : doc_.practices) resolve_practice(p);
    for (auto& m : doc_.methods) {
      if (m.preamble) bind(*m.preamble, practices_, "practice", m.id);
      for (auto& c : m.cycle) bind(c, practices_, "practice", m.id);
      for (auto& c : m.concurrent) bind(c, practices_, "practice", m.id);
    }
    sort_diagnostics(doc_, diags_);
    return std::move(diags_);
  }

 private:
  using NameIndex = std::map<std::string, std::string>;

  void report(std::string rule, const std::string& path, std::string message) {
    diags_.push_back(Diagnostic{std::move(rule), Severity::error, path, std::move(message), doc_.span_of(path)});
  }

  /// Adds `name -> id` to `index`, reporting V002 on a repeated name.
  void add_name(NameIndex& index, const std::string& kind, const std::string& name, const std::string& id) {
    auto [it, inserted] = index.emplace(name, id);
    if (!inserted) report("V002", id, "duplicate " + kind + " name '" + name + "' (also " + it->second + ")");
  }

  void index() {
    for (const auto& k : doc_.kernels) {
      for (const auto& c : k.competencies) add_name(competencies_, "competency", c.name, c.id);
      for (const auto& s : k.spaces) add_name(kernel_spaces_, "activity space", s.name, s.id);
      for (const auto& w : k.work_products) add_name(kernel_products_, "work product", w.name, w.id);
      for (const auto& a : k.alphas) {
        add_name(alphas_, "alpha", a.name, a.id);
        NameIndex states;
        for (const auto& st : a.states) {
          add_name(states, "alpha state", st.name, a.id);
          NameIndex items;
          for (const auto& item : st.checklist) add_name(items, "checklist item", item.text, a.id);
        }
      }
    }
    for (const auto& r : doc_.roles) add_name(roles_, "role", r.name, r.id);
    for (const auto& p : doc_.practices) add_name(practices_, "practice", p.name, p.id);
    NameIndex methods;
    for (const auto& m : doc_.methods) add_name(methods, "method", m.name, m.id);
  }

  void bind(Reference& ref, const NameIndex& index, const std::string& kind, const std::string& owner) {
    if (ref.name.empty() && ref.resolved()) return;
    auto it = index.find(ref.name);
    if (it == index.end()) {
      ref.target.clear();
      report("V001", owner, "dangling reference to " + kind + " '" + ref.name + "'");
      return;
    }
    ref.target = it->second;
  }

  void resolve_kernel(Kernel& k) {
    for (auto& s : k.spaces)
      if (s.parent) bind(*s.parent, kernel_spaces_, "activity space", s.id);
  }

  void check_phase(const TogafPhaseSpec& p) {
    NameIndex outputs;
    for (const auto& o : p.outputs) add_name(outputs, "output", o.name, p.id);
    NameIndex steps;
    for (const auto& s : p.steps) {
      add_name(steps, "step", s.name, p.id);
      for (const auto& a : s.activities) check_phase_activity(p, outputs, a);
    }
  }

  void check_phase_activity(const TogafPhaseSpec& p, const NameIndex& outputs, const ActivitySpec& a) {
    for (const auto& f : a.feeds)
      if (!outputs.count(f.output))
        report("V001", p.id, "activity '" + a.name + "' feeds undeclared output '" + f.output + "'");
    if (a.role && !roles_.count(*a.role))
      report("V001", p.id, "activity '" + a.name + "' names undeclared role '" + *a.role + "'");
    for (const auto& sub : a.sub_activities) check_phase_activity(p, outputs, sub);
  }

  void resolve_practice(Practice& p) {
    NameIndex outputs;
    for (const auto& w : p.outputs) add_name(outputs, "work product", w.name, w.id);

    std::set<std::string> space_ids;
    for (const auto& s : p.spaces) space_ids.insert(s.id);
    std::map<std::string, std::string> space_by_name;  // first occurrence wins
    for (const auto& s : p.spaces) space_by_name.emplace(s.name, s.id);

    // sibling-name uniqueness per parent
    std::map<std::string, NameIndex> siblings;
    for (auto& s : p.spaces) {
      if (s.parent) bind_structural(*s.parent, space_ids, space_by_name, s.id);
      add_name(siblings[s.parent ? s.parent->target : std::string()], "activity space", s.name, s.id);
    }
    std::map<std::string, NameIndex> activities_by_space;
    for (auto& a : p.activities) {
      if (!a.space.name.empty() || a.space.resolved()) bind_structural(a.space, space_ids, space_by_name, a.id);
      add_name(activities_by_space[a.space.target], "activity", a.name, a.id);
      for (auto& req : a.required_competencies) bind(req.competency, competencies_, "competency", a.id);
      for (auto& c : a.produces) {
        auto it = outputs.find(c.work_product.name);
        if (it != outputs.end()) c.work_product.target = it->second;
        else bind(c.work_product, kernel_products_, "work product", a.id);
      }
      if (a.responsible_role) bind(*a.responsible_role, roles_, "role", a.id);
    }
  }

  /// Structural references are pre-filled by the builder; fall back to name.
  void bind_structural(Reference& ref, const std::set<std::string>& ids,
                       const std::map<std::string, std::string>& by_name, const std::string& owner) {
    if (ref.resolved() && ids.count(ref.target)) return;
    auto it = by_name.find(ref.name);
    if (it == by_name.end()) {
      ref.target.clear();
      report("V001", owner, "dangling reference to activity space '" + ref.name + "'");
      return;
    }
    ref.target = it->second;
  }

  ModelDocument& doc_;
  std::vector<Diagnostic> diags_;
  NameIndex competencies_, kernel_spaces_, kernel_products_, alphas_, roles_, practices_;
};

}  // namespace detail

/// Binds every by-name reference to an element id (case-sensitive, document
/// scope). Fails with V001/V002 diagnostics.
inline ResolveResult resolve(ModelDocument model) {
  ResolveResult result;
  result.diagnostics = detail::Resolver(model).run();
  if (!has_errors(result.diagnostics)) result.model = ResolvedModel(std::move(model));
  return result;
}

/// Counts top-level spaces per area plus competency requirements per
/// competency area. `competency_area` maps a requirement to its area.
inline AreaProfile compute_area_profile(const Practice& practice,
                                        const std::function<std::optional<Area>(const Reference&)>& competency_area) {
  AreaProfile profile;
  for (const auto& s : practice.spaces)
    if (!s.parent) ++profile.counts[static_cast<std::size_t>(s.area.value_or(practice.declared_area))];
  for (const auto& a : practice.activities)
    for (const auto& req : a.required_competencies)
      if (auto area = competency_area(req.competency)) ++profile.counts[static_cast<std::size_t>(*area)];
  int best = *std::max_element(profile.counts.begin(), profile.counts.end());
  if (best > 0)
    for (Area a : kAllAreas)
      if (profile.count(a) == best) profile.plurality.push_back(a);
  return profile;
}

inline AreaProfile compute_area_profile(const ResolvedModel& model, const Practice& practice) {
  return compute_area_profile(practice, [&](const Reference& ref) -> std::optional<Area> {
    if (const auto* c = lookup_as<Competency>(model.document(), ref.target)) return c->area;
    return std::nullopt;
  });
}

namespace detail {

inline void check_nesting(const ModelDocument& doc, const std::vector<ActivitySpace>& spaces,
                          const WellformednessConfig& cfg, std::vector<Diagnostic>& out) {
  std::map<std::string, const ActivitySpace*> by_id;
  for (const auto& s : spaces) by_id.emplace(s.id, &s);
  for (const auto& s : spaces) {
    std::set<std::string> seen{s.id};
    std::vector<std::string> chain{s.name};
    const ActivitySpace* cur = &s;
    bool cycle = false;
    while (cur->parent) {
      auto it = by_id.find(cur->parent->target);
      if (it == by_id.end()) break;
      cur = it->second;
      if (!seen.insert(cur->id).second) {
        cycle = true;
        break;
      }
      chain.push_back(cur->name);
    }
    if (cycle) {
      out.push_back(Diagnostic{"V012", Severity::error, s.id,
                               "activity space '" + s.name + "' is part of a nesting cycle", doc.span_of(s.id)});
      continue;
    }
    int depth = static_cast<int>(chain.size());
    if (depth > cfg.max_nesting_depth) {
      std::string path;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) path += (path.empty() ? "" : " > ") + *it;
      out.push_back(Diagnostic{"V011", Severity::error, s.id,
                               "activity space nested at depth " + std::to_string(depth) + " exceeds maximum " +
                                   std::to_string(cfg.max_nesting_depth) + " (" + path + ")",
                               doc.span_of(s.id)});
    }
  }
}

inline void check_level(const ModelDocument& doc, const std::string& path, const std::string& what, int level,
                        std::vector<Diagnostic>& out) {
  if (!is_valid_level(level))
    out.push_back(Diagnostic{"V013", Severity::error, path,
                             what + " level " + std::to_string(level) + " outside 1..5", doc.span_of(path)});
}

}  // namespace detail

/// All well-formedness violations of a resolved model.
inline std::vector<Diagnostic> check_wellformedness(const ResolvedModel& model, WellformednessConfig cfg = {}) {
  const ModelDocument& doc = model.document();
  std::vector<Diagnostic> out;
  auto add = [&](const char* rule, Severity sev, const std::string& path, std::string msg) {
    out.push_back(Diagnostic{rule, sev, path, std::move(msg), doc.span_of(path)});
  };

  for (const auto& k : doc.kernels) {
    detail::check_nesting(doc, k.spaces, cfg, out);
    for (const auto& c : k.competencies)
      if (!is_valid_level(c.max_level))
        add("V013", Severity::error, c.id, "competency max level " + std::to_string(c.max_level) + " outside 1..5");
  }
  for (const auto& r : doc.roles)
    for (const auto& c : r.competencies)
      detail::check_level(doc, r.id, "competency '" + c.competency.name + "'", c.level, out);

  for (const auto& p : doc.practices) {
    if (p.goals.empty()) add("V010", Severity::error, p.id, "practice '" + p.name + "' has no goal");
    detail::check_nesting(doc, p.spaces, cfg, out);

    std::map<std::string, std::vector<std::pair<const Activity*, const WorkProductContribution*>>> contributions;
    for (const auto& a : p.activities) {
      if (!a.space.resolved())
        add("V016", Severity::error, a.id, "activity '" + a.name + "' is attached to no activity space");
      for (const auto& req : a.required_competencies)
        detail::check_level(doc, a.id, "required competency '" + req.competency.name + "'", req.level, out);
      for (const auto& c : a.produces) contributions[c.work_product.target].emplace_back(&a, &c);
    }
    for (const auto& [wp, list] : contributions) {
      if (list.size() < 2) continue;
      std::set<std::string> rendered;
      for (const auto& [act, c] : list) {
        if (!c->part || c->part->empty())
          add("V014", Severity::error, act->id,
              "work product '" + c->work_product.name + "' has " + std::to_string(list.size()) +
                  " contributors; this contribution needs part text ('<name>: <part>')");
        else if (!rendered.insert(c->rendered_name()).second)
          add("V014", Severity::error, act->id, "contribution '" + c->rendered_name() + "' is not distinct");
      }
    }

    AreaProfile profile = compute_area_profile(model, p);
    if (!profile.plurality.empty() && !profile.in_plurality(p.declared_area)) {
      std::string plural;
      for (Area a : profile.plurality) plural += (plural.empty() ? "" : ", ") + std::string(to_string(a));
      add("V015", Severity::warning, p.id,
          "declared area " + std::string(to_string(p.declared_area)) + " is not in the element plurality {" + plural +
              "}");
    }
  }

  for (const auto& m : doc.methods) {
    std::set<std::string> cycle;
    for (const auto& c : m.cycle) cycle.insert(c.target);
    if (m.preamble && cycle.count(m.preamble->target))
      add("V017", Severity::error, m.id, "preamble practice '" + m.preamble->name + "' is also in the cycle");
    for (const auto& c : m.concurrent)
      if (cycle.count(c.target))
        add("V017", Severity::error, m.id, "concurrent practice '" + c.name + "' is also in the cycle");
  }

  sort_diagnostics(doc, out);
  return out;
}

}  // namespace essence
