#pragma once

// Machine-readable exports: a JSON tree and a Graphviz containment graph.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "essence/diagnostic.hpp"
#include "essence/metamodel.hpp"
#include "essence/progress.hpp"
#include "essence/validator.hpp"

namespace essence::dsl {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json opt(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }
inline Json ref_id(const std::optional<Reference>& r) { return r ? Json(r->target) : Json(nullptr); }

inline Json header(const std::string& id, const std::string& name, ElementKind kind) {
  Json j;
  j["id"] = id;
  j["name"] = name;
  j["kind"] = std::string(to_string(kind));
  return j;
}

inline Json requirements(const std::vector<CompetencyRequirement>& reqs) {
  Json arr = Json::array();
  for (const auto& r : reqs) arr.push_back(Json{{"competency", r.competency.target}, {"level", r.level}});
  return arr;
}

inline Json space_json(const ActivitySpace& s, Area effective, const std::string& practice) {
  Json j = header(s.id, s.name, ElementKind::space);
  j["area"] = std::string(to_string(effective));
  j["parent"] = ref_id(s.parent);
  j["goal"] = opt(s.goal);
  j["practice"] = practice.empty() ? Json(nullptr) : Json(practice);
  return j;
}

inline Json work_product_json(const WorkProduct& w, const std::string& practice) {
  Json j = header(w.id, w.name, ElementKind::work_product);
  j["category"] = std::string(to_string(w.category));
  j["description"] = opt(w.description);
  j["practice"] = practice.empty() ? Json(nullptr) : Json(practice);
  return j;
}

inline Json activity_json(const Activity& a) {
  Json j = header(a.id, a.name, ElementKind::activity);
  j["space"] = a.space.target;
  j["requires"] = requirements(a.required_competencies);
  Json produces = Json::array();
  for (const auto& c : a.produces)
    produces.push_back(Json{{"work_product", c.work_product.target}, {"part", opt(c.part)}, {"name", c.rendered_name()}});
  j["produces"] = produces;
  j["role"] = ref_id(a.responsible_role);
  j["tags"] = a.tags;
  return j;
}

}  // namespace detail

/// JSON tree with top-level arrays `areas`, `alphas`, `competencies`,
/// `spaces`, `work_products`, `roles`, `practices`, `methods`, each in
/// declaration order. Practice-scoped spaces and work products appear in the
/// top-level arrays too; activities are nested in their practice.
inline Json export_tree(const ResolvedModel& model) {
  const ModelDocument& doc = model.document();
  Json areas = Json::array(), alphas = Json::array(), competencies = Json::array(), spaces = Json::array(),
       products = Json::array(), roles = Json::array(), practices = Json::array(), methods = Json::array();

  for (const auto& k : doc.kernels) {
    for (const auto& a : k.areas) {
      Json j = detail::header(a.id, a.name(), ElementKind::area);
      j["color"] = std::string(to_string(a.color));
      areas.push_back(j);
    }
    for (const auto& al : k.alphas) {
      Json j = detail::header(al.id, al.name, ElementKind::alpha);
      j["area"] = std::string(to_string(al.area));
      Json states = Json::array();
      for (const auto& st : al.states) {
        Json items = Json::array();
        for (const auto& item : st.checklist) items.push_back(Json{{"key", to_string(item.key)}, {"text", item.text}});
        states.push_back(Json{{"name", st.name}, {"checklist", items}});
      }
      j["states"] = states;
      alphas.push_back(j);
    }
    for (const auto& c : k.competencies) {
      Json j = detail::header(c.id, c.name, ElementKind::competency);
      j["area"] = std::string(to_string(c.area));
      j["max_level"] = c.max_level;
      j["kernel_builtin"] = c.kernel_builtin;
      competencies.push_back(j);
    }
    for (const auto& s : k.spaces) spaces.push_back(detail::space_json(s, s.area.value_or(Area::endeavor), ""));
    for (const auto& w : k.work_products) products.push_back(detail::work_product_json(w, ""));
  }
  for (const auto& r : doc.roles) {
    Json j = detail::header(r.id, r.name, ElementKind::role);
    j["competencies"] = detail::requirements(r.competencies);
    roles.push_back(j);
  }
  for (const auto& p : doc.practices) {
    Json j = detail::header(p.id, p.name, ElementKind::practice);
    j["area"] = std::string(to_string(p.declared_area));
    j["goals"] = p.goals;
    j["inputs"] = p.inputs;
    Json outputs = Json::array(), space_ids = Json::array(), activities = Json::array();
    for (const auto& w : p.outputs) {
      outputs.push_back(w.id);
      products.push_back(detail::work_product_json(w, p.id));
    }
    for (const auto& s : p.spaces) {
      space_ids.push_back(s.id);
      spaces.push_back(detail::space_json(s, s.area.value_or(p.declared_area), p.id));
    }
    for (const auto& a : p.activities) activities.push_back(detail::activity_json(a));
    j["outputs"] = outputs;
    j["spaces"] = space_ids;
    j["activities"] = activities;
    practices.push_back(j);
  }
  for (const auto& m : doc.methods) {
    Json j = detail::header(m.id, m.name, ElementKind::method);
    j["preamble"] = detail::ref_id(m.preamble);
    Json cycle = Json::array(), concurrent = Json::array();
    for (const auto& c : m.cycle) cycle.push_back(c.target);
    for (const auto& c : m.concurrent) concurrent.push_back(c.target);
    j["cycle"] = cycle;
    j["concurrent"] = concurrent;
    methods.push_back(j);
  }

  Json root;
  root["areas"] = areas;
  root["alphas"] = alphas;
  root["competencies"] = competencies;
  root["spaces"] = spaces;
  root["work_products"] = products;
  root["roles"] = roles;
  root["practices"] = practices;
  root["methods"] = methods;
  return root;
}

inline std::string export_json(const ResolvedModel& model) { return export_tree(model).dump(); }

/// Resolves first; throws `Error` listing dangling references.
inline std::string export_json(const ModelDocument& model) {
  auto r = resolve(model);
  if (!r.ok()) {
    std::string msg = "cannot export unresolved model:";
    for (const auto& d : r.diagnostics) msg += "\n  " + format_report_line(d);
    throw Error(msg);
  }
  return export_json(*r.model);
}

inline Json diagnostics_json(const std::vector<Diagnostic>& diags) {
  Json arr = Json::array();
  for (const auto& d : diags) {
    Json j{{"rule", d.rule}, {"severity", to_string(d.severity)}, {"path", d.path}, {"message", d.message}};
    j["span"] = d.span ? Json{{"file", d.span->file}, {"line", d.span->line_begin}, {"column", d.span->col_begin}}
                       : Json(nullptr);
    arr.push_back(j);
  }
  return arr;
}

inline Json assessments_json(const std::vector<Assessment>& assessments) {
  Json arr = Json::array();
  for (const auto& a : assessments) {
    Json answers = Json::object();
    for (const auto& [key, value] : a.answers) answers[to_string(key)] = value;
    arr.push_back(Json{{"alpha", a.alpha}, {"answers", answers}, {"achieved", detail::opt(a.achieved)}});
  }
  return arr;
}

inline Json trace_json(const std::vector<TraceEntry>& trace) {
  Json arr = Json::array();
  for (const auto& t : trace) arr.push_back(Json{{"iteration", t.iteration}, {"practice", t.practice}});
  return arr;
}

// ---------------------------------------------------------------------------
// Graphviz
// ---------------------------------------------------------------------------

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string_view fill_for(Area a) {
  switch (a) {
    case Area::customer: return "palegreen";
    case Area::solution: return "lightyellow";
    case Area::endeavor: return "lightblue";
  }
  return "white";
}

}  // namespace detail

/// Containment graph: practice -> space -> activity, activity -> work product.
/// Nodes are filled with their area's color.
inline std::string export_dot(const ResolvedModel& model) {
  using detail::dot_quote;
  const ModelDocument& doc = model.document();
  std::string out = "digraph essence {\n  rankdir=LR;\n  node [style=filled];\n";
  auto node = [&](const std::string& id, const std::string& label, std::string_view shape, Area area) {
    out += "  " + dot_quote(id) + " [label=" + dot_quote(label) + ", shape=" + std::string(shape) +
           ", fillcolor=" + std::string(detail::fill_for(area)) + "];\n";
  };
  auto edge = [&](const std::string& from, const std::string& to, std::string_view attrs) {
    out += "  " + dot_quote(from) + " -> " + dot_quote(to);
    if (!attrs.empty()) out += " [" + std::string(attrs) + "]";
    out += ";\n";
  };
  std::map<std::string, Area> competency_area;
  for (const auto& k : doc.kernels)
    for (const auto& c : k.competencies) competency_area[c.id] = c.area;

  for (const auto& p : doc.practices) {
    node(p.id, p.name, "folder", p.declared_area);
    for (const auto& w : p.outputs) node(w.id, w.name, "note", p.declared_area);
    for (const auto& s : p.spaces) {
      node(s.id, s.name, "box", s.area.value_or(p.declared_area));
      edge(s.parent ? s.parent->target : p.id, s.id, "");
    }
    for (const auto& a : p.activities) {
      Area area = p.declared_area;
      if (!a.required_competencies.empty()) {
        auto it = competency_area.find(a.required_competencies.front().competency.target);
        if (it != competency_area.end()) area = it->second;
      }
      node(a.id, a.name, "ellipse", area);
      edge(a.space.target, a.id, "");
      for (const auto& c : a.produces) {
        std::string attrs = "style=dashed";
        if (c.part) attrs += ", label=" + dot_quote(*c.part);
        edge(a.id, c.work_product.target, attrs);
      }
    }
  }
  out += "}\n";
  return out;
}

}  // namespace essence::dsl
