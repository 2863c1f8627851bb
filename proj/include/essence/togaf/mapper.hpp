#pragma once

// TOGAF ADM phase spec -> Essence practice.
//
//   phase                      -> practice (goal = phase objective)
//   step                       -> top-level activity space
//   activity                   -> activity in its step's space
//   activity with sub-steps    -> nested activity space holding the sub-activities
//   output                     -> work product; each feeding activity contributes,
//                                 as "<output>: <part>" when there are several feeders
//   activity tags              -> required competencies (level 3 unless the
//                                 activity's role declares a level)

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "essence/diagnostic.hpp"
#include "essence/metamodel.hpp"
#include "essence/validator.hpp"

namespace essence::togaf {

class MappingError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kStakeholderRepresentation = "Stakeholder Representation";
inline constexpr std::string_view kAnalysis = "Analysis";
inline constexpr std::string_view kDevelopment = "Development";
inline constexpr std::string_view kTesting = "Testing";
inline constexpr std::string_view kLeadership = "Leadership";
inline constexpr std::string_view kManagement = "Management";
inline constexpr std::string_view kGovernance = "Governance";

/// Competency order used for mapped requirements.
inline constexpr std::array<std::string_view, 7> kMappedCompetencies{
    kStakeholderRepresentation, kAnalysis, kDevelopment, kTesting, kLeadership, kManagement, kGovernance};

struct TagRule {
  std::string_view tag;
  std::string_view competency;
};

inline constexpr std::array<TagRule, 9> kTagRules{{
    {"acquires_information", kStakeholderRepresentation},
    {"understands_stakeholders", kStakeholderRepresentation},
    {"processes_requirements", kStakeholderRepresentation},
    {"endorses_requirements", kAnalysis},
    {"builds", kDevelopment},
    {"verifies", kTesting},
    {"leads", kLeadership},
    {"coordinates", kManagement},
    {"governs", kGovernance},
}};

inline bool is_known_tag(std::string_view tag) {
  return std::any_of(kTagRules.begin(), kTagRules.end(), [&](const TagRule& r) { return r.tag == tag; });
}

/// Competencies implied by a tag set, in `kMappedCompetencies` order.
/// Endorsement is reserved to Analysis: with `endorses_requirements` present,
/// Stakeholder Representation is never assigned.
inline std::vector<std::string_view> competencies_for_tags(const std::vector<std::string>& tags) {
  std::set<std::string_view> wanted;
  for (const auto& t : tags)
    for (const auto& r : kTagRules)
      if (r.tag == t) wanted.insert(r.competency);
  if (wanted.count(kAnalysis)) wanted.erase(kStakeholderRepresentation);
  std::vector<std::string_view> out;
  for (auto c : kMappedCompetencies)
    if (wanted.count(c)) out.push_back(c);
  return out;
}

/// `Preliminary`, `Phase A` .. `Phase H`, `Requirements Management`.
inline std::string practice_name_for(PhaseCode code) {
  switch (code) {
    case PhaseCode::P: return "Preliminary";
    case PhaseCode::RM: return "Requirements Management";
    default: return "Phase " + std::string(to_string(code));
  }
}

inline std::string practice_id_for(PhaseCode code) { return make_id(ElementKind::practice, practice_name_for(code)); }

/// Plurality area with ties broken toward Endeavor, then enumeration order.
/// All-zero counts give Endeavor.
inline Area choose_area(const std::array<int, 3>& counts) {
  int best = *std::max_element(counts.begin(), counts.end());
  if (counts[static_cast<std::size_t>(Area::endeavor)] == best) return Area::endeavor;
  for (Area a : kAllAreas)
    if (counts[static_cast<std::size_t>(a)] == best) return a;
  return Area::endeavor;
}

struct MapOptions {
  int max_nesting_depth = 3;
  int default_level = 3;
};

namespace detail {

class PhaseMapper {
 public:
  PhaseMapper(const TogafPhaseSpec& spec, const ModelDocument& kernel, MapOptions opts)
      : spec_(spec), kernel_(kernel), opts_(opts) {}

  Practice run() {
    for (auto name : kMappedCompetencies) {
      const Competency* c = find_competency(name);
      if (!c) throw MappingError("kernel lacks competency '" + std::string(name) + "'");
      competency_area_[std::string(name)] = c->area;
    }

    practice_.name = practice_name_for(spec_.code);
    practice_.id = make_id(ElementKind::practice, practice_.name);
    practice_.goals.push_back(spec_.objective);

    std::set<std::string> output_names;
    for (const auto& o : spec_.outputs) {
      if (!output_names.insert(o.name).second)
        throw MappingError("phase " + std::string(to_string(spec_.code)) + " declares output '" + o.name + "' twice");
      practice_.outputs.push_back(
          WorkProduct{child_id(practice_.id, ElementKind::work_product, o.name), o.name, o.category, o.description});
    }
    count_feeders();

    std::vector<Node> roots;
    for (const auto& step : spec_.steps) {
      Node n;
      n.space.name = step.name;
      n.space.goal = step.goal;
      n.space.id = unique(child_id(practice_.id, ElementKind::space, step.name));
      for (const auto& a : step.activities) add_activity(n, a, {step.name});
      n.space.area = choose_area(n.counts);
      roots.push_back(std::move(n));
    }
    for (auto& r : roots) flatten_spaces(r);
    for (auto& r : roots) flatten_activities(r);

    AreaProfile profile = compute_area_profile(practice_, [&](const Reference& ref) -> std::optional<Area> {
      auto it = competency_area_.find(ref.name);
      if (it == competency_area_.end()) return std::nullopt;
      return it->second;
    });
    practice_.declared_area = choose_area(profile.counts);
    return std::move(practice_);
  }

 private:
  struct Node {
    ActivitySpace space;
    std::vector<Activity> activities;
    std::vector<Node> children;
    std::array<int, 3> counts{0, 0, 0};
  };

  const Competency* find_competency(std::string_view name) const {
    for (const auto& k : kernel_.kernels)
      for (const auto& c : k.competencies)
        if (c.name == name) return &c;
    return nullptr;
  }

  const Role* find_role(const std::string& name) const {
    for (const auto& r : kernel_.roles)
      if (r.name == name) return &r;
    return nullptr;
  }

  std::string unique(const std::string& base) {
    std::string id = base;
    for (int n = 2; used_ids_.count(id); ++n) id = base + "#" + std::to_string(n);
    used_ids_.insert(id);
    return id;
  }

  static std::string chain_text(const std::vector<std::string>& chain) {
    std::string s;
    for (const auto& c : chain) s += (s.empty() ? "" : " > ") + c;
    return s;
  }

  void count_feeders() {
    std::vector<const ActivitySpec*> stack;
    for (const auto& s : spec_.steps)
      for (const auto& a : s.activities) stack.push_back(&a);
    while (!stack.empty()) {
      const ActivitySpec* a = stack.back();
      stack.pop_back();
      for (const auto& f : a->feeds) ++feeders_[f.output];
      for (const auto& sub : a->sub_activities) stack.push_back(&sub);
    }
  }

  void add_activity(Node& parent, const ActivitySpec& spec, std::vector<std::string> chain) {
    chain.push_back(spec.name);
    if (!spec.sub_activities.empty()) {
      int depth = static_cast<int>(chain.size());
      if (depth > opts_.max_nesting_depth)
        throw MappingError("nesting depth " + std::to_string(depth) + " exceeds maximum " +
                           std::to_string(opts_.max_nesting_depth) + ": " + chain_text(chain));
      if (!spec.tags.empty() || !spec.feeds.empty() || spec.role)
        throw MappingError("decomposed activity carries tags, feeds or role: " + chain_text(chain));
      Node child;
      child.space.name = spec.name;
      child.space.parent = Reference{parent.space.name, parent.space.id};
      child.space.id = unique(child_id(parent.space.id, ElementKind::space, spec.name));
      for (const auto& sub : spec.sub_activities) add_activity(child, sub, chain);
      child.space.area = choose_area(child.counts);
      for (std::size_t i = 0; i < 3; ++i) parent.counts[i] += child.counts[i];
      parent.children.push_back(std::move(child));
      return;
    }

    if (spec.tags.empty()) throw MappingError("activity has neither tags nor sub-activities: " + chain_text(chain));
    for (const auto& t : spec.tags)
      if (!is_known_tag(t)) throw MappingError("unknown activity tag '" + t + "': " + chain_text(chain));

    Activity a;
    a.name = spec.name;
    a.space = Reference{parent.space.name, parent.space.id};
    a.id = unique(child_id(parent.space.id, ElementKind::activity, spec.name));
    a.tags = spec.tags;

    const Role* role = nullptr;
    if (spec.role) {
      role = find_role(*spec.role);
      if (!role) throw MappingError("activity names undeclared role '" + *spec.role + "': " + chain_text(chain));
      a.responsible_role = Reference{*spec.role, {}};
    }
    for (auto name : competencies_for_tags(spec.tags)) {
      int level = opts_.default_level;
      if (role)
        for (const auto& rc : role->competencies)
          if (rc.competency.name == name) level = rc.level;
      a.required_competencies.push_back(CompetencyRequirement{Reference{std::string(name), {}}, level});
      ++parent.counts[static_cast<std::size_t>(competency_area_.at(std::string(name)))];
    }

    for (const auto& f : spec.feeds) {
      bool declared = std::any_of(spec_.outputs.begin(), spec_.outputs.end(),
                                  [&](const OutputSpec& o) { return o.name == f.output; });
      if (!declared) throw MappingError("feeds undeclared output '" + f.output + "': " + chain_text(chain));
      if (feeders_[f.output] >= 2) {
        if (!f.part || f.part->empty())
          throw MappingError("output '" + f.output + "' has " + std::to_string(feeders_[f.output]) +
                             " feeders; part text is required: " + chain_text(chain));
        if (!parts_[f.output].insert(*f.part).second)
          throw MappingError("output '" + f.output + "' receives part '" + *f.part + "' twice: " + chain_text(chain));
      }
      a.produces.push_back(WorkProductContribution{Reference{f.output, {}}, f.part});
    }
    parent.activities.push_back(std::move(a));
  }

  void flatten_spaces(Node& n) {
    practice_.spaces.push_back(n.space);
    for (auto& c : n.children) flatten_spaces(c);
  }
  void flatten_activities(Node& n) {
    for (auto& a : n.activities) practice_.activities.push_back(std::move(a));
    for (auto& c : n.children) flatten_activities(c);
  }

  const TogafPhaseSpec& spec_;
  const ModelDocument& kernel_;
  MapOptions opts_;
  Practice practice_;
  std::set<std::string> used_ids_;
  std::map<std::string, int> feeders_;
  std::map<std::string, std::set<std::string>> parts_;
  std::map<std::string, Area> competency_area_;
};

}  // namespace detail

/// Maps one phase spec onto a practice using the kernel's competencies and
/// the document's roles. Throws `MappingError`.
inline Practice map_phase(const TogafPhaseSpec& spec, const ModelDocument& kernel, MapOptions opts = {}) {
  return detail::PhaseMapper(spec, kernel, opts).run();
}

inline Practice map_phase(const TogafPhaseSpec& spec, const ResolvedModel& kernel, MapOptions opts = {}) {
  return map_phase(spec, kernel.document(), opts);
}

/// Phase whose mapped practice has this id, if any.
inline const TogafPhaseSpec* phase_for_practice(const ModelDocument& doc, std::string_view practice_id) {
  for (const auto& p : doc.phases)
    if (practice_id_for(p.code) == practice_id) return &p;
  return nullptr;
}

}  // namespace essence::togaf
