#pragma once

// Essence kernel metamodel: element types, identity scheme and lookup.
//
// Elements are plain values. Cross references are by name (`Reference::name`)
// until the validator fills `Reference::target` with the element id.
// Containment inside practices is structural; those references are filled by
// whoever builds the practice (parser or mapper).

#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <string_view>
#include <variant>
#include <vector>

#include "essence/diagnostic.hpp"

namespace essence {

// ---------------------------------------------------------------------------
// Fixed enumerations
// ---------------------------------------------------------------------------

enum class Area { customer, solution, endeavor };
enum class Color { green, yellow, blue };
enum class WorkProductCategory { catalog, matrix, diagram, other };

inline constexpr std::array<Area, 3> kAllAreas{Area::customer, Area::solution, Area::endeavor};
inline constexpr std::array<WorkProductCategory, 4> kAllCategories{
    WorkProductCategory::catalog, WorkProductCategory::matrix, WorkProductCategory::diagram,
    WorkProductCategory::other};

inline constexpr int kMinCompetencyLevel = 1;
inline constexpr int kMaxCompetencyLevel = 5;

inline std::string_view to_string(Area a) {
  switch (a) {
    case Area::customer: return "Customer";
    case Area::solution: return "Solution";
    case Area::endeavor: return "Endeavor";
  }
  return "?";
}

inline std::string_view to_string(Color c) {
  switch (c) {
    case Color::green: return "green";
    case Color::yellow: return "yellow";
    case Color::blue: return "blue";
  }
  return "?";
}

inline std::string_view to_string(WorkProductCategory c) {
  switch (c) {
    case WorkProductCategory::catalog: return "catalog";
    case WorkProductCategory::matrix: return "matrix";
    case WorkProductCategory::diagram: return "diagram";
    case WorkProductCategory::other: return "other";
  }
  return "?";
}

/// The name->color pairing is fixed.
inline constexpr Color area_color(Area a) {
  switch (a) {
    case Area::customer: return Color::green;
    case Area::solution: return Color::yellow;
    case Area::endeavor: return Color::blue;
  }
  return Color::blue;
}

inline std::optional<Area> parse_area(std::string_view s) {
  for (Area a : kAllAreas)
    if (to_string(a) == s) return a;
  return std::nullopt;
}

inline std::optional<Color> parse_color(std::string_view s) {
  for (Color c : {Color::green, Color::yellow, Color::blue})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline std::optional<WorkProductCategory> parse_category(std::string_view s) {
  for (auto c : kAllCategories)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline constexpr bool is_valid_level(int level) {
  return level >= kMinCompetencyLevel && level <= kMaxCompetencyLevel;
}

// ---------------------------------------------------------------------------
// Identity
// ---------------------------------------------------------------------------

enum class ElementKind {
  kernel,
  area,
  alpha,
  competency,
  space,
  activity,
  work_product,
  role,
  practice,
  method,
  phase,
};

inline std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::kernel: return "kernel";
    case ElementKind::area: return "area";
    case ElementKind::alpha: return "alpha";
    case ElementKind::competency: return "competency";
    case ElementKind::space: return "space";
    case ElementKind::activity: return "activity";
    case ElementKind::work_product: return "workproduct";
    case ElementKind::role: return "role";
    case ElementKind::practice: return "practice";
    case ElementKind::method: return "method";
    case ElementKind::phase: return "phase";
  }
  return "?";
}

/// Lowercase ASCII letters and digits; every other run of ASCII characters
/// collapses to one underscore. Non-ASCII bytes pass through unchanged.
inline std::string slug(std::string_view name) {
  std::string out;
  bool pending_sep = false;
  for (unsigned char ch : name) {
    if (std::isalnum(ch) || ch >= 0x80) {
      if (pending_sep && !out.empty()) out.push_back('_');
      pending_sep = false;
      out.push_back(ch < 0x80 ? static_cast<char>(std::tolower(ch)) : static_cast<char>(ch));
    } else {
      pending_sep = true;
    }
  }
  return out;
}

/// `kind.slug`, e.g. `competency.governance`.
inline std::string make_id(ElementKind kind, std::string_view name) {
  return std::string(to_string(kind)) + "." + slug(name);
}

/// Ids of contained elements are slash-joined paths:
/// `practice.phase_a/space.define_scope/activity.identify_breadth`.
inline std::string child_id(std::string_view parent, ElementKind kind, std::string_view name) {
  return std::string(parent) + "/" + make_id(kind, name);
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// A by-name cross reference; `target` holds the element id once resolved.
struct Reference {
  std::string name;
  std::string target;

  bool resolved() const { return !target.empty(); }
  bool operator==(const Reference&) const = default;
};

struct AreaDecl {
  std::string id;
  Area area = Area::customer;
  Color color = Color::green;

  std::string name() const { return std::string(to_string(area)); }
  bool operator==(const AreaDecl&) const = default;
};

/// Position-derived key of a checklist item (0-based state and item index).
struct ChecklistKey {
  std::size_t state = 0;
  std::size_t item = 0;

  auto operator<=>(const ChecklistKey&) const = default;
};

/// 1-based `state.item` form used in exports and on the command line.
inline std::string to_string(const ChecklistKey& k) {
  return std::to_string(k.state + 1) + "." + std::to_string(k.item + 1);
}

struct ChecklistItem {
  std::string text;
  ChecklistKey key;

  bool operator==(const ChecklistItem&) const = default;
};

struct AlphaState {
  std::string name;
  std::vector<ChecklistItem> checklist;

  bool operator==(const AlphaState&) const = default;
};

struct Alpha {
  std::string id;
  std::string name;
  Area area = Area::customer;
  std::vector<AlphaState> states;

  bool operator==(const Alpha&) const = default;
};

/// Reassigns checklist keys from item positions.
inline void renumber_checklist(Alpha& alpha) {
  for (std::size_t s = 0; s < alpha.states.size(); ++s)
    for (std::size_t i = 0; i < alpha.states[s].checklist.size(); ++i)
      alpha.states[s].checklist[i].key = ChecklistKey{s, i};
}

/// The six competencies of the standard kernel. Anything else (e.g. Governance)
/// is an extension.
inline constexpr std::array<std::string_view, 6> kKernelCompetencyNames{
    "Stakeholder Representation", "Analysis", "Development", "Testing", "Leadership", "Management"};

inline bool is_kernel_builtin_competency(std::string_view name) {
  for (auto n : kKernelCompetencyNames)
    if (n == name) return true;
  return false;
}

struct Competency {
  std::string id;
  std::string name;
  Area area = Area::customer;
  int max_level = kMaxCompetencyLevel;
  bool kernel_builtin = false;

  bool operator==(const Competency&) const = default;
};

struct ActivitySpace {
  std::string id;
  std::string name;
  /// Unset only for practice spaces, which then take the practice's area.
  std::optional<Area> area;
  std::optional<Reference> parent;
  std::optional<std::string> goal;

  bool operator==(const ActivitySpace&) const = default;
};

struct CompetencyRequirement {
  Reference competency;
  int level = 3;

  bool operator==(const CompetencyRequirement&) const = default;
};

struct WorkProductContribution {
  Reference work_product;
  std::optional<std::string> part;

  /// `<work product>: <part>` when a part is known.
  std::string rendered_name() const {
    return part ? work_product.name + ": " + *part : work_product.name;
  }
  bool operator==(const WorkProductContribution&) const = default;
};

struct Activity {
  std::string id;
  std::string name;
  Reference space;
  std::vector<CompetencyRequirement> required_competencies;
  std::vector<WorkProductContribution> produces;
  std::optional<Reference> responsible_role;
  std::vector<std::string> tags;

  bool operator==(const Activity&) const = default;
};

struct WorkProduct {
  std::string id;
  std::string name;
  WorkProductCategory category = WorkProductCategory::other;
  std::optional<std::string> description;

  bool operator==(const WorkProduct&) const = default;
};

struct Role {
  std::string id;
  std::string name;
  std::vector<CompetencyRequirement> competencies;

  bool operator==(const Role&) const = default;
};

/// Spaces are stored in pre-order; activities are grouped by owning space in
/// the same pre-order, each group in declaration order.
struct Practice {
  std::string id;
  std::string name;
  Area declared_area = Area::endeavor;
  std::vector<std::string> goals;
  std::vector<std::string> inputs;
  std::vector<WorkProduct> outputs;
  std::vector<ActivitySpace> spaces;
  std::vector<Activity> activities;

  bool operator==(const Practice&) const = default;
};

struct Method {
  std::string id;
  std::string name;
  std::optional<Reference> preamble;
  std::vector<Reference> cycle;
  std::vector<Reference> concurrent;

  bool operator==(const Method&) const = default;
};

struct Kernel {
  std::string id;
  std::string name;
  std::vector<AreaDecl> areas;
  std::vector<Alpha> alphas;
  std::vector<Competency> competencies;
  std::vector<ActivitySpace> spaces;
  std::vector<WorkProduct> work_products;

  bool operator==(const Kernel&) const = default;
};

// ---------------------------------------------------------------------------
// TOGAF phase specifications (mapper input)
// ---------------------------------------------------------------------------

enum class PhaseCode { P, A, B, C, D, E, F, G, H, RM };

inline constexpr std::array<PhaseCode, 10> kAllPhaseCodes{
    PhaseCode::P, PhaseCode::A, PhaseCode::B, PhaseCode::C, PhaseCode::D,
    PhaseCode::E, PhaseCode::F, PhaseCode::G, PhaseCode::H, PhaseCode::RM};

inline std::string_view to_string(PhaseCode p) {
  switch (p) {
    case PhaseCode::P: return "P";
    case PhaseCode::A: return "A";
    case PhaseCode::B: return "B";
    case PhaseCode::C: return "C";
    case PhaseCode::D: return "D";
    case PhaseCode::E: return "E";
    case PhaseCode::F: return "F";
    case PhaseCode::G: return "G";
    case PhaseCode::H: return "H";
    case PhaseCode::RM: return "RM";
  }
  return "?";
}

inline std::optional<PhaseCode> parse_phase_code(std::string_view s) {
  for (auto p : kAllPhaseCodes)
    if (to_string(p) == s) return p;
  return std::nullopt;
}

struct FeedSpec {
  std::string output;
  std::optional<std::string> part;

  bool operator==(const FeedSpec&) const = default;
};

struct ActivitySpec {
  std::string name;
  std::vector<std::string> tags;
  std::vector<FeedSpec> feeds;
  std::optional<std::string> role;
  std::vector<ActivitySpec> sub_activities;

  bool operator==(const ActivitySpec&) const = default;
};

struct StepSpec {
  std::string name;
  std::optional<std::string> goal;
  std::vector<ActivitySpec> activities;

  bool operator==(const StepSpec&) const = default;
};

struct OutputSpec {
  std::string name;
  WorkProductCategory category = WorkProductCategory::other;
  std::optional<std::string> description;

  bool operator==(const OutputSpec&) const = default;
};

struct TogafPhaseSpec {
  std::string id;
  PhaseCode code = PhaseCode::P;
  std::string name;
  std::string objective;
  std::vector<OutputSpec> outputs;
  std::vector<StepSpec> steps;

  bool operator==(const TogafPhaseSpec&) const = default;
};

inline std::string phase_id(PhaseCode code) {
  std::string id = "phase.";
  for (char c : to_string(code)) id.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return id;
}

// ---------------------------------------------------------------------------
// Document
// ---------------------------------------------------------------------------

/// Parsed collection of declarations. Elements of one kind keep declaration
/// order; source spans live beside the elements, keyed by id, so that
/// structural comparison ignores them.
struct ModelDocument {
  std::vector<Kernel> kernels;
  std::vector<Role> roles;
  std::vector<TogafPhaseSpec> phases;
  std::vector<Practice> practices;
  std::vector<Method> methods;
  std::map<std::string, SourceSpan> spans;

  bool empty() const {
    return kernels.empty() && roles.empty() && phases.empty() && practices.empty() && methods.empty();
  }

  std::optional<SourceSpan> span_of(const std::string& id) const {
    auto it = spans.find(id);
    if (it == spans.end()) return std::nullopt;
    return it->second;
  }
};

/// Equality of every field except source spans.
inline bool structurally_equal(const ModelDocument& a, const ModelDocument& b) {
  return a.kernels == b.kernels && a.roles == b.roles && a.phases == b.phases &&
         a.practices == b.practices && a.methods == b.methods;
}

// ---------------------------------------------------------------------------
// Lookup
// ---------------------------------------------------------------------------

using ElementRef =
    std::variant<const Kernel*, const AreaDecl*, const Alpha*, const Competency*, const ActivitySpace*,
                 const Activity*, const WorkProduct*, const Role*, const Practice*, const Method*,
                 const TogafPhaseSpec*>;

inline ElementKind kind_of(const ElementRef& ref) {
  struct Visitor {
    ElementKind operator()(const Kernel*) const { return ElementKind::kernel; }
    ElementKind operator()(const AreaDecl*) const { return ElementKind::area; }
    ElementKind operator()(const Alpha*) const { return ElementKind::alpha; }
    ElementKind operator()(const Competency*) const { return ElementKind::competency; }
    ElementKind operator()(const ActivitySpace*) const { return ElementKind::space; }
    ElementKind operator()(const Activity*) const { return ElementKind::activity; }
    ElementKind operator()(const WorkProduct*) const { return ElementKind::work_product; }
    ElementKind operator()(const Role*) const { return ElementKind::role; }
    ElementKind operator()(const Practice*) const { return ElementKind::practice; }
    ElementKind operator()(const Method*) const { return ElementKind::method; }
    ElementKind operator()(const TogafPhaseSpec*) const { return ElementKind::phase; }
  };
  return std::visit(Visitor{}, ref);
}

inline const std::string& id_of(const ElementRef& ref) {
  return std::visit([](const auto* e) -> const std::string& { return e->id; }, ref);
}

inline std::string name_of(const ElementRef& ref) {
  return std::visit(
      [](const auto* e) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(*e)>, AreaDecl>) return e->name();
        else return e->name;
      },
      ref);
}

/// Visits every element in document order: kernels (with their areas,
/// alphas, competencies, spaces, work products), roles, phase specs,
/// practices (with outputs, spaces, activities), methods.
inline void for_each_element(const ModelDocument& model, const std::function<void(ElementRef)>& fn) {
  for (const auto& k : model.kernels) {
    fn(&k);
    for (const auto& e : k.areas) fn(&e);
    for (const auto& e : k.alphas) fn(&e);
    for (const auto& e : k.competencies) fn(&e);
    for (const auto& e : k.spaces) fn(&e);
    for (const auto& e : k.work_products) fn(&e);
  }
  for (const auto& r : model.roles) fn(&r);
  for (const auto& p : model.phases) fn(&p);
  for (const auto& p : model.practices) {
    fn(&p);
    for (const auto& e : p.outputs) fn(&e);
    for (const auto& e : p.spaces) fn(&e);
    for (const auto& e : p.activities) fn(&e);
  }
  for (const auto& m : model.methods) fn(&m);
}

/// Returns the element with that id, or nullopt.
inline std::optional<ElementRef> lookup(const ModelDocument& model, std::string_view id) {
  std::optional<ElementRef> found;
  for_each_element(model, [&](ElementRef ref) {
    if (!found && id_of(ref) == id) found = ref;
  });
  return found;
}

template <typename T>
const T* lookup_as(const ModelDocument& model, std::string_view id) {
  auto ref = lookup(model, id);
  if (!ref) return nullptr;
  if (auto p = std::get_if<const T*>(&*ref)) return *p;
  return nullptr;
}

/// All elements of one kind, in declaration order.
inline std::vector<ElementRef> iter_elements(const ModelDocument& model, ElementKind kind) {
  std::vector<ElementRef> out;
  for_each_element(model, [&](ElementRef ref) {
    if (kind_of(ref) == kind) out.push_back(ref);
  });
  return out;
}

/// Position of every element id in document order.
inline std::map<std::string, std::size_t> declaration_order(const ModelDocument& model) {
  std::map<std::string, std::size_t> order;
  std::size_t n = 0;
  for_each_element(model, [&](ElementRef ref) { order.emplace(id_of(ref), n++); });
  return order;
}

/// Nesting depth of a space inside its owning collection (root = 1), or
/// nullopt if the parent chain cycles or dangles.
inline std::optional<int> nesting_depth(const std::vector<ActivitySpace>& spaces, const ActivitySpace& space) {
  int depth = 1;
  const ActivitySpace* cur = &space;
  while (cur->parent) {
    const ActivitySpace* next = nullptr;
    for (const auto& s : spaces)
      if (s.id == cur->parent->target) next = &s;
    if (!next) return std::nullopt;
    if (++depth > static_cast<int>(spaces.size())) return std::nullopt;
    cur = next;
  }
  return depth;
}

}  // namespace essence
