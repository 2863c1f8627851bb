#pragma once

// Alpha-state assessment and method enactment.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "essence/diagnostic.hpp"
#include "essence/metamodel.hpp"

namespace essence {

// ---------------------------------------------------------------------------
// Assessment
// ---------------------------------------------------------------------------

using ChecklistAnswers = std::map<ChecklistKey, bool>;

struct Assessment {
  std::string alpha;  // alpha id
  ChecklistAnswers answers;
  std::optional<std::string> achieved;
};

/// Achieved state: the last state of the longest prefix of states whose
/// checklist items are all answered true. Missing answers count as false.
/// Throws `Error` on a key the alpha does not have.
inline std::optional<std::string> assess_alpha(const Alpha& alpha, const ChecklistAnswers& answers) {
  for (const auto& [key, value] : answers) {
    bool known = key.state < alpha.states.size() && key.item < alpha.states[key.state].checklist.size();
    if (!known) throw Error("unknown checklist item " + to_string(key) + " for alpha '" + alpha.name + "'");
  }
  std::optional<std::string> achieved;
  for (std::size_t s = 0; s < alpha.states.size(); ++s) {
    for (std::size_t i = 0; i < alpha.states[s].checklist.size(); ++i) {
      auto it = answers.find(ChecklistKey{s, i});
      if (it == answers.end() || !it->second) return achieved;
    }
    achieved = alpha.states[s].name;
  }
  return achieved;
}

inline Assessment make_assessment(const Alpha& alpha, ChecklistAnswers answers) {
  Assessment a{alpha.id, std::move(answers), std::nullopt};
  a.achieved = assess_alpha(alpha, a.answers);
  return a;
}

// ---------------------------------------------------------------------------
// Enactment
// ---------------------------------------------------------------------------

/// Practice ids of a method, captured at the start of enactment.
struct MethodPlan {
  std::string method;
  std::optional<std::string> preamble;
  std::vector<std::string> cycle;
  std::vector<std::string> concurrent;
};

struct TraceEntry {
  int iteration = 0;
  std::string practice;

  bool operator==(const TraceEntry&) const = default;
};

struct EnactmentState {
  MethodPlan plan;
  int iteration = 0;
  /// Cycle position; nullopt while the preamble is current.
  std::optional<std::size_t> position;
  std::vector<TraceEntry> trace;

  const std::string& current() const { return position ? plan.cycle[*position] : *plan.preamble; }
  bool in_preamble() const { return !position.has_value(); }
};

inline MethodPlan plan_of(const Method& m) {
  auto id = [](const Reference& r) { return r.target.empty() ? r.name : r.target; };
  MethodPlan plan;
  plan.method = m.id;
  if (m.preamble) plan.preamble = id(*m.preamble);
  for (const auto& c : m.cycle) plan.cycle.push_back(id(c));
  for (const auto& c : m.concurrent) plan.concurrent.push_back(id(c));
  return plan;
}

/// Initial state: the preamble if the method has one, else the first cycle
/// practice, iteration 0.
inline EnactmentState start_enactment(const Method& method) {
  EnactmentState st;
  st.plan = plan_of(method);
  if (st.plan.cycle.empty()) throw Error("method '" + method.name + "' has an empty cycle");
  if (!st.plan.preamble) st.position = 0;
  return st;
}

/// Completes the current practice and moves on. The preamble runs once; the
/// last cycle practice wraps to the first with the iteration incremented.
inline EnactmentState next_phase(EnactmentState state) {
  if (state.plan.cycle.empty()) throw Error("method '" + state.plan.method + "' has an empty cycle");
  state.trace.push_back(TraceEntry{state.iteration, state.current()});
  if (!state.position) {
    state.position = 0;
  } else if (*state.position + 1 < state.plan.cycle.size()) {
    ++*state.position;
  } else {
    state.position = 0;
    ++state.iteration;
  }
  return state;
}

/// Current practice first, then the always-active concurrent practices.
inline std::vector<std::string> active_practices(const EnactmentState& state) {
  std::vector<std::string> out{state.current()};
  for (const auto& c : state.plan.concurrent)
    if (c != out.front()) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Practice progress
// ---------------------------------------------------------------------------

/// |done| / |activities|; a practice without activities is complete.
inline double practice_progress(const Practice& practice, const std::set<std::string>& done) {
  std::set<std::string> ids;
  for (const auto& a : practice.activities) ids.insert(a.id);
  for (const auto& d : done)
    if (!ids.count(d)) throw Error("activity '" + d + "' does not belong to practice '" + practice.name + "'");
  if (ids.empty()) return 1.0;
  return static_cast<double>(done.size()) / static_cast<double>(ids.size());
}

}  // namespace essence
