#pragma once

#include <string>
#include <string_view>

#include "essence/dsl/lexer.hpp"
#include "essence/metamodel.hpp"

namespace essence::dsl {

namespace detail {

class Renderer {
 public:
  std::string take() { return std::move(out_); }

  void kernel(const Kernel& k) {
    open("kernel " + quote(k.name));
    for (const auto& a : k.areas)
      line("area " + a.name() + " color " + std::string(to_string(a.color)));
    for (const auto& al : k.alphas) alpha(al);
    for (const auto& c : k.competencies) {
      std::string s = "competency " + name_token(c.name) + " area " + std::string(to_string(c.area));
      if (c.max_level != kMaxCompetencyLevel) s += " levels " + std::to_string(c.max_level);
      line(s);
    }
    for (const auto& s : k.spaces) {
      std::string l = "space " + quote(s.name) + " area " + std::string(to_string(s.area.value_or(Area::endeavor)));
      if (s.parent) l += " in " + quote(s.parent->name);
      if (s.goal) l += " goal " + quote(*s.goal);
      line(l);
    }
    for (const auto& w : k.work_products) line("workproduct " + work_product_tail(w));
    close();
  }

  void role(const Role& r) {
    open("role " + quote(r.name));
    for (const auto& c : r.competencies)
      line("competency " + name_token(c.competency.name) + " @ " + std::to_string(c.level));
    close();
  }

  void phase(const TogafPhaseSpec& p) {
    open("togaf_phase " + std::string(to_string(p.code)) + " " + quote(p.name));
    line("objective " + quote(p.objective));
    for (const auto& o : p.outputs) {
      std::string l = "output " + quote(o.name) + " category " + std::string(to_string(o.category));
      if (o.description) l += " description " + quote(*o.description);
      line(l);
    }
    for (const auto& s : p.steps) {
      std::string head = "step " + quote(s.name);
      if (s.goal) head += " goal " + quote(*s.goal);
      open(head);
      for (const auto& a : s.activities) activity_spec(a);
      close();
    }
    close();
  }

  void practice(const Practice& p) {
    open("practice " + quote(p.name) + " area " + std::string(to_string(p.declared_area)));
    for (const auto& g : p.goals) line("goal " + quote(g));
    for (const auto& i : p.inputs) line("input " + quote(i));
    for (const auto& w : p.outputs) line("output " + work_product_tail(w));
    for (const auto& s : p.spaces)
      if (!s.parent) space_block(p, s);
    close();
  }

  void method(const Method& m) {
    open("method " + quote(m.name));
    if (m.preamble) line("preamble " + quote(m.preamble->name));
    for (const auto& c : m.cycle) line("cycle " + quote(c.name));
    for (const auto& c : m.concurrent) line("concurrent " + quote(c.name));
    close();
  }

 private:
  void alpha(const Alpha& al) {
    open("alpha " + name_token(al.name) + " area " + std::string(to_string(al.area)));
    for (const auto& st : al.states) {
      open("state " + name_token(st.name));
      for (const auto& item : st.checklist) line("check " + quote(item.text));
      close();
    }
    close();
  }

  static std::string work_product_tail(const WorkProduct& w) {
    std::string s = quote(w.name) + " category " + std::string(to_string(w.category));
    if (w.description) s += " description " + quote(*w.description);
    return s;
  }

  void space_block(const Practice& p, const ActivitySpace& s) {
    std::string head = "space " + quote(s.name);
    if (s.area) head += " area " + std::string(to_string(*s.area));
    if (s.goal) head += " goal " + quote(*s.goal);
    open(head);
    for (const auto& a : p.activities)
      if (a.space.target == s.id) activity(a);
    for (const auto& child : p.spaces)
      if (child.parent && child.parent->target == s.id) space_block(p, child);
    close();
  }

  void activity(const Activity& a) {
    line("activity " + quote(a.name));
    ++depth_;
    for (const auto& r : a.required_competencies)
      line("requires " + name_token(r.competency.name) + " @ " + std::to_string(r.level));
    for (const auto& c : a.produces) line("produces " + quote(c.rendered_name()));
    if (a.responsible_role) line("role " + quote(a.responsible_role->name));
    for (const auto& t : a.tags) line("tag " + t);
    --depth_;
  }

  void activity_spec(const ActivitySpec& a) {
    line("activity " + quote(a.name));
    ++depth_;
    for (const auto& f : a.feeds) line("feeds " + quote(f.part ? f.output + ": " + *f.part : f.output));
    if (a.role) line("role " + quote(*a.role));
    for (const auto& t : a.tags) line("tag " + t);
    --depth_;
    if (!a.sub_activities.empty()) {
      // Brace goes on the last emitted line of the activity.
      out_.pop_back();
      out_ += " {\n";
      ++depth_;
      for (const auto& sub : a.sub_activities) activity_spec(sub);
      close();
    }
  }

  void open(const std::string& head) {
    line(head + " {");
    ++depth_;
  }
  void close() {
    --depth_;
    line("}");
  }
  void line(const std::string& text) {
    out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
    out_ += text;
    out_.push_back('\n');
  }

  std::string out_;
  int depth_ = 0;
};

}  // namespace detail

/// Canonical text form: two-space indentation, one clause per line, kinds in
/// the order kernels, roles, phase specs, practices, methods, each in
/// declaration order. A blank line separates top-level declarations.
inline std::string render_canonical(const ModelDocument& model) {
  std::string out;
  auto emit = [&out](std::string block) {
    if (!out.empty()) out.push_back('\n');
    out += block;
  };
  for (const auto& k : model.kernels) {
    detail::Renderer r;
    r.kernel(k);
    emit(r.take());
  }
  for (const auto& x : model.roles) {
    detail::Renderer r;
    r.role(x);
    emit(r.take());
  }
  for (const auto& x : model.phases) {
    detail::Renderer r;
    r.phase(x);
    emit(r.take());
  }
  for (const auto& x : model.practices) {
    detail::Renderer r;
    r.practice(x);
    emit(r.take());
  }
  for (const auto& x : model.methods) {
    detail::Renderer r;
    r.method(x);
    emit(r.take());
  }
  return out;
}

inline std::string render_practice(const Practice& p) {
  detail::Renderer r;
  r.practice(p);
  return r.take();
}

}  // namespace essence::dsl
