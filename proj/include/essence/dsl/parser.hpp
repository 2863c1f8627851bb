#pragma once

// Recursive-descent parser for the `.ess` declaration language.
//
//   document    := (kernel | practice | method | role | phase_spec)*
//   kernel      := "kernel" STRING "{" (area | alpha | competency | space_decl | work_product)* "}"
//   area        := "area" IDENT "color" IDENT
//   alpha       := "alpha" NAME "area" IDENT "{" state+ "}"
//   state       := "state" NAME "{" ("check" STRING)+ "}"
//   competency  := "competency" NAME "area" IDENT ("levels" INT)?
//   space_decl  := "space" STRING "area" IDENT ("in" STRING)? ("goal" STRING)?
//   work_product:= "workproduct" STRING "category" IDENT ("description" STRING)?
//   role        := "role" STRING "{" ("competency" NAME "@" INT)+ "}"
//   practice    := "practice" STRING "area" IDENT "{" ("goal" STRING)+ ("input" STRING)*
//                  output* space_block* "}"
//   output      := "output" STRING ("category" IDENT)? ("description" STRING)?
//   space_block := "space" STRING ("area" IDENT)? ("goal" STRING)? "{" (space_block | activity)* "}"
//   activity    := "activity" STRING ("requires" NAME "@" INT)* ("produces" STRING)*
//                  ("role" STRING)? ("tag" IDENT)*
//   method      := "method" STRING "{" ("preamble" STRING)? ("cycle" STRING)+ ("concurrent" STRING)* "}"
//   phase_spec  := "togaf_phase" IDENT STRING "{" "objective" STRING output* step* "}"
//   step        := "step" STRING ("goal" STRING)? "{" phase_act* "}"
//   phase_act   := "activity" STRING ("feeds" STRING)* ("role" STRING)? ("tag" IDENT)*
//                  ("{" phase_act+ "}")?
//   NAME        := IDENT | STRING

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "essence/diagnostic.hpp"
#include "essence/dsl/lexer.hpp"
#include "essence/metamodel.hpp"

namespace essence::dsl {

struct ParseDiagnostic {
  Severity severity = Severity::error;
  SourceSpan span;
  std::string message;
  std::optional<std::string> expected;
};

inline std::string format_parse_diagnostic(const ParseDiagnostic& d) {
  std::string s = to_string(d.span) + ": " + to_string(d.severity) + ": " + d.message;
  if (d.expected) s += " (expected " + *d.expected + ")";
  return s;
}

struct ParseResult {
  std::optional<ModelDocument> document;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return document.has_value(); }
};

/// Splits `"<name>: <part>"` at the first `": "`.
inline std::pair<std::string, std::optional<std::string>> split_contribution(std::string_view text) {
  auto pos = text.find(": ");
  if (pos == std::string_view::npos) return {std::string(text), std::nullopt};
  return {std::string(text.substr(0, pos)), std::string(text.substr(pos + 2))};
}

namespace detail {

struct SyntaxError {
  ParseDiagnostic diag;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file) : toks_(std::move(tokens)), file_(std::move(file)) {}

  ModelDocument parse_document() {
    while (!at_end()) {
      const Token& t = peek();
      if (is_kw("kernel")) doc_.kernels.push_back(parse_kernel());
      else if (is_kw("practice")) doc_.practices.push_back(parse_practice());
      else if (is_kw("method")) doc_.methods.push_back(parse_method());
      else if (is_kw("role")) doc_.roles.push_back(parse_role());
      else if (is_kw("togaf_phase")) doc_.phases.push_back(parse_phase());
      else fail(t, "unexpected " + token_desc(t) + " at top level",
                "kernel, practice, method, role or togaf_phase");
    }
    return std::move(doc_);
  }

  std::vector<ParseDiagnostic> take_semantic_errors() { return std::move(errors_); }

 private:
  // -- token helpers -------------------------------------------------------

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == TokenKind::end; }
  bool is_kw(std::string_view kw) const {
    return peek().kind == TokenKind::identifier && peek().text == kw;
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != TokenKind::end) ++pos_;
    return t;
  }
  const Token& last() const { return toks_[pos_ > 0 ? pos_ - 1 : 0]; }

  static std::string token_desc(const Token& t) {
    if (t.kind == TokenKind::identifier) return "'" + t.text + "'";
    if (t.kind == TokenKind::string) return "string " + quote(t.text);
    if (t.kind == TokenKind::integer) return "integer " + t.text;
    return describe(t.kind);
  }

  SourceSpan span_of(const Token& t) const {
    return SourceSpan{file_, t.line, t.col, t.end_line, t.end_col};
  }
  SourceSpan span_from(const Token& start) const {
    const Token& end = last();
    return SourceSpan{file_, start.line, start.col, end.end_line, end.end_col};
  }

  [[noreturn]] void fail(const Token& at, std::string message, std::optional<std::string> expected = {}) {
    throw SyntaxError{ParseDiagnostic{Severity::error, span_of(at), std::move(message), std::move(expected)}};
  }

  void expect_kw(std::string_view kw) {
    if (!is_kw(kw)) fail(peek(), "expected '" + std::string(kw) + "' but found " + token_desc(peek()), std::string(kw));
    take();
  }
  void expect(TokenKind k) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + describe(k) + " but found " + token_desc(peek()), describe(k));
    take();
  }
  std::string expect_string() {
    if (peek().kind != TokenKind::string) fail(peek(), "expected string but found " + token_desc(peek()), "STRING");
    return take().text;
  }
  std::string expect_ident() {
    if (peek().kind != TokenKind::identifier) fail(peek(), "expected identifier but found " + token_desc(peek()), "IDENT");
    return take().text;
  }
  std::string expect_name() {
    if (peek().kind != TokenKind::identifier && peek().kind != TokenKind::string)
      fail(peek(), "expected name but found " + token_desc(peek()), "IDENT or STRING");
    return take().text;
  }
  int expect_int() {
    const Token& t = peek();
    if (t.kind != TokenKind::integer) fail(t, "expected integer but found " + token_desc(t), "INT");
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{}) fail(t, "integer out of range: " + t.text);
    take();
    return value;
  }
  bool accept_kw(std::string_view kw) {
    if (!is_kw(kw)) return false;
    take();
    return true;
  }

  Area expect_area() {
    const Token& t = peek();
    std::string text = expect_ident();
    auto a = parse_area(text);
    if (!a) fail(t, "unknown area of concern '" + text + "'", "Customer, Solution or Endeavor");
    return *a;
  }
  WorkProductCategory expect_category() {
    const Token& t = peek();
    std::string text = expect_ident();
    auto c = parse_category(text);
    if (!c) fail(t, "unknown work product category '" + text + "'", "catalog, matrix, diagram or other");
    return *c;
  }

  // -- identity ------------------------------------------------------------

  /// Document-wide ids: duplicates are errors naming both spans.
  void register_id(const std::string& id, const SourceSpan& span) {
    auto [it, inserted] = doc_.spans.emplace(id, span);
    if (!inserted) {
      errors_.push_back(ParseDiagnostic{Severity::error, span,
                                        "duplicate id '" + id + "' (first declared at " + to_string(it->second) + ")",
                                        std::nullopt});
    }
  }

  /// Ids inside a practice: a repeated slug under one parent gets a `#n`
  /// suffix so both elements stay addressable; the validator reports the
  /// duplicate name.
  std::string unique_child_id(const std::string& parent, ElementKind kind, const std::string& name) {
    std::string base = child_id(parent, kind, name);
    std::string id = base;
    for (int n = 2; doc_.spans.count(id) > 0; ++n) id = base + "#" + std::to_string(n);
    return id;
  }

  // -- kernel --------------------------------------------------------------

  Kernel parse_kernel() {
    const Token& start = peek();
    expect_kw("kernel");
    Kernel k;
    k.name = expect_string();
    k.id = make_id(ElementKind::kernel, k.name);
    expect(TokenKind::lbrace);
    while (peek().kind != TokenKind::rbrace) {
      if (is_kw("area")) k.areas.push_back(parse_area_decl());
      else if (is_kw("alpha")) k.alphas.push_back(parse_alpha());
      else if (is_kw("competency")) k.competencies.push_back(parse_competency());
      else if (is_kw("space")) k.spaces.push_back(parse_space_decl());
      else if (is_kw("workproduct")) k.work_products.push_back(parse_work_product());
      else fail(peek(), "unexpected " + token_desc(peek()) + " in kernel",
                "area, alpha, competency, space, workproduct or '}'");
    }
    take();
    register_id(k.id, span_from(start));
    return k;
  }

  AreaDecl parse_area_decl() {
    const Token& start = peek();
    expect_kw("area");
    AreaDecl a;
    a.area = expect_area();
    expect_kw("color");
    const Token& color_tok = peek();
    std::string color = expect_ident();
    auto c = parse_color(color);
    if (!c) fail(color_tok, "unknown color '" + color + "'", "green, yellow or blue");
    if (*c != area_color(a.area))
      fail(color_tok, "area " + a.name() + " must be colored " + std::string(to_string(area_color(a.area))),
           std::string(to_string(area_color(a.area))));
    a.color = *c;
    a.id = make_id(ElementKind::area, a.name());
    register_id(a.id, span_from(start));
    return a;
  }

  Alpha parse_alpha() {
    const Token& start = peek();
    expect_kw("alpha");
    Alpha al;
    al.name = expect_name();
    expect_kw("area");
    al.area = expect_area();
    expect(TokenKind::lbrace);
    if (!is_kw("state")) fail(peek(), "alpha requires at least one state", "state");
    while (is_kw("state")) {
      take();
      AlphaState st;
      st.name = expect_name();
      expect(TokenKind::lbrace);
      if (!is_kw("check")) fail(peek(), "alpha state requires at least one checklist item", "check");
      while (accept_kw("check")) st.checklist.push_back(ChecklistItem{expect_string(), {}});
      expect(TokenKind::rbrace);
      al.states.push_back(std::move(st));
    }
    expect(TokenKind::rbrace);
    renumber_checklist(al);
    al.id = make_id(ElementKind::alpha, al.name);
    register_id(al.id, span_from(start));
    return al;
  }

  Competency parse_competency() {
    const Token& start = peek();
    expect_kw("competency");
    Competency c;
    c.name = expect_name();
    expect_kw("area");
    c.area = expect_area();
    if (accept_kw("levels")) c.max_level = expect_int();
    c.kernel_builtin = is_kernel_builtin_competency(c.name);
    c.id = make_id(ElementKind::competency, c.name);
    register_id(c.id, span_from(start));
    return c;
  }

  ActivitySpace parse_space_decl() {
    const Token& start = peek();
    expect_kw("space");
    ActivitySpace s;
    s.name = expect_string();
    expect_kw("area");
    s.area = expect_area();
    if (accept_kw("in")) s.parent = Reference{expect_string(), {}};
    if (accept_kw("goal")) s.goal = expect_string();
    s.id = make_id(ElementKind::space, s.name);
    register_id(s.id, span_from(start));
    return s;
  }

  WorkProduct parse_work_product() {
    const Token& start = peek();
    expect_kw("workproduct");
    WorkProduct w;
    w.name = expect_string();
    expect_kw("category");
    w.category = expect_category();
    if (accept_kw("description")) w.description = expect_string();
    w.id = make_id(ElementKind::work_product, w.name);
    register_id(w.id, span_from(start));
    return w;
  }

  // -- role / method -------------------------------------------------------

  Role parse_role() {
    const Token& start = peek();
    expect_kw("role");
    Role r;
    r.name = expect_string();
    expect(TokenKind::lbrace);
    if (!is_kw("competency")) fail(peek(), "role requires at least one competency", "competency");
    while (accept_kw("competency")) {
      CompetencyRequirement req;
      req.competency.name = expect_name();
      expect(TokenKind::at);
      req.level = expect_int();
      r.competencies.push_back(std::move(req));
    }
    expect(TokenKind::rbrace);
    r.id = make_id(ElementKind::role, r.name);
    register_id(r.id, span_from(start));
    return r;
  }

  Method parse_method() {
    const Token& start = peek();
    expect_kw("method");
    Method m;
    m.name = expect_string();
    expect(TokenKind::lbrace);
    if (accept_kw("preamble")) m.preamble = Reference{expect_string(), {}};
    if (!is_kw("cycle")) fail(peek(), "method requires at least one cycle practice", "cycle");
    while (accept_kw("cycle")) m.cycle.push_back(Reference{expect_string(), {}});
    while (accept_kw("concurrent")) m.concurrent.push_back(Reference{expect_string(), {}});
    expect(TokenKind::rbrace);
    m.id = make_id(ElementKind::method, m.name);
    register_id(m.id, span_from(start));
    return m;
  }

  // -- practice ------------------------------------------------------------

  struct SpaceNode {
    ActivitySpace space;
    std::vector<Activity> activities;
    std::vector<SpaceNode> children;
  };

  static void flatten_spaces(SpaceNode& n, std::vector<ActivitySpace>& out) {
    out.push_back(std::move(n.space));
    for (auto& c : n.children) flatten_spaces(c, out);
  }
  static void flatten_activities(SpaceNode& n, std::vector<Activity>& out) {
    for (auto& a : n.activities) out.push_back(std::move(a));
    for (auto& c : n.children) flatten_activities(c, out);
  }

  Practice parse_practice() {
    const Token& start = peek();
    expect_kw("practice");
    Practice p;
    p.name = expect_string();
    p.id = make_id(ElementKind::practice, p.name);
    expect_kw("area");
    p.declared_area = expect_area();
    expect(TokenKind::lbrace);
    if (!is_kw("goal")) fail(peek(), "practice requires at least one goal", "goal");
    while (accept_kw("goal")) p.goals.push_back(expect_string());
    while (accept_kw("input")) p.inputs.push_back(expect_string());
    while (is_kw("output")) {
      const Token& ostart = take();
      WorkProduct w;
      w.name = expect_string();
      if (accept_kw("category")) w.category = expect_category();
      if (accept_kw("description")) w.description = expect_string();
      w.id = unique_child_id(p.id, ElementKind::work_product, w.name);
      register_id(w.id, span_from(ostart));
      p.outputs.push_back(std::move(w));
    }
    std::vector<SpaceNode> roots;
    while (is_kw("space")) roots.push_back(parse_space_block(p.id, nullptr));
    if (peek().kind != TokenKind::rbrace)
      fail(peek(), "unexpected " + token_desc(peek()) + " in practice", "goal, input, output, space or '}'");
    take();
    for (auto& r : roots) flatten_spaces(r, p.spaces);
    for (auto& r : roots) flatten_activities(r, p.activities);
    register_id(p.id, span_from(start));
    return p;
  }

  SpaceNode parse_space_block(const std::string& owner, const ActivitySpace* parent) {
    const Token& start = peek();
    expect_kw("space");
    SpaceNode node;
    node.space.name = expect_string();
    if (accept_kw("area")) node.space.area = expect_area();
    if (accept_kw("goal")) node.space.goal = expect_string();
    if (parent) node.space.parent = Reference{parent->name, parent->id};
    node.space.id = unique_child_id(owner, ElementKind::space, node.space.name);
    // Reserve the id before children so their ids are derived from it.
    doc_.spans.emplace(node.space.id, span_of(start));
    expect(TokenKind::lbrace);
    while (peek().kind != TokenKind::rbrace) {
      if (is_kw("space")) node.children.push_back(parse_space_block(node.space.id, &node.space));
      else if (is_kw("activity")) node.activities.push_back(parse_activity(node.space));
      else fail(peek(), "unexpected " + token_desc(peek()) + " in space", "space, activity or '}'");
    }
    take();
    doc_.spans[node.space.id] = span_from(start);
    return node;
  }

  Activity parse_activity(const ActivitySpace& space) {
    const Token& start = peek();
    expect_kw("activity");
    Activity a;
    a.name = expect_string();
    a.space = Reference{space.name, space.id};
    while (accept_kw("requires")) {
      CompetencyRequirement req;
      req.competency.name = expect_name();
      expect(TokenKind::at);
      req.level = expect_int();
      a.required_competencies.push_back(std::move(req));
    }
    while (accept_kw("produces")) {
      auto [wp, part] = split_contribution(expect_string());
      a.produces.push_back(WorkProductContribution{Reference{wp, {}}, part});
    }
    if (accept_kw("role")) a.responsible_role = Reference{expect_string(), {}};
    while (accept_kw("tag")) a.tags.push_back(expect_ident());
    a.id = unique_child_id(space.id, ElementKind::activity, a.name);
    doc_.spans.emplace(a.id, span_from(start));
    return a;
  }

  // -- TOGAF phase spec ----------------------------------------------------

  TogafPhaseSpec parse_phase() {
    const Token& start = peek();
    expect_kw("togaf_phase");
    TogafPhaseSpec ph;
    const Token& code_tok = peek();
    std::string code = expect_ident();
    auto pc = parse_phase_code(code);
    if (!pc) fail(code_tok, "unknown TOGAF phase id '" + code + "'", "P, A, B, C, D, E, F, G, H or RM");
    ph.code = *pc;
    ph.id = phase_id(ph.code);
    ph.name = expect_string();
    expect(TokenKind::lbrace);
    expect_kw("objective");
    ph.objective = expect_string();
    while (accept_kw("output")) {
      OutputSpec o;
      o.name = expect_string();
      if (accept_kw("category")) o.category = expect_category();
      if (accept_kw("description")) o.description = expect_string();
      ph.outputs.push_back(std::move(o));
    }
    while (accept_kw("step")) {
      StepSpec s;
      s.name = expect_string();
      if (accept_kw("goal")) s.goal = expect_string();
      expect(TokenKind::lbrace);
      while (is_kw("activity")) s.activities.push_back(parse_activity_spec());
      if (peek().kind != TokenKind::rbrace) fail(peek(), "unexpected " + token_desc(peek()) + " in step", "activity or '}'");
      take();
      ph.steps.push_back(std::move(s));
    }
    if (peek().kind != TokenKind::rbrace)
      fail(peek(), "unexpected " + token_desc(peek()) + " in togaf_phase", "output, step or '}'");
    take();
    register_id(ph.id, span_from(start));
    return ph;
  }

  ActivitySpec parse_activity_spec() {
    expect_kw("activity");
    ActivitySpec a;
    a.name = expect_string();
    while (accept_kw("feeds")) {
      auto [out, part] = split_contribution(expect_string());
      a.feeds.push_back(FeedSpec{out, part});
    }
    if (accept_kw("role")) a.role = expect_string();
    while (accept_kw("tag")) a.tags.push_back(expect_ident());
    if (peek().kind == TokenKind::lbrace) {
      take();
      if (!is_kw("activity")) fail(peek(), "sub-activity block requires at least one activity", "activity");
      while (is_kw("activity")) a.sub_activities.push_back(parse_activity_spec());
      expect(TokenKind::rbrace);
    }
    return a;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string file_;
  ModelDocument doc_;
  std::vector<ParseDiagnostic> errors_;
};

}  // namespace detail

/// Parses one `.ess` source. Cross references stay unresolved; duplicate ids
/// and syntax errors produce diagnostics and no document.
inline ParseResult parse(std::string_view source, std::string_view file_name) {
  ParseResult result;
  std::string file(file_name);
  if (auto bad = find_invalid_utf8(source)) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < *bad; ++i) {
      if (source[i] == '\n') ++line, col = 1;
      else ++col;
    }
    result.diagnostics.push_back(
        ParseDiagnostic{Severity::error, SourceSpan{file, line, col, line, col}, "input is not valid UTF-8", std::nullopt});
    return result;
  }
  std::vector<Token> tokens;
  try {
    tokens = Lexer(source).run();
  } catch (const LexError& e) {
    result.diagnostics.push_back(
        ParseDiagnostic{Severity::error, SourceSpan{file, e.line, e.col, e.line, e.col}, e.message, std::nullopt});
    return result;
  }
  detail::Parser parser(std::move(tokens), file);
  try {
    ModelDocument doc = parser.parse_document();
    result.diagnostics = parser.take_semantic_errors();
    bool failed = std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                              [](const ParseDiagnostic& d) { return d.severity == Severity::error; });
    if (!failed) result.document = std::move(doc);
  } catch (const detail::SyntaxError& e) {
    result.diagnostics = parser.take_semantic_errors();
    result.diagnostics.push_back(e.diag);
  }
  return result;
}

/// Concatenates parsed documents; an id declared in more than one of them is
/// an error naming both spans.
inline ParseResult merge(std::vector<ModelDocument> docs) {
  ParseResult result;
  ModelDocument out;
  for (auto& d : docs) {
    for (const auto& [id, span] : d.spans) {
      auto [it, inserted] = out.spans.emplace(id, span);
      if (!inserted)
        result.diagnostics.push_back(ParseDiagnostic{
            Severity::error, span, "duplicate id '" + id + "' (first declared at " + to_string(it->second) + ")",
            std::nullopt});
    }
    auto append = [](auto& dst, auto& src) {
      for (auto& e : src) dst.push_back(std::move(e));
    };
    append(out.kernels, d.kernels);
    append(out.roles, d.roles);
    append(out.phases, d.phases);
    append(out.practices, d.practices);
    append(out.methods, d.methods);
  }
  if (result.diagnostics.empty()) result.document = std::move(out);
  return result;
}

}  // namespace essence::dsl
