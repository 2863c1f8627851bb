#pragma once

// `essence` command-line driver.
//
//   essence [--strict] [--max-depth N] check  [FILES...]
//   essence ... lint   [FILES...] [--enable IDS] [--disable IDS]
//   essence ... map    [FILES...] [--phase ID]
//   essence ... enact  [FILES...] --method ID --steps N
//   essence ... export [FILES...] [--format tree|dot]
//   essence corpus DIR
//
// FILES may name `.ess` files or directories (their `*.ess` files are read in
// name order). Without FILES the bundled corpus is used.
//
// Exit status: 0 success, 1 error diagnostics (or warnings with --strict),
// 2 usage error, 3 I/O error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "essence/diagnostic.hpp"
#include "essence/dsl/export.hpp"
#include "essence/dsl/parser.hpp"
#include "essence/dsl/render.hpp"
#include "essence/lint.hpp"
#include "essence/metamodel.hpp"
#include "essence/progress.hpp"
#include "essence/togaf/corpus.hpp"
#include "essence/togaf/mapper.hpp"
#include "essence/validator.hpp"

namespace essence::cli {

enum ExitStatus : int { kSuccess = 0, kDiagnostics = 1, kUsage = 2, kIo = 3 };

namespace detail {

struct IoFailure {
  std::string message;
};

struct UsageFailure {
  std::string message;
};

struct Options {
  bool strict = false;
  int max_depth = 3;
  std::vector<std::string> files;
  std::vector<std::string> enable;
  std::vector<std::string> disable;
  std::string phase;
  std::string method;
  int steps = 0;
  std::string format = "tree";
  std::string out_dir;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{"cannot read '" + path.string() + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure{"cannot read '" + path.string() + "'"};
  return ss.str();
}

struct Source {
  std::string name;
  std::string text;
};

inline std::vector<Source> gather_sources(const std::vector<std::string>& args) {
  std::vector<Source> out;
  if (args.empty()) {
    for (const auto& f : togaf::corpus_files())
      out.push_back(Source{"corpus/" + std::string(f.name), std::string(f.text)});
    return out;
  }
  for (const auto& arg : args) {
    std::filesystem::path p(arg);
    std::error_code ec;
    if (std::filesystem::is_directory(p, ec)) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(p, ec))
        if (entry.path().extension() == ".ess") files.push_back(entry.path());
      if (ec) throw IoFailure{"cannot list directory '" + arg + "'"};
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.push_back(Source{f.string(), read_file(f)});
    } else {
      out.push_back(Source{arg, read_file(p)});
    }
  }
  return out;
}

/// Parses and merges; prints parse diagnostics. nullopt on failure.
inline std::optional<ModelDocument> load(const Options& opts, std::ostream& out) {
  std::vector<ModelDocument> docs;
  bool failed = false;
  for (const auto& src : gather_sources(opts.files)) {
    auto r = dsl::parse(src.text, src.name);
    for (const auto& d : r.diagnostics) out << dsl::format_parse_diagnostic(d) << "\n";
    if (r.document) docs.push_back(std::move(*r.document));
    else failed = true;
  }
  if (failed) return std::nullopt;
  auto merged = dsl::merge(std::move(docs));
  for (const auto& d : merged.diagnostics) out << dsl::format_parse_diagnostic(d) << "\n";
  return std::move(merged.document);
}

inline std::optional<ResolvedModel> load_resolved(const Options& opts, std::ostream& out,
                                                  std::vector<Diagnostic>* diags = nullptr) {
  auto doc = load(opts, out);
  if (!doc) return std::nullopt;
  auto r = resolve(std::move(*doc));
  for (const auto& d : r.diagnostics) out << format_report_line(d) << "\n";
  if (diags) *diags = r.diagnostics;
  return std::move(r.model);
}

inline int status_for(const std::vector<Diagnostic>& diags, bool strict) {
  if (has_errors(diags)) return kDiagnostics;
  if (strict && !diags.empty()) return kDiagnostics;
  return kSuccess;
}

inline void print_summary(const std::vector<Diagnostic>& diags, std::ostream& out) {
  out << count_severity(diags, Severity::error) << " errors, " << count_severity(diags, Severity::warning)
      << " warnings\n";
}

inline std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> ids;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    for (std::string id; std::getline(ss, id, ',');)
      if (!id.empty()) ids.push_back(id);
  }
  return ids;
}

inline std::set<std::string> enabled_lints(const Options& opts) {
  auto valid = all_lint_ids();
  auto enable = split_ids(opts.enable);
  auto disable = split_ids(opts.disable);
  for (const auto* list : {&enable, &disable})
    for (const auto& id : *list)
      if (!valid.count(id)) {
        std::string names;
        for (const auto& v : valid) names += (names.empty() ? "" : ", ") + v;
        throw UsageFailure{"unknown lint rule '" + id + "' (valid: " + names + ")"};
      }
  std::set<std::string> enabled = enable.empty() ? valid : std::set<std::string>(enable.begin(), enable.end());
  for (const auto& id : disable) enabled.erase(id);
  return enabled;
}

// -- subcommands -------------------------------------------------------------

inline int cmd_check(const Options& opts, std::ostream& out) {
  std::vector<Diagnostic> diags;
  auto model = load_resolved(opts, out, &diags);
  if (!model) {
    if (diags.empty()) out << "parse failed\n";
    print_summary(diags, out);
    return kDiagnostics;
  }
  auto wf = check_wellformedness(*model, WellformednessConfig{opts.max_depth});
  for (const auto& d : wf) out << format_report_line(d) << "\n";
  print_summary(wf, out);
  return status_for(wf, opts.strict);
}

inline int cmd_lint(const Options& opts, std::ostream& out) {
  auto enabled = enabled_lints(opts);
  std::vector<Diagnostic> diags;
  auto model = load_resolved(opts, out, &diags);
  if (!model) return kDiagnostics;
  auto lints = run_lints(*model, enabled);
  for (const auto& d : lints) out << format_report_line(d) << "\n";
  print_summary(lints, out);
  return status_for(lints, opts.strict);
}

inline int cmd_map(const Options& opts, std::ostream& out, std::ostream& err) {
  auto model = load_resolved(opts, err);
  if (!model) return kDiagnostics;
  const ModelDocument& doc = model->document();
  std::vector<const TogafPhaseSpec*> phases;
  for (const auto& p : doc.phases)
    if (opts.phase.empty() || std::string(to_string(p.code)) == opts.phase || p.id == opts.phase)
      phases.push_back(&p);
  if (!opts.phase.empty() && phases.empty()) throw UsageFailure{"no phase spec with id '" + opts.phase + "'"};
  togaf::MapOptions mo;
  mo.max_nesting_depth = opts.max_depth;
  std::string text;
  for (const auto* p : phases) {
    try {
      if (!text.empty()) text += "\n";
      text += dsl::render_practice(togaf::map_phase(*p, *model, mo));
    } catch (const togaf::MappingError& e) {
      err << "phase " << to_string(p->code) << ": " << e.what() << "\n";
      return kDiagnostics;
    }
  }
  out << text;
  return kSuccess;
}

inline const Method* find_method(const ModelDocument& doc, const std::string& key) {
  for (const auto& m : doc.methods)
    if (m.id == key || m.name == key || slug(m.name) == key) return &m;
  return nullptr;
}

/// Phase code for practices that are the image of a phase spec.
inline std::string trace_label(const ModelDocument& doc, const std::string& practice_id) {
  if (const auto* ph = togaf::phase_for_practice(doc, practice_id)) return std::string(to_string(ph->code));
  return practice_id;
}

inline int cmd_enact(const Options& opts, std::ostream& out) {
  if (opts.steps < 0) throw UsageFailure{"--steps must be non-negative"};
  auto model = load_resolved(opts, out);
  if (!model) return kDiagnostics;
  const ModelDocument& doc = model->document();
  const Method* method = find_method(doc, opts.method);
  if (!method) throw UsageFailure{"no method '" + opts.method + "'"};
  EnactmentState state = start_enactment(*method);
  for (int i = 0; i < opts.steps; ++i) {
    if (i > 0) state = next_phase(std::move(state));
    out << state.iteration << " " << trace_label(doc, state.current()) << "\n";
  }
  return kSuccess;
}

inline int cmd_export(const Options& opts, std::ostream& out) {
  if (opts.format != "tree" && opts.format != "dot") throw UsageFailure{"unknown format '" + opts.format + "'"};
  std::ostringstream log;
  auto model = load_resolved(opts, log);
  if (!model) {
    out << log.str();
    return kDiagnostics;
  }
  auto diags = check_wellformedness(*model, WellformednessConfig{opts.max_depth});
  auto lints = run_lints(*model);
  diags.insert(diags.end(), lints.begin(), lints.end());
  if (opts.format == "dot") {
    out << dsl::export_dot(*model);
  } else {
    auto tree = dsl::export_tree(*model);
    tree["diagnostics"] = dsl::diagnostics_json(diags);
    tree["assessments"] = dsl::assessments_json({});
    out << tree.dump() << "\n";
  }
  return has_errors(diags) ? kDiagnostics : kSuccess;
}

inline int cmd_corpus(const Options& opts, std::ostream& out) {
  try {
    togaf::write_corpus(opts.out_dir);
  } catch (const Error& e) {
    throw IoFailure{e.what()};
  }
  out << "wrote bundled corpus to " << opts.out_dir << "\n";
  return kSuccess;
}

}  // namespace detail

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options opts;
  CLI::App app{"Essence method-engineering toolkit", "essence"};
  app.require_subcommand(1);
  app.add_flag("--strict", opts.strict, "Treat warnings as failures");
  app.add_option("--max-depth", opts.max_depth, "Maximum activity-space nesting depth")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Parse, resolve and check well-formedness");
  check->add_option("files", opts.files, ".ess files or directories");
  auto* lint = app.add_subcommand("lint", "Run lint rules L001-L004");
  lint->add_option("files", opts.files, ".ess files or directories");
  lint->add_option("--enable", opts.enable, "Rule ids to run (comma separated)");
  lint->add_option("--disable", opts.disable, "Rule ids to skip (comma separated)");
  auto* map = app.add_subcommand("map", "Map TOGAF phase specs to practices");
  map->add_option("files", opts.files, ".ess files or directories");
  map->add_option("--phase", opts.phase, "Phase id (P, A..H, RM)");
  auto* enact = app.add_subcommand("enact", "Print the visitation trace of a method");
  enact->add_option("files", opts.files, ".ess files or directories");
  enact->add_option("--method", opts.method, "Method id or name")->required();
  enact->add_option("--steps", opts.steps, "Number of phases to visit")->required();
  auto* exp = app.add_subcommand("export", "Export the model as a JSON tree or Graphviz graph");
  exp->add_option("files", opts.files, ".ess files or directories");
  exp->add_option("--format", opts.format, "tree or dot");
  auto* corpus = app.add_subcommand("corpus", "Write the bundled corpus to a directory");
  corpus->add_option("dir", opts.out_dir, "Output directory")->required();
  for (auto* sub : {check, lint, map, enact, exp, corpus}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*check) return detail::cmd_check(opts, out);
    if (*lint) return detail::cmd_lint(opts, out);
    if (*map) return detail::cmd_map(opts, out, err);
    if (*enact) return detail::cmd_enact(opts, out);
    if (*exp) return detail::cmd_export(opts, out);
    if (*corpus) return detail::cmd_corpus(opts, out);
  } catch (const detail::IoFailure& e) {
    err << "error: " << e.message << "\n";
    return kIo;
  } catch (const detail::UsageFailure& e) {
    err << "error: " << e.message << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDiagnostics;
  }
  return kUsage;
}

}  // namespace essence::cli
