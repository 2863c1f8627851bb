#pragma once

// The bundled TOGAF ADM corpus. Sources live in `corpus/` and are compiled in
// through the generated `essence/corpus_data.hpp`.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "essence/corpus_data.hpp"
#include "essence/diagnostic.hpp"
#include "essence/dsl/parser.hpp"
#include "essence/metamodel.hpp"

namespace essence::togaf {

struct CorpusFile {
  std::string_view name;
  std::string_view text;
};

inline std::vector<CorpusFile> corpus_files() {
  std::vector<CorpusFile> out;
  for (const auto& f : corpus_data::kFiles) out.push_back(CorpusFile{f.name, f.text});
  return out;
}

inline std::string_view corpus_manifest_text() { return corpus_data::kManifest; }

/// `key value` lines; the key is every token but the last, joined by single
/// spaces. `#` starts a comment.
using CorpusManifest = std::map<std::string, long>;

inline CorpusManifest parse_manifest(std::string_view text) {
  CorpusManifest m;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.size() < 2) continue;
    std::string key;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) key += (i ? " " : "") + tokens[i];
    m[key] = std::stol(tokens.back());
  }
  return m;
}

/// Parses and merges the bundled sources. Throws `Error` with the parse
/// diagnostics if the embedded corpus is corrupt.
inline ModelDocument load_corpus() {
  std::vector<ModelDocument> docs;
  std::string problems;
  for (const auto& f : corpus_files()) {
    auto r = dsl::parse(f.text, std::string("corpus/") + std::string(f.name));
    for (const auto& d : r.diagnostics) problems += "\n  " + dsl::format_parse_diagnostic(d);
    if (r.document) docs.push_back(std::move(*r.document));
  }
  if (!problems.empty()) throw Error("bundled corpus is corrupt:" + problems);
  auto merged = dsl::merge(std::move(docs));
  if (!merged.ok()) {
    for (const auto& d : merged.diagnostics) problems += "\n  " + dsl::format_parse_diagnostic(d);
    throw Error("bundled corpus is corrupt:" + problems);
  }
  return std::move(*merged.document);
}

/// Writes the bundled sources and manifest into `dir` (created if needed).
/// Throws `Error` on I/O failure.
inline void write_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir.string() + "': " + ec.message());
  auto write = [&](std::string_view name, std::string_view text) {
    std::ofstream out(dir / std::string(name), std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write '" + (dir / std::string(name)).string() + "'");
  };
  for (const auto& f : corpus_files()) write(f.name, f.text);
  write("manifest", corpus_manifest_text());
}

}  // namespace essence::togaf
