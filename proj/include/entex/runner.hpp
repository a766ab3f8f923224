#pragma once

// Resource wiring behind the CLI: loads dictionaries, taxonomy and grammars,
// then runs checks or the full extraction with the selected outputs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "entex/errors.hpp"
#include "entex/grammar.hpp"
#include "entex/lexicon.hpp"
#include "entex/output.hpp"
#include "entex/pipeline.hpp"
#include "entex/taxonomy.hpp"

namespace entex {

enum class OutputMode { Inline, Fiches, Stats, All };

inline std::optional<OutputMode> parse_output_mode(std::string_view s) {
  if (s == "inline") return OutputMode::Inline;
  if (s == "fiches") return OutputMode::Fiches;
  if (s == "stats") return OutputMode::Stats;
  if (s == "all") return OutputMode::All;
  return std::nullopt;
}

struct RunConfig {
  std::vector<std::string> dictionary_paths;
  std::string taxonomy_path;
  std::vector<std::string> grammar_paths;
  std::optional<std::string> input_path;  // absent: standard input
  OutputMode mode = OutputMode::Inline;
  bool include_unrecognized = false;
  std::optional<std::string> out_path;
};

struct Resources {
  Taxonomy taxonomy;
  Lexicon lexicon;
  GrammarSet grammars;

  EngineConfig engine() const {
    EngineConfig cfg;
    cfg.taxonomy = &taxonomy;
    cfg.lexicon = &lexicon;
    cfg.grammar = &grammars.grammar;
    cfg.context_rules = &grammars.context_rules;
    return cfg;
  }
};

namespace runner_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw EngineError(Err::Resource, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace runner_detail

/// Parses every configured resource. Per-line dictionary problems land in
/// `diags`; structural errors (bad taxonomy/grammar) throw EngineError.
inline Resources load_resources(const RunConfig& cfg, Diagnostics& diags) {
  if (cfg.dictionary_paths.empty())
    throw EngineError(Err::Resource, "at least one --dict is required");
  if (cfg.grammar_paths.empty())
    throw EngineError(Err::Resource, "at least one --grammar is required");
  if (cfg.taxonomy_path.empty())
    throw EngineError(Err::Resource, "--taxonomy is required");

  Resources res;
  res.taxonomy = load_taxonomy(runner_detail::read_file(cfg.taxonomy_path), cfg.taxonomy_path);
  for (const auto& path : cfg.dictionary_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EngineError(Err::Resource, "cannot open " + path);
    compile_lexicon(res.lexicon, in, path, diags);
  }
  GrammarReader reader(res.taxonomy);
  for (const auto& path : cfg.grammar_paths)
    reader.add_file(runner_detail::read_file(path), path);
  res.grammars = reader.finish();
  return res;
}

/// Parses all resources and prints diagnostics with file:line context.
/// Exit status 0 iff everything is clean.
inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Diagnostics diags;
  try {
    Resources res = load_resources(cfg, diags);
    if (diags.empty()) {
      out << "ok: " << res.lexicon.size() << " dictionary entries, "
          << res.grammars.grammar.graphs().size() << " graphs, "
          << res.grammars.context_rules.size() << " context rules, "
          << res.taxonomy.classes().size() << " classes\n";
      return 0;
    }
  } catch (const EngineError& e) {
    err << e.what() << "\n";
    for (const auto& d : diags.items()) err << d.to_string() << "\n";
    return 1;
  }
  for (const auto& d : diags.items()) err << d.to_string() << "\n";
  return 1;
}

namespace runner_detail {

inline void write_output(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EngineError(Err::Resource, "cannot write " + path);
  out << content;
}

}  // namespace runner_detail

/// Runs the two-pass extraction over the input document and writes the
/// selected outputs. Mode `all` writes PREFIX.inline.txt / PREFIX.fiches.txt
/// / PREFIX.stats.txt next to --out PREFIX; single modes write to --out (or
/// standard output). Deterministic across runs.
inline int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                   std::istream* input_override = nullptr) {
  Diagnostics diags;
  try {
    Resources res = load_resources(cfg, diags);
    for (const auto& d : diags.items()) err << d.to_string() << "\n";

    std::string text;
    if (input_override) {
      std::ostringstream ss;
      ss << input_override->rdbuf();
      text = ss.str();
    } else if (cfg.input_path) {
      text = runner_detail::read_file(*cfg.input_path);
    } else {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    }

    ExtractionResult result = extract(text, res.engine());
    std::vector<Annotation> selected;
    selected.reserve(result.annotations.size());
    for (const auto& a : result.annotations)
      if (a.recognized() || cfg.include_unrecognized) selected.push_back(a);

    auto render = [&](OutputMode mode) {
      switch (mode) {
        case OutputMode::Inline:
          return emit_inline(text, selected);
        case OutputMode::Fiches:
          return emit_fiches(result.annotations, res.taxonomy, cfg.include_unrecognized);
        case OutputMode::Stats:
          return emit_stats(result);
        case OutputMode::All:
          break;
      }
      return std::string();
    };

    if (cfg.mode == OutputMode::All) {
      if (!cfg.out_path)
        throw EngineError(Err::Resource, "--mode all requires --out PREFIX");
      runner_detail::write_output(*cfg.out_path + ".inline.txt", render(OutputMode::Inline));
      runner_detail::write_output(*cfg.out_path + ".fiches.txt", render(OutputMode::Fiches));
      runner_detail::write_output(*cfg.out_path + ".stats.txt", render(OutputMode::Stats));
    } else if (cfg.out_path) {
      runner_detail::write_output(*cfg.out_path, render(cfg.mode));
    } else {
      out << render(cfg.mode);
    }
    return 0;
  } catch (const EngineError& e) {
    err << e.what() << "\n";
    for (const auto& d : diags.items()) err << d.to_string() << "\n";
    return 1;
  }
}

}  // namespace entex
