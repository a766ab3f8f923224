// Command-line front end: wires dictionaries, taxonomy and grammars into the
// extraction pipeline.
//
//   entex check --dict d.dic --taxonomy t.conf --grammar g.lg
//   entex run   --dict d.dic --taxonomy t.conf --grammar g.lg
//               --mode inline|fiches|stats|all [--out PATH] [INPUT]
//
// Exit codes: 0 success, 1 resource error, 2 usage error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entex/runner.hpp"

namespace {

void add_resource_flags(CLI::App* cmd, entex::RunConfig& cfg) {
  cmd->add_option("--dict", cfg.dictionary_paths, "dictionary file (repeatable)")
      ->required()
      ->type_name("PATH");
  cmd->add_option("--taxonomy", cfg.taxonomy_path, "taxonomy config file")
      ->required()
      ->type_name("PATH");
  cmd->add_option("--grammar", cfg.grammar_paths, "grammar file (repeatable)")
      ->required()
      ->type_name("PATH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rule-based named-entity extraction over electronic dictionaries "
               "and local grammars"};
  app.require_subcommand(1);

  entex::RunConfig check_cfg;
  CLI::App* check = app.add_subcommand("check", "parse and validate all resources");
  add_resource_flags(check, check_cfg);

  entex::RunConfig run_cfg;
  std::string mode = "inline";
  std::string input;
  CLI::App* run = app.add_subcommand("run", "extract entities from a document");
  add_resource_flags(run, run_cfg);
  run->add_option("--mode", mode, "inline|fiches|stats|all")
      ->check(CLI::IsMember({"inline", "fiches", "stats", "all"}));
  run->add_flag("--keep-unrecognized", run_cfg.include_unrecognized,
                "keep NON RECONNU sequences in the output");
  run->add_option("--out", run_cfg.out_path,
                  "output path (mode=all: prefix for .inline.txt/.fiches.txt/.stats.txt)")
      ->type_name("PATH");
  run->add_option("input", input, "input document (default: standard input)")
      ->type_name("PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed())
      return entex::cmd_check(check_cfg, std::cout, std::cerr);

    run_cfg.mode = *entex::parse_output_mode(mode);
    if (!input.empty()) run_cfg.input_path = input;
    if (run_cfg.mode == entex::OutputMode::All && !run_cfg.out_path) {
      std::cerr << "--mode all requires --out PREFIX\n";
      return 2;
    }
    return entex::cmd_run(run_cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
