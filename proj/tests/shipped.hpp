#pragma once

// Paths to the sample resources shipped under data/.

#include <string>
#include <vector>

#include "entex/runner.hpp"

namespace shipped {

inline entex::RunConfig config(const std::string& data_dir) {
  entex::RunConfig cfg;
  for (const char* d : {"prenoms.dic", "toponymes.dic", "gentiles.dic", "professions.dic",
                        "sigles.dic", "general.dic", "composes.dic"})
    cfg.dictionary_paths.push_back(data_dir + "/dict/" + d);
  cfg.taxonomy_path = data_dir + "/taxonomy.conf";
  for (const char* g : {"persons.lg", "organizations.lg", "locations.lg", "dates.lg",
                        "context.lg"})
    cfg.grammar_paths.push_back(data_dir + "/grammars/" + g);
  return cfg;
}

}  // namespace shipped
