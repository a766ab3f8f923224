#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entex/delaf.hpp"
#include "entex/errors.hpp"
#include "entex/token.hpp"

namespace entex {

/// Constraint over dictionary codes, as written in grammar masks.
/// Inflection codes live in the same namespace as features.
struct LexicalMask {
  std::optional<std::string> pos;
  std::vector<std::string> required;
  std::vector<std::string> forbidden;
  std::optional<std::string> lemma;
};

inline bool match_mask(const DictEntry& e, const LexicalMask& m) {
  if (m.pos && *m.pos != e.pos) return false;
  if (m.lemma && *m.lemma != e.lemma) return false;
  for (const auto& f : m.required)
    if (!e.has_feature(f)) return false;
  for (const auto& f : m.forbidden)
    if (e.has_feature(f)) return false;
  return true;
}

struct LookupOptions {
  bool sentence_initial = false;  // token i starts its sentence
};

/// Immutable after compilation; entries are keyed by the token sequence of
/// their form (Space tokens dropped), so compounds match across spaces.
class Lexicon {
 public:
  struct Hit {
    std::size_t length = 0;  // tokens consumed from the query position
    const DictEntry* entry = nullptr;
    std::size_t entry_idx = 0;
    bool folded = false;     // matched through a case-folded retry
    bool elided = false;     // matched the sub-form after an apostrophe
  };

  void insert(DictEntry entry) {
    std::vector<std::string> key = key_of(entry.form);
    if (key.empty())
      throw EngineError(Err::MalformedLine, "form has no tokens: \"" + entry.form + "\"");
    entries_.push_back(std::move(entry));
    std::size_t node = 0;
    for (const auto& part : key) {
      auto it = nodes_[node].kids.find(part);
      if (it == nodes_[node].kids.end()) {
        nodes_.push_back({});
        it = nodes_[node].kids.emplace(part, nodes_.size() - 1).first;
      }
      node = it->second;
    }
    nodes_[node].entries.push_back(entries_.size() - 1);
  }

  std::size_t size() const { return entries_.size(); }

  /// All dictionary matches starting at token i, longest first; exact
  /// matches sort before case-folded ones of the same length. Case-folded
  /// retries are attempted for AllUpper tokens and, when
  /// opts.sentence_initial, for an UpperFirst token at i.
  std::vector<Hit> lookup(const std::vector<Token>& tokens, std::size_t i,
                          const LookupOptions& opts = {}) const {
    std::vector<Hit> hits;
    if (i >= tokens.size() || tokens[i].is_space()) return hits;
    walk(tokens, i, tokens[i].surface, tokens[i].case_class, opts, false, hits);
    sort_hits(hits);
    return hits;
  }

  /// lookup() plus, for a word with an internal apostrophe, a probe on the
  /// sub-form after the first apostrophe ("d'Orsay" -> "Orsay"); those
  /// matches come back flagged elided and sort after direct ones.
  std::vector<Hit> lookup_elided(const std::vector<Token>& tokens, std::size_t i,
                                 const LookupOptions& opts = {}) const {
    std::vector<Hit> hits;
    if (i >= tokens.size() || tokens[i].is_space()) return hits;
    walk(tokens, i, tokens[i].surface, tokens[i].case_class, opts, false, hits);
    if (tokens[i].is_word() && has_internal_apostrophe(tokens[i].surface)) {
      std::string sub = after_first_apostrophe(tokens[i].surface);
      if (!sub.empty())
        walk(tokens, i, sub, classify_case(sub), opts, true, hits);
    }
    sort_hits(hits);
    return hits;
  }

  /// Entries stored under exactly this key sequence (nullptr when absent).
  const std::vector<std::size_t>* find_key(const std::vector<std::string>& key) const {
    std::size_t node = 0;
    for (const auto& part : key) {
      auto it = nodes_[node].kids.find(part);
      if (it == nodes_[node].kids.end()) return nullptr;
      node = it->second;
    }
    return nodes_[node].entries.empty() ? nullptr : &nodes_[node].entries;
  }

  const DictEntry& entry(std::size_t idx) const { return entries_[idx]; }

  /// True when `surface` is listed with at least one entry that does not
  /// carry the proper-noun code PR (ordinary-vocabulary test).
  bool has_common_word(const std::string& surface) const {
    const auto* es = find_key({surface});
    if (!es) return false;
    for (std::size_t idx : *es)
      if (!entries_[idx].has_feature("PR")) return true;
    return false;
  }

  /// Token-sequence key of a form: tokenized, Space tokens dropped.
  static std::vector<std::string> key_of(std::string_view form) {
    std::vector<std::string> key;
    for (auto& t : tokenize(form))
      if (!t.is_space()) key.push_back(std::move(t.surface));
    return key;
  }

 private:
  struct Node {
    std::map<std::string, std::size_t, std::less<>> kids;
    std::vector<std::size_t> entries;
  };

  static std::string after_first_apostrophe(std::string_view surface) {
    uni::Decoded d = uni::decode(surface);
    for (std::size_t k = 0; k < d.cps.size(); ++k)
      if (uni::is_apostrophe(d.cps[k]))
        return std::string(surface.substr(d.byte_of[k + 1]));
    return {};
  }

  // Candidate spellings for one step: exact surface first, then folds.
  static void step_variants(const std::string& surface, CaseClass cc, bool first,
                            const LookupOptions& opts, std::vector<std::string>& out) {
    out.clear();
    out.push_back(surface);
    auto add = [&](std::string v) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    };
    if (cc == CaseClass::AllUpper) {
      add(uni::lower_copy(surface));
      add(uni::title_copy(surface));
    } else if (first && opts.sentence_initial && cc == CaseClass::UpperFirst) {
      add(uni::lower_copy(surface));
    }
  }

  void walk(const std::vector<Token>& tokens, std::size_t i, const std::string& first_surface,
            CaseClass first_case, const LookupOptions& opts, bool elided,
            std::vector<Hit>& hits) const {
    struct Frame {
      std::size_t node;
      std::size_t pos;  // next token index to consume
      bool folded;
    };
    std::vector<Frame> stack;
    std::vector<std::string> variants;

    step_variants(first_surface, first_case, true, opts, variants);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      auto it = nodes_[0].kids.find(variants[v]);
      if (it != nodes_[0].kids.end()) stack.push_back({it->second, i + 1, v > 0});
    }
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      for (std::size_t idx : nodes_[f.node].entries)
        hits.push_back({f.pos - i, &entries_[idx], idx, f.folded, elided});
      std::size_t pos = f.pos;
      while (pos < tokens.size() && tokens[pos].is_space()) ++pos;
      if (pos >= tokens.size() || nodes_[f.node].kids.empty()) continue;
      step_variants(tokens[pos].surface, tokens[pos].case_class, false, opts, variants);
      for (std::size_t v = 0; v < variants.size(); ++v) {
        auto it = nodes_[f.node].kids.find(variants[v]);
        if (it != nodes_[f.node].kids.end())
          stack.push_back({it->second, pos + 1, f.folded || v > 0});
      }
    }
  }

  void sort_hits(std::vector<Hit>& hits) const {
    std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
      if (a.length != b.length) return a.length > b.length;
      if (a.elided != b.elided) return !a.elided;
      if (a.folded != b.folded) return !a.folded;
      return a.entry_idx < b.entry_idx;
    });
    hits.erase(std::unique(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
                 return a.length == b.length && a.entry == b.entry &&
                        a.folded == b.folded && a.elided == b.elided;
               }),
               hits.end());
  }

  std::deque<DictEntry> entries_;
  std::vector<Node> nodes_{Node{}};
};

/// Loads one dictionary stream into `lex`. Blank lines and '#' comments are
/// skipped; malformed lines are collected in `diags` (which aborts past its
/// cap) and the rest of the file is still processed.
inline void compile_lexicon(Lexicon& lex, std::istream& in, std::string_view filename,
                            Diagnostics& diags) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv = line;
    std::size_t ws = sv.find_first_not_of(" \t");
    if (ws == std::string_view::npos) continue;
    if (sv[ws] == '#') continue;
    try {
      lex.insert(parse_delaf_line(sv, filename, lineno));
    } catch (const EngineError& e) {
      if (e.kind() == Err::TooManyErrors) throw;
      diags.add(e);
    }
  }
}

inline Lexicon compile_lexicon(std::istream& in, std::string_view filename,
                               Diagnostics& diags) {
  Lexicon lex;
  compile_lexicon(lex, in, filename, diags);
  return lex;
}

}  // namespace entex
