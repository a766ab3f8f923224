#pragma once

// Two-pass document extraction: pass 1 applies the grammars, memorizes
// recognized entities in a document-local lexicon and marks unrecognized
// capitalized sequences; pass 2 relabels those sequences from the memorized
// entities. Exactly two passes, no fixpoint.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entex/grammar.hpp"
#include "entex/lexicon.hpp"
#include "entex/matcher.hpp"
#include "entex/taxonomy.hpp"
#include "entex/token.hpp"

namespace entex {

/// A typed (or NON RECONNU) span of the document. Offsets count code points;
/// `surface` is exactly the input slice [start, end). `ne_type` empty means
/// the span is an unrecognized capitalized sequence.
struct Annotation {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::optional<NEType> ne_type;
  std::vector<std::pair<std::string, std::string>> attributes;  // schema order
  Evidence evidence = Evidence::None;
  int pass = 1;

  bool recognized() const { return ne_type.has_value(); }
};

/// Document-local memory of pass-1 grammar annotations, keyed by normalized
/// token surfaces (AllUpper tokens folded to title case, spaces dropped).
class DynamicLexicon {
 public:
  struct Entry {
    NEType type;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::size_t count = 0;
    std::size_t first_offset = 0;
  };

  using Key = std::vector<std::string>;

  static Key normalize(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
    Key key;
    for (std::size_t t = begin; t < end; ++t) {
      if (tokens[t].is_space()) continue;
      if (tokens[t].case_class == CaseClass::AllUpper)
        key.push_back(uni::title_copy(tokens[t].surface));
      else
        key.push_back(tokens[t].surface);
    }
    return key;
  }

  static Key normalize_surface(std::string_view surface) {
    std::vector<Token> toks = tokenize(surface);
    return normalize(toks, 0, toks.size());
  }

  void insert(Key key, const NEType& type,
              const std::vector<std::pair<std::string, std::string>>& attributes,
              std::size_t offset) {
    if (key.empty()) return;
    auto& entries = map_[key];
    for (auto& e : entries) {
      if (e.type == type) {
        ++e.count;
        e.first_offset = std::min(e.first_offset, offset);
        return;
      }
    }
    entries.push_back({type, attributes, 1, offset});
  }

  const std::vector<Entry>* find(const Key& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  /// Entries of Person-class keys that `key` is a proper suffix of.
  std::vector<const Entry*> suffix_candidates(const Key& key,
                                              std::string_view person_class) const {
    std::vector<const Entry*> out;
    if (key.empty()) return out;
    for (const auto& [k, entries] : map_) {
      if (k.size() <= key.size()) continue;
      if (!std::equal(key.begin(), key.end(), k.end() - key.size())) continue;
      for (const auto& e : entries)
        if (e.type.class_name == person_class) out.push_back(&e);
    }
    return out;
  }

  const std::map<Key, std::vector<Entry>>& entries() const { return map_; }
  bool empty() const { return map_.empty(); }

 private:
  std::map<Key, std::vector<Entry>> map_;
};

struct ClassStats {
  std::size_t pass1 = 0;
  std::size_t pass2 = 0;

  std::size_t total() const { return pass1 + pass2; }
};

struct ExtractionResult {
  std::vector<Annotation> annotations;  // sorted by start, non-overlapping
  std::vector<std::pair<std::string, ClassStats>> stats;  // taxonomy class order
  DynamicLexicon dynamic_lexicon;
  std::size_t unrecognized = 0;  // NON RECONNU spans left after pass 2
};

struct EngineConfig {
  const Taxonomy* taxonomy = nullptr;
  const Lexicon* lexicon = nullptr;
  const Grammar* grammar = nullptr;
  const std::vector<ContextRule>* context_rules = nullptr;

  /// Class propagated to bare suffixes of memorized keys (surname case).
  std::string person_class = "Person";
};

namespace pipeline_detail {

inline std::pair<std::size_t, std::size_t> trimmed_span(const Match& m) {
  if (auto ne = m.capture("ne")) return *ne;
  return {m.start, m.end};
}

inline std::string join_surfaces(const std::vector<Token>& tokens, std::size_t begin,
                                 std::size_t end) {
  std::string s;
  for (std::size_t t = begin; t < end; ++t) s += tokens[t].surface;
  return s;
}

inline Annotation annotation_from_match(const Match& m, const std::vector<Token>& tokens,
                                        const Taxonomy& tax) {
  auto [tb, te] = trimmed_span(m);
  Annotation a;
  a.start = tokens[tb].start;
  a.end = tokens[te - 1].end;
  a.surface = join_surfaces(tokens, tb, te);
  a.ne_type = m.type;
  a.evidence = m.evidence;
  a.pass = 1;
  const ClassDef* cls = tax.find_class(m.type.class_name);
  if (!cls || !tax.has_path(m.type.class_name, m.type.type_path))
    throw EngineError(Err::UnknownType,
                      "annotation type " + m.type.to_string() + " is not in the taxonomy");
  {
    for (const auto& attr : cls->attributes) {
      for (const auto& [name, var] : m.rule->bindings) {
        if (name != attr.name) continue;
        if (auto range = m.capture(var))
          a.attributes.emplace_back(name, join_surfaces(tokens, range->first, range->second));
        break;
      }
      if (attr.name == "expansion" && !m.expansion.empty() &&
          !std::any_of(a.attributes.begin(), a.attributes.end(),
                       [](const auto& kv) { return kv.first == "expansion"; }))
        a.attributes.emplace_back("expansion", m.expansion);
    }
  }
  return a;
}

}  // namespace pipeline_detail

struct PassOneResult {
  std::vector<Token> tokens;
  std::vector<Sentence> sentences;
  std::vector<Annotation> annotations;  // sorted by start
  DynamicLexicon dynamic_lexicon;
};

inline PassOneResult pass_one(std::string_view text, const Grammar& grammar,
                              const std::vector<ContextRule>& context_rules,
                              const Lexicon& lexicon, const Taxonomy& taxonomy) {
  PassOneResult out;
  out.tokens = tokenize(text);
  out.sentences = split_sentences(out.tokens);

  std::vector<Match> matches = apply_grammars(grammar, out.tokens, out.sentences, lexicon);
  apply_context_rules(context_rules, matches, grammar, out.tokens, out.sentences, lexicon);

  std::vector<bool> covered(out.tokens.size(), false);
  for (const Match& m : matches) {
    Annotation a = pipeline_detail::annotation_from_match(m, out.tokens, taxonomy);
    auto [tb, te] = pipeline_detail::trimmed_span(m);
    for (std::size_t t = tb; t < te; ++t) covered[t] = true;
    out.dynamic_lexicon.insert(DynamicLexicon::normalize(out.tokens, tb, te), *a.ne_type,
                               a.attributes, a.start);
    out.annotations.push_back(std::move(a));
  }

  // Unrecognized capitalized sequences: maximal runs of capital-initial words
  // (spaces in between allowed), inside one sentence, clear of annotations.
  for (const Sentence& sent : out.sentences) {
    std::size_t first_word = sent.end;
    for (std::size_t t = sent.begin; t < sent.end; ++t) {
      if (out.tokens[t].kind == TokenKind::Word || out.tokens[t].kind == TokenKind::Number) {
        first_word = t;
        break;
      }
    }
    std::size_t t = sent.begin;
    while (t < sent.end) {
      if (!starts_uppercase(out.tokens[t]) || covered[t]) { ++t; continue; }
      std::size_t run_begin = t;
      std::size_t run_end = t + 1;  // token past the last run member
      std::size_t probe = t + 1;
      while (probe < sent.end) {
        if (out.tokens[probe].is_space()) { ++probe; continue; }
        if (starts_uppercase(out.tokens[probe]) && !covered[probe]) {
          run_end = probe + 1;
          ++probe;
          continue;
        }
        break;
      }
      std::size_t words = 0;
      for (std::size_t u = run_begin; u < run_end; ++u)
        if (!out.tokens[u].is_space()) ++words;
      bool exempt = false;
      if (words == 1 && run_begin == first_word &&
          out.tokens[run_begin].case_class == CaseClass::UpperFirst &&
          lexicon.has_common_word(uni::lower_copy(out.tokens[run_begin].surface)))
        exempt = true;
      if (!exempt) {
        Annotation a;
        a.start = out.tokens[run_begin].start;
        a.end = out.tokens[run_end - 1].end;
        a.surface = pipeline_detail::join_surfaces(out.tokens, run_begin, run_end);
        a.ne_type = std::nullopt;
        a.evidence = Evidence::None;
        a.pass = 1;
        out.annotations.push_back(std::move(a));
      }
      t = run_end;
    }
  }

  std::sort(out.annotations.begin(), out.annotations.end(),
            [](const Annotation& a, const Annotation& b) { return a.start < b.start; });
  return out;
}

/// Relabels NON RECONNU sequences whose normalized key matches a memorized
/// entity exactly, or is the bare suffix of memorized Person-class keys.
/// Ambiguity resolves to the highest count, then the earliest first offset.
inline std::vector<Annotation> pass_two(std::string_view /*text*/,
                                        std::vector<Annotation> annotations,
                                        const DynamicLexicon& dyn,
                                        std::string_view person_class = "Person") {
  for (Annotation& a : annotations) {
    if (a.recognized()) continue;
    DynamicLexicon::Key key = DynamicLexicon::normalize_surface(a.surface);
    std::vector<const DynamicLexicon::Entry*> candidates;
    if (const auto* exact = dyn.find(key)) {
      for (const auto& e : *exact) candidates.push_back(&e);
    } else {
      candidates = dyn.suffix_candidates(key, person_class);
    }
    if (candidates.empty()) continue;
    const DynamicLexicon::Entry* pick = candidates.front();
    for (const auto* c : candidates) {
      if (c->count > pick->count ||
          (c->count == pick->count && c->first_offset < pick->first_offset))
        pick = c;
    }
    a.ne_type = pick->type;
    a.attributes = pick->attributes;
    a.evidence = Evidence::Propagated;
    a.pass = 2;
  }
  return annotations;
}

inline ExtractionResult extract(std::string_view text, const EngineConfig& cfg) {
  PassOneResult p1 = pass_one(text, *cfg.grammar, *cfg.context_rules, *cfg.lexicon,
                              *cfg.taxonomy);
  ExtractionResult result;
  result.annotations = pass_two(text, std::move(p1.annotations), p1.dynamic_lexicon,
                                cfg.person_class);
  result.dynamic_lexicon = std::move(p1.dynamic_lexicon);
  for (const auto& cls : cfg.taxonomy->classes()) result.stats.emplace_back(cls.name, ClassStats{});
  for (const Annotation& a : result.annotations) {
    if (!a.recognized()) {
      ++result.unrecognized;
      continue;
    }
    for (auto& [name, st] : result.stats) {
      if (name == a.ne_type->class_name) {
        if (a.pass == 1) ++st.pass1;
        else ++st.pass2;
        break;
      }
    }
  }
  return result;
}

}  // namespace entex
