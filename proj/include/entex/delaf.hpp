#pragma once

// DELAF-style dictionary lines: form,lemma.POS(+FEAT)*(:INFL)*
// An empty lemma field means lemma = form. '\' escapes the separators
// , . + : (and itself) inside fields.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "entex/errors.hpp"

namespace entex {

struct DictEntry {
  std::string form;
  std::string lemma;
  std::string pos;
  std::vector<std::string> features;    // semantic/subcategory codes
  std::vector<std::string> inflection;  // one string per ':' group

  bool has_feature(std::string_view f) const {
    for (const auto& x : features)
      if (x == f) return true;
    for (const auto& x : inflection)
      if (x == f) return true;
    return false;
  }
};

namespace delaf_detail {

inline bool is_separator(char c) {
  return c == ',' || c == '.' || c == '+' || c == ':' || c == '\\';
}

// Position of the first unescaped occurrence of any char in `seps`,
// starting at `from`; npos if none.
inline std::size_t find_unescaped(std::string_view s, std::string_view seps, std::size_t from) {
  for (std::size_t i = from; i < s.size(); ++i) {
    if (s[i] == '\\') { ++i; continue; }
    if (seps.find(s[i]) != std::string_view::npos) return i;
  }
  return std::string_view::npos;
}

inline std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out.push_back(s[i]);
  }
  return out;
}

inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (is_separator(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline void append_dedup(std::vector<std::string>& v, std::string x) {
  for (const auto& e : v)
    if (e == x) return;
  v.push_back(std::move(x));
}

}  // namespace delaf_detail

inline DictEntry parse_delaf_line(std::string_view line, std::string_view file = {},
                                  std::size_t lineno = 0) {
  using namespace delaf_detail;
  auto fail = [&](const std::string& msg) -> DictEntry {
    throw EngineError(Err::MalformedLine, msg + " in \"" + std::string(line) + "\"",
                      std::string(file), lineno);
  };

  std::size_t comma = find_unescaped(line, ",", 0);
  if (comma == std::string_view::npos) return fail("missing ','");
  std::size_t dot = find_unescaped(line, ".", comma + 1);
  if (dot == std::string_view::npos) return fail("missing '.'");

  DictEntry e;
  e.form = unescape(line.substr(0, comma));
  if (e.form.empty()) return fail("empty form");
  e.lemma = unescape(line.substr(comma + 1, dot - comma - 1));
  if (e.lemma.empty()) e.lemma = e.form;

  std::string_view codes = line.substr(dot + 1);
  std::size_t colon = find_unescaped(codes, ":", 0);
  std::string_view gram = codes.substr(0, colon == std::string_view::npos ? codes.size() : colon);

  std::size_t p = 0;
  bool first = true;
  while (p <= gram.size()) {
    std::size_t q = find_unescaped(gram, "+", p);
    if (q == std::string_view::npos) q = gram.size();
    std::string chunk = unescape(gram.substr(p, q - p));
    if (chunk.empty()) return fail(first ? "empty pos" : "empty feature code");
    if (first) e.pos = std::move(chunk);
    else append_dedup(e.features, std::move(chunk));
    first = false;
    if (q == gram.size()) break;
    p = q + 1;
  }

  while (colon != std::string_view::npos) {
    std::size_t next = find_unescaped(codes, ":", colon + 1);
    std::size_t end = next == std::string_view::npos ? codes.size() : next;
    std::string g = unescape(codes.substr(colon + 1, end - colon - 1));
    if (g.empty()) return fail("empty inflection group");
    append_dedup(e.inflection, std::move(g));
    colon = next;
  }
  return e;
}

/// Canonical line for an entry; parse_delaf_line inverts it.
inline std::string serialize(const DictEntry& e) {
  using delaf_detail::escape;
  std::string out = escape(e.form);
  out += ',';
  if (e.lemma != e.form) out += escape(e.lemma);
  out += '.';
  out += escape(e.pos);
  for (const auto& f : e.features) {
    out += '+';
    out += escape(f);
  }
  for (const auto& g : e.inflection) {
    out += ':';
    out += escape(g);
  }
  return out;
}

}  // namespace entex
