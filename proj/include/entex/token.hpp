#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "entex/unicode.hpp"

namespace entex {

enum class TokenKind { Word, Number, Punct, Space };

enum class CaseClass { Lower, UpperFirst, AllUpper, Mixed, NotApplicable };

inline const char* case_name(CaseClass c) {
  switch (c) {
    case CaseClass::Lower:         return "Lower";
    case CaseClass::UpperFirst:    return "UpperFirst";
    case CaseClass::AllUpper:      return "AllUpper";
    case CaseClass::Mixed:         return "Mixed";
    case CaseClass::NotApplicable: return "NotApplicable";
  }
  return "?";
}

/// One surface token. Offsets count Unicode code points; token spans are
/// disjoint and concatenating surfaces in order reproduces the input.
struct Token {
  std::string surface;
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  TokenKind kind = TokenKind::Punct;
  CaseClass case_class = CaseClass::NotApplicable;

  bool is_word() const { return kind == TokenKind::Word; }
  bool is_space() const { return kind == TokenKind::Space; }
};

/// Case class of a word surface, apostrophes ignored.
inline CaseClass classify_case(std::string_view surface) {
  uni::Decoded d = uni::decode(surface);
  std::size_t letters = 0;
  bool first_upper = false, all_upper = true, all_lower = true, rest_lower = true;
  for (char32_t c : d.cps) {
    if (!uni::is_letter(c)) continue;
    bool up = uni::is_upper(c), lo = uni::is_lower(c);
    if (letters == 0) first_upper = up;
    else if (!lo) rest_lower = false;
    all_upper = all_upper && up;
    all_lower = all_lower && lo;
    ++letters;
  }
  if (letters == 0) return CaseClass::Mixed;
  if (all_upper) return CaseClass::AllUpper;
  if (first_upper && letters >= 2 && rest_lower) return CaseClass::UpperFirst;
  if (all_lower) return CaseClass::Lower;
  return CaseClass::Mixed;
}

/// True for Word tokens whose first letter is uppercase (covers UpperFirst,
/// AllUpper and capital-initial apostrophe words like N'Djamena).
inline bool starts_uppercase(const Token& t) {
  if (t.kind != TokenKind::Word) return false;
  uni::Decoded d = uni::decode(t.surface);
  for (char32_t c : d.cps)
    if (uni::is_letter(c)) return uni::is_upper(c);
  return false;
}

inline bool has_internal_apostrophe(std::string_view surface) {
  uni::Decoded d = uni::decode(surface);
  for (std::size_t i = 1; i + 1 < d.cps.size(); ++i)
    if (uni::is_apostrophe(d.cps[i])) return true;
  return false;
}

/// Splits text into Word / Number / Punct / Space tokens. An apostrophe
/// between two letters stays inside the word ("N'Djamena", "d'Orsay");
/// hyphens split; digit runs form Number tokens; whitespace runs collapse
/// into one Space token; anything else is a one-character Punct token.
/// Total on arbitrary byte strings: invalid UTF-8 bytes pass through as
/// single Punct tokens.
inline std::vector<Token> tokenize(std::string_view text) {
  uni::Decoded d = uni::decode(text);
  const std::size_t n = d.cps.size();
  std::vector<Token> out;
  std::size_t i = 0;
  auto slice = [&](std::size_t a, std::size_t b) {
    return std::string(text.substr(d.byte_of[a], d.byte_of[b] - d.byte_of[a]));
  };
  while (i < n) {
    char32_t c = d.cps[i];
    std::size_t j = i;
    Token t;
    if (uni::is_letter(c)) {
      while (j < n) {
        if (uni::is_letter(d.cps[j])) { ++j; continue; }
        if (uni::is_apostrophe(d.cps[j]) && j + 1 < n && uni::is_letter(d.cps[j + 1])) { ++j; continue; }
        break;
      }
      t.kind = TokenKind::Word;
    } else if (uni::is_digit(c)) {
      while (j < n && uni::is_digit(d.cps[j])) ++j;
      t.kind = TokenKind::Number;
    } else if (uni::is_space(c)) {
      while (j < n && uni::is_space(d.cps[j])) ++j;
      t.kind = TokenKind::Space;
    } else {
      j = i + 1;
      t.kind = TokenKind::Punct;
    }
    t.surface = slice(i, j);
    t.start = i;
    t.end = j;
    t.case_class = t.kind == TokenKind::Word ? classify_case(t.surface)
                                             : CaseClass::NotApplicable;
    out.push_back(std::move(t));
    i = j;
  }
  return out;
}

/// Contiguous token range [begin, end).
struct Sentence {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Sentence boundaries: after {. ! ? …} followed by whitespace and an
/// UpperFirst/AllUpper word, and after blank lines. A text without
/// terminators is a single sentence.
inline std::vector<Sentence> split_sentences(const std::vector<Token>& tokens) {
  std::vector<Sentence> out;
  if (tokens.empty()) return out;
  auto is_terminator = [](const Token& t) {
    return t.kind == TokenKind::Punct &&
           (t.surface == "." || t.surface == "!" || t.surface == "?" ||
            t.surface == "…");
  };
  auto blank_line = [](const Token& t) {
    if (t.kind != TokenKind::Space) return false;
    int newlines = 0;
    for (char ch : t.surface)
      if (ch == '\n') ++newlines;
    return newlines >= 2;
  };
  std::size_t begin = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bool boundary = false;
    if (is_terminator(tokens[i]) && i + 2 < tokens.size() &&
        tokens[i + 1].kind == TokenKind::Space &&
        tokens[i + 2].kind == TokenKind::Word &&
        (tokens[i + 2].case_class == CaseClass::UpperFirst ||
         tokens[i + 2].case_class == CaseClass::AllUpper)) {
      boundary = true;
    } else if (blank_line(tokens[i])) {
      boundary = true;
    }
    if (boundary && i + 1 > begin) {
      out.push_back({begin, i + 1});
      begin = i + 1;
    }
  }
  if (begin < tokens.size()) out.push_back({begin, tokens.size()});
  return out;
}

}  // namespace entex
