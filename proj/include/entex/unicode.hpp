#pragma once

// Minimal UTF-8 and case machinery, Latin-script oriented. Covers ASCII,
// Latin-1 Supplement, Latin Extended-A, plus basic Greek and Cyrillic case
// pairs. Codepoints outside the tables are treated as caseless; scripts not
// listed in is_letter are treated as symbols.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace entex::uni {

// Lenient decode: every byte of an invalid sequence becomes its own unit
// (sentinel 0x110000+byte), so byte-exact reconstruction is always possible.
struct Decoded {
  std::u32string cps;
  std::vector<std::size_t> byte_of;  // size cps.size()+1, byte_of.back() = text size
};

inline Decoded decode(std::string_view text) {
  Decoded d;
  d.cps.reserve(text.size());
  d.byte_of.reserve(text.size() + 1);
  std::size_t i = 0, n = text.size();
  while (i < n) {
    d.byte_of.push_back(i);
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0; len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F; len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F; len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07; len = 4;
    } else {
      len = 0;
    }
    bool ok = len > 0 && i + len <= n;
    if (ok) {
      for (std::size_t k = 1; k < len; ++k) {
        unsigned char bk = static_cast<unsigned char>(text[i + k]);
        if ((bk & 0xC0) != 0x80) { ok = false; break; }
        cp = (cp << 6) | (bk & 0x3F);
      }
    }
    if (ok && len == 2 && cp < 0x80) ok = false;          // overlong
    if (ok && len == 3 && cp < 0x800) ok = false;
    if (ok && len == 4 && cp < 0x10000) ok = false;
    if (ok && (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
    if (!ok) {
      d.cps.push_back(0x110000 + b0);  // raw-byte sentinel
      i += 1;
    } else {
      d.cps.push_back(cp);
      i += len;
    }
  }
  d.byte_of.push_back(n);
  return d;
}

inline void encode_to(char32_t cp, std::string& out) {
  if (cp >= 0x110000) {                 // raw-byte sentinel from lenient decode
    out.push_back(static_cast<char>(cp - 0x110000));
  } else if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(char32_t cp) {
  std::string s;
  encode_to(cp, s);
  return s;
}

inline bool is_space(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

inline bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

inline bool is_apostrophe(char32_t c) { return c == 0x27 || c == 0x2019; }

namespace detail {

// Latin Extended-A irregularities; everything else in 0x100..0x17F pairs up
// by parity per the blocks below.
inline bool latin_ext_a_upper(char32_t c) {
  if (c == 0x130) return true;   // I with dot
  if (c == 0x131 || c == 0x138 || c == 0x149 || c == 0x17F) return false;
  if (c == 0x178) return true;   // Y with diaeresis
  if (c <= 0x137) return (c & 1) == 0;
  if (c <= 0x148) return (c & 1) == 1;
  if (c <= 0x177) return (c & 1) == 0;
  return (c & 1) == 1;           // 0x179..0x17E
}

}  // namespace detail

inline bool is_upper(char32_t c) {
  if (c >= 'A' && c <= 'Z') return true;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return true;
  if (c >= 0x100 && c <= 0x17F) return detail::latin_ext_a_upper(c);
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return true;   // Greek
  if (c >= 0x400 && c <= 0x42F) return true;                 // Cyrillic
  return false;
}

inline bool is_lower(char32_t c) {
  if (c >= 'a' && c <= 'z') return true;
  if (c == 0xB5 || c == 0xAA || c == 0xBA) return true;
  if (c >= 0xDF && c <= 0xFF && c != 0xF7) return true;
  if (c >= 0x100 && c <= 0x17F) return !detail::latin_ext_a_upper(c);
  if (c >= 0x3B1 && c <= 0x3C9) return true;
  if (c >= 0x430 && c <= 0x45F) return true;
  return false;
}

inline bool is_letter(char32_t c) {
  if (is_upper(c) || is_lower(c)) return true;
  if (c >= 0x180 && c <= 0x24F) return true;    // Latin Extended-B, caseless here
  if (c >= 0x370 && c <= 0x3FF) return c != 0x3A2 && c != 0x375 && c != 0x37E && c != 0x384 && c != 0x385 && c != 0x387;
  if (c >= 0x400 && c <= 0x4FF) return true;
  if (c >= 0x5D0 && c <= 0x5EA) return true;    // Hebrew
  if (c >= 0x620 && c <= 0x64A) return true;    // Arabic
  if (c >= 0x3041 && c <= 0x3096) return true;  // Hiragana
  if (c >= 0x30A1 && c <= 0x30FA) return true;  // Katakana
  if (c >= 0x4E00 && c <= 0x9FFF) return true;  // CJK
  if (c >= 0xAC00 && c <= 0xD7A3) return true;  // Hangul
  return false;
}

inline char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return 'i';
    if (c == 0x178) return 0xFF;
    if (is_upper(c)) return c + 1;
    return c;
  }
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  return c;
}

inline char32_t to_upper(char32_t c) {
  if (c >= 'a' && c <= 'z') return c - 0x20;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 0x20;
  if (c == 0xFF) return 0x178;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x131) return 'I';
    if (c == 0x17F) return 'S';
    if (c == 0x138 || c == 0x149) return c;
    if (is_lower(c)) return c - 1;
    return c;
  }
  if (c == 0x3C2) return 0x3A3;
  if (c >= 0x3B1 && c <= 0x3C9) return c - 0x20;
  if (c >= 0x450 && c <= 0x45F) return c - 0x50;
  if (c >= 0x430 && c <= 0x44F) return c - 0x20;
  return c;
}

inline std::string lower_copy(std::string_view s) {
  Decoded d = decode(s);
  std::string out;
  out.reserve(s.size());
  for (char32_t c : d.cps) encode_to(to_lower(c), out);
  return out;
}

/// First letter uppercased, every other letter lowercased.
inline std::string title_copy(std::string_view s) {
  Decoded d = decode(s);
  std::string out;
  out.reserve(s.size());
  bool first = true;
  for (char32_t c : d.cps) {
    if (is_letter(c)) {
      encode_to(first ? to_upper(c) : to_lower(c), out);
      first = false;
    } else {
      encode_to(c, out);
    }
  }
  return out;
}

}  // namespace entex::uni
