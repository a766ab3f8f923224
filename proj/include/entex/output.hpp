#pragma once

// Serializers: inline-delimited text, fiche records, category statistics.
// Inline and fiche formats are byte-exact contracts covered by golden files.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "entex/errors.hpp"
#include "entex/pipeline.hpp"
#include "entex/taxonomy.hpp"
#include "entex/unicode.hpp"

namespace entex {

inline const char* kUnrecognizedLabel = "NonReconnu";

/// Per-entity record mirroring one annotation.
struct Fiche {
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string class_name;  // kUnrecognizedLabel for NON RECONNU spans
  std::vector<std::string> type_path;
  std::vector<std::pair<std::string, std::string>> attributes;
  Evidence evidence = Evidence::None;
  int pass = 1;
};

inline Fiche make_fiche(const Annotation& a, const Taxonomy& tax) {
  Fiche f;
  f.surface = a.surface;
  f.start = a.start;
  f.end = a.end;
  f.pass = a.pass;
  f.evidence = a.evidence;
  if (!a.ne_type) {
    f.class_name = kUnrecognizedLabel;
    return f;
  }
  f.class_name = a.ne_type->class_name;
  f.type_path = a.ne_type->type_path;
  for (const auto& [name, value] : a.attributes) {
    if (!tax.find_attr(f.class_name, name))
      throw EngineError(Err::SchemaViolation,
                        "attribute \"" + name + "\" is not in the schema of class " +
                            f.class_name);
    f.attributes.emplace_back(name, value);
  }
  return f;
}

/// Wraps each annotation in {type=LABEL} ... {/}. Literal '{' in the source
/// text is escaped as '{{' so stripping the delimiters is an exact inverse.
inline std::string emit_inline(std::string_view text,
                               const std::vector<Annotation>& annotations) {
  uni::Decoded d = uni::decode(text);
  std::string out;
  out.reserve(text.size() + annotations.size() * 16);
  std::size_t next = 0;  // next annotation to open
  std::vector<std::size_t> close_at;  // single element in practice (no overlaps)
  for (std::size_t cp = 0; cp <= d.cps.size(); ++cp) {
    while (!close_at.empty() && close_at.back() == cp) {
      out += "{/}";
      close_at.pop_back();
    }
    while (next < annotations.size() && annotations[next].start == cp) {
      const Annotation& a = annotations[next];
      out += "{type=";
      out += a.ne_type ? a.ne_type->to_string() : kUnrecognizedLabel;
      out += "}";
      close_at.push_back(a.end);
      ++next;
    }
    if (cp == d.cps.size()) break;
    if (d.cps[cp] == U'{') out += "{{";
    else uni::encode_to(d.cps[cp], out);
  }
  return out;
}

/// Inverse of emit_inline: removes {type=...} / {/} delimiters and unescapes
/// '{{'.
inline std::string strip_inline(std::string_view annotated) {
  std::string out;
  out.reserve(annotated.size());
  std::size_t i = 0;
  while (i < annotated.size()) {
    if (annotated[i] == '{') {
      if (i + 1 < annotated.size() && annotated[i + 1] == '{') {
        out.push_back('{');
        i += 2;
        continue;
      }
      std::size_t close = annotated.find('}', i);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    out.push_back(annotated[i++]);
  }
  return out;
}

/// One block per annotation, blank-line separated, fixed key order:
/// surface, start, end, class, type, attr lines, evidence, pass.
/// NON RECONNU records appear only when include_unrecognized is set and
/// carry no type/attr/evidence lines.
inline std::string emit_fiches(const std::vector<Annotation>& annotations,
                               const Taxonomy& taxonomy,
                               bool include_unrecognized = false) {
  std::string out;
  bool first = true;
  for (const Annotation& a : annotations) {
    if (!a.recognized() && !include_unrecognized) continue;
    Fiche f = make_fiche(a, taxonomy);
    if (!first) out += "\n";
    first = false;
    out += "fiche\n";
    out += "  surface: " + f.surface + "\n";
    out += "  start: " + std::to_string(f.start) + "\n";
    out += "  end: " + std::to_string(f.end) + "\n";
    out += "  class: " + f.class_name + "\n";
    if (a.recognized()) {
      std::string path;
      for (const auto& p : f.type_path) {
        if (!path.empty()) path += '.';
        path += p;
      }
      out += "  type:" + (path.empty() ? std::string() : " " + path) + "\n";
      for (const auto& [name, value] : f.attributes)
        out += "  attr " + name + ": " + value + "\n";
      out += "  evidence: " + std::string(evidence_name(f.evidence)) + "\n";
    }
    out += "  pass: " + std::to_string(f.pass) + "\n";
  }
  return out;
}

/// One line per taxonomy class: name, pass-1 count, pass-2 count, total;
/// then a TOTAL line.
inline std::string emit_stats(const ExtractionResult& result) {
  std::string out;
  ClassStats total;
  for (const auto& [name, st] : result.stats) {
    out += name + " " + std::to_string(st.pass1) + " " + std::to_string(st.pass2) + " " +
           std::to_string(st.total()) + "\n";
    total.pass1 += st.pass1;
    total.pass2 += st.pass2;
  }
  out += "TOTAL " + std::to_string(total.pass1) + " " + std::to_string(total.pass2) + " " +
         std::to_string(total.total()) + "\n";
  return out;
}

}  // namespace entex
