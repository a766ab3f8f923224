#pragma once

// Entity typology: classes, each with a tree of types/subtypes and an
// attribute schema. Loaded from an indentation-based config:
//
//   class NAME
//     attr NAME: string|integer|decimal
//     Type
//       Subtype
//
// '#' starts a comment. Names may contain spaces but not '#' or ':'.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entex/errors.hpp"

namespace entex {

enum class ValueKind { String, Integer, Decimal };

inline const char* value_kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::String:  return "string";
    case ValueKind::Integer: return "integer";
    case ValueKind::Decimal: return "decimal";
  }
  return "?";
}

struct AttrDef {
  std::string name;
  ValueKind kind = ValueKind::String;
};

struct TypeNode {
  std::string name;
  std::vector<TypeNode> children;
};

struct ClassDef {
  std::string name;
  std::vector<AttrDef> attributes;
  std::vector<TypeNode> types;
};

/// A validated entity type: class plus a (possibly empty) path into that
/// class's type tree. The attribute schema lives on the class.
struct NEType {
  std::string class_name;
  std::vector<std::string> type_path;

  bool operator==(const NEType&) const = default;

  std::string to_string() const {
    std::string s = class_name;
    for (const auto& p : type_path) {
      s += '.';
      s += p;
    }
    return s;
  }
};

class Taxonomy {
 public:
  const std::vector<ClassDef>& classes() const { return classes_; }

  const ClassDef* find_class(std::string_view name) const {
    for (const auto& c : classes_)
      if (c.name == name) return &c;
    return nullptr;
  }

  const AttrDef* find_attr(std::string_view class_name, std::string_view attr) const {
    const ClassDef* c = find_class(class_name);
    if (!c) return nullptr;
    for (const auto& a : c->attributes)
      if (a.name == attr) return &a;
    return nullptr;
  }

  bool has_path(std::string_view class_name, std::span<const std::string> path) const {
    const ClassDef* c = find_class(class_name);
    if (!c) return false;
    const std::vector<TypeNode>* level = &c->types;
    for (const auto& name : path) {
      const TypeNode* found = nullptr;
      for (const auto& n : *level)
        if (n.name == name) { found = &n; break; }
      if (!found) return false;
      level = &found->children;
    }
    return true;
  }

  NEType validate_type(std::string_view class_name, std::vector<std::string> path) const {
    if (!find_class(class_name))
      throw EngineError(Err::UnknownClass, "unknown class \"" + std::string(class_name) + "\"");
    if (!has_path(class_name, path)) {
      NEType t{std::string(class_name), path};
      throw EngineError(Err::UnknownPath, "no type \"" + t.to_string() + "\" in the taxonomy");
    }
    return NEType{std::string(class_name), std::move(path)};
  }

  void add_class(ClassDef c) {
    if (find_class(c.name))
      throw EngineError(Err::DuplicateName, "class \"" + c.name + "\" declared twice");
    classes_.push_back(std::move(c));
  }

 private:
  std::vector<ClassDef> classes_;
};

namespace taxonomy_detail {

inline std::string_view strip_comment(std::string_view line) {
  std::size_t h = line.find('#');
  return h == std::string_view::npos ? line : line.substr(0, h);
}

inline std::string_view rtrim(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline ValueKind parse_kind(std::string_view s, std::string_view file, std::size_t lineno) {
  if (s == "string") return ValueKind::String;
  if (s == "integer") return ValueKind::Integer;
  if (s == "decimal") return ValueKind::Decimal;
  throw EngineError(Err::UnknownValueKind, "unknown value kind \"" + std::string(s) + "\"",
                    std::string(file), lineno);
}

}  // namespace taxonomy_detail

inline Taxonomy load_taxonomy(std::string_view config, std::string_view filename = "<config>") {
  using namespace taxonomy_detail;
  Taxonomy tax;
  ClassDef current;
  bool have_class = false;
  // Stack of (indent, node) for the type tree of the current class.
  std::vector<std::pair<std::size_t, TypeNode*>> stack;

  auto flush = [&]() {
    if (have_class) tax.add_class(std::move(current));
    current = {};
    stack.clear();
  };

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= config.size()) {
    std::size_t eol = config.find('\n', pos);
    if (eol == std::string_view::npos) eol = config.size();
    std::string_view raw = config.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    std::string_view line = rtrim(strip_comment(raw));
    std::size_t indent = 0;
    while (indent < line.size() && (line[indent] == ' ' || line[indent] == '\t')) ++indent;
    std::string_view body = line.substr(indent);
    if (body.empty()) {
      if (eol == config.size()) break;
      continue;
    }

    if (body.starts_with("class ")) {
      if (indent != 0)
        throw EngineError(Err::SyntaxError, "class declaration must not be indented",
                          std::string(filename), lineno);
      flush();
      current.name = std::string(rtrim(body.substr(6)));
      if (current.name.empty())
        throw EngineError(Err::SyntaxError, "empty class name", std::string(filename), lineno);
      have_class = true;
    } else if (body.starts_with("attr ")) {
      if (!have_class)
        throw EngineError(Err::SyntaxError, "attr line before any class",
                          std::string(filename), lineno);
      std::string_view rest = body.substr(5);
      std::size_t colon = rest.find(':');
      if (colon == std::string_view::npos)
        throw EngineError(Err::SyntaxError, "attr line needs \"name: kind\"",
                          std::string(filename), lineno);
      std::string name{rtrim(rest.substr(0, colon))};
      std::string_view kind = rest.substr(colon + 1);
      while (!kind.empty() && kind.front() == ' ') kind.remove_prefix(1);
      if (name.empty())
        throw EngineError(Err::SyntaxError, "empty attribute name", std::string(filename), lineno);
      for (const auto& a : current.attributes)
        if (a.name == name)
          throw EngineError(Err::DuplicateName, "attribute \"" + name + "\" declared twice",
                            std::string(filename), lineno);
      current.attributes.push_back({std::move(name), parse_kind(kind, filename, lineno)});
    } else {
      if (!have_class)
        throw EngineError(Err::SyntaxError, "type line before any class",
                          std::string(filename), lineno);
      if (indent == 0)
        throw EngineError(Err::SyntaxError, "type name must be indented under its class",
                          std::string(filename), lineno);
      while (!stack.empty() && stack.back().first >= indent) stack.pop_back();
      std::vector<TypeNode>* level = stack.empty() ? &current.types : &stack.back().second->children;
      for (const auto& n : *level)
        if (n.name == body)
          throw EngineError(Err::DuplicateName, "type \"" + std::string(body) + "\" declared twice",
                            std::string(filename), lineno);
      level->push_back({std::string(body), {}});
      stack.push_back({indent, &level->back()});
    }
  }
  flush();
  if (tax.classes().empty())
    throw EngineError(Err::EmptyClassSet, "taxonomy declares no classes",
                      std::string(filename));
  return tax;
}

inline std::string serialize_taxonomy(const Taxonomy& tax) {
  std::string out;
  auto emit_nodes = [&](const std::vector<TypeNode>& nodes, std::size_t depth, auto&& self) -> void {
    for (const auto& n : nodes) {
      out.append(2 * depth, ' ');
      out += n.name;
      out += '\n';
      self(n.children, depth + 1, self);
    }
  };
  for (const auto& c : tax.classes()) {
    out += "class ";
    out += c.name;
    out += '\n';
    for (const auto& a : c.attributes) {
      out += "  attr ";
      out += a.name;
      out += ": ";
      out += value_kind_name(a.kind);
      out += '\n';
    }
    emit_nodes(c.types, 1, emit_nodes);
  }
  return out;
}

}  // namespace entex
