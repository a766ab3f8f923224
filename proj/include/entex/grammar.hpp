#pragma once

// Local-grammar DSL compiled to recursive transition networks with output
// types, capture variables and reclassification context rules.
//
//   @graph NAME            starts a graph; one rule per line below it
//   @main NAME...          entry points (default: every graph, file order)
//   @context               starts the reclassification section
//
// Rule:     ELEMENTS [-> TYPE { attr=var, ... } evidence=internal|external]
// Context:  TARGET_TYPE // ELEMENTS => NEW_TYPE
//
// Elements: 'lit' (case-sensitive)  "lit" (case-insensitive)  <MASK>
//           <PRE> <UPPER> <WORD> <NB>  :Graph  $var( ... )  ( a | b )
//           suffixes: ?  +  +N (N <= 8)
//           mask prefixes: ~ (allow elided form)  % (reject case-folded)
// Mask:     <[lemma.]POS(+FEAT|-FEAT|:INFL)*>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entex/errors.hpp"
#include "entex/lexicon.hpp"
#include "entex/taxonomy.hpp"
#include "entex/token.hpp"

namespace entex {

enum class Evidence { None, Internal, External, Propagated, ContextReclassified };

inline const char* evidence_name(Evidence e) {
  switch (e) {
    case Evidence::None:                return "None";
    case Evidence::Internal:            return "Internal";
    case Evidence::External:            return "External";
    case Evidence::Propagated:          return "Propagated";
    case Evidence::ContextReclassified: return "ContextReclassified";
  }
  return "?";
}

enum class CasePattern { Pre, Upper, AnyWord, Number };

struct Element {
  enum class Kind { Literal, Mask, Case, Call, Seq, Alt, Opt, Repeat, Capture };

  Kind kind = Kind::Seq;
  std::string text;            // literal text, call target, or capture variable
  bool case_sensitive = true;  // Literal
  bool allow_elided = false;   // Mask: may match after an elision apostrophe
  bool forbid_folded = false;  // Mask: reject case-folded dictionary hits
  LexicalMask mask;            // Mask
  CasePattern cp = CasePattern::AnyWord;  // Case
  int min = 1, max = 1;        // Repeat
  std::vector<Element> kids;   // Seq/Opt/Repeat/Capture body; Alt branches (each a Seq)
};

struct Rule {
  std::vector<Element> elements;
  std::optional<NEType> output;  // absent: recognition-only (subgraph rule)
  std::vector<std::pair<std::string, std::string>> bindings;  // attribute -> variable
  Evidence evidence = Evidence::Internal;
  int priority = 0;  // global file order
  std::string file;
  std::size_t line = 0;
};

struct Graph {
  std::string name;
  std::vector<Rule> rules;
};

class Grammar {
 public:
  const Graph* find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &graphs_[it->second];
  }

  Graph& add(std::string name) {
    index_[name] = graphs_.size();
    graphs_.push_back({std::move(name), {}});
    return graphs_.back();
  }

  const std::vector<Graph>& graphs() const { return graphs_; }
  const std::vector<std::string>& entry_points() const { return entry_points_; }
  void set_entry_points(std::vector<std::string> eps) { entry_points_ = std::move(eps); }

 private:
  std::vector<Graph> graphs_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> entry_points_;
};

/// Reclassifies annotations of `target` type when the sentence continues
/// with `right_context` immediately after them.
struct ContextRule {
  std::string target_class;
  std::vector<std::string> target_path;  // prefix of the annotation's path
  std::vector<Element> right_context;
  NEType new_type;
  int priority = 0;
  std::string file;
  std::size_t line = 0;

  bool targets(const NEType& t) const {
    if (t.class_name != target_class) return false;
    if (target_path.size() > t.type_path.size()) return false;
    for (std::size_t k = 0; k < target_path.size(); ++k)
      if (target_path[k] != t.type_path[k]) return false;
    return true;
  }
};

struct GrammarSet {
  Grammar grammar;
  std::vector<ContextRule> context_rules;
};

namespace grammar_detail {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  std::string_view file;
  std::size_t line = 0;

  [[noreturn]] void fail(Err kind, const std::string& msg) const {
    throw EngineError(kind, msg, std::string(file), line);
  }
  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!eof() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool at(std::string_view tok) const { return s.substr(pos, tok.size()) == tok; }
  bool eat(std::string_view tok) {
    if (!at(tok)) return false;
    pos += tok.size();
    return true;
  }
};

inline bool name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

inline std::string read_name(Cursor& c, const char* what) {
  std::size_t start = c.pos;
  while (!c.eof() && name_char(c.peek())) ++c.pos;
  if (c.pos == start) c.fail(Err::SyntaxError, std::string("expected ") + what);
  return std::string(c.s.substr(start, c.pos - start));
}

inline std::string read_quoted(Cursor& c, char quote) {
  ++c.pos;  // opening quote
  std::string out;
  while (!c.eof() && c.peek() != quote) {
    if (c.peek() == '\\' && c.pos + 1 < c.s.size()) ++c.pos;
    out.push_back(c.s[c.pos++]);
  }
  if (c.eof()) c.fail(Err::SyntaxError, "unterminated literal");
  ++c.pos;  // closing quote
  if (out.empty()) c.fail(Err::SyntaxError, "empty literal");
  return out;
}

inline LexicalMask parse_mask_body(Cursor& c, std::string_view body) {
  LexicalMask m;
  std::string_view codes = body;
  std::size_t dot = body.find('.');
  if (dot != std::string_view::npos) {
    if (dot > 0) m.lemma = std::string(body.substr(0, dot));
    codes = body.substr(dot + 1);
  }
  std::size_t p = 0;
  char sign = 0;  // 0 = leading pos chunk
  for (;;) {
    std::size_t q = p;
    while (q < codes.size() && codes[q] != '+' && codes[q] != '-' && codes[q] != ':') ++q;
    std::string chunk(codes.substr(p, q - p));
    if (sign == 0) {
      if (!chunk.empty()) m.pos = std::move(chunk);
    } else if (chunk.empty()) {
      c.fail(Err::SyntaxError, "empty code in mask <" + std::string(body) + ">");
    } else if (sign == '-') {
      m.forbidden.push_back(std::move(chunk));
    } else {
      m.required.push_back(std::move(chunk));
    }
    if (q == codes.size()) break;
    sign = codes[q];
    p = q + 1;
  }
  for (const auto& r : m.required)
    for (const auto& f : m.forbidden)
      if (r == f)
        c.fail(Err::SyntaxError, "code \"" + r + "\" both required and forbidden");
  if (!m.pos && !m.lemma && m.required.empty() && m.forbidden.empty())
    c.fail(Err::SyntaxError, "empty mask");
  return m;
}

}  // namespace grammar_detail

/// Streaming multi-file grammar loader; rule priorities follow file order
/// across every added file. finish() validates and returns the set.
class GrammarReader {
 public:
  explicit GrammarReader(const Taxonomy& taxonomy) : tax_(taxonomy) {}

  void add_file(std::string_view text, std::string_view filename) {
    using grammar_detail::Cursor;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view raw = text.substr(pos, eol - pos);
      bool last = eol == text.size();
      pos = eol + 1;
      ++lineno;
      std::string line = strip_comment(raw);
      Cursor c{line, 0, filename, lineno};
      c.skip_ws();
      if (c.eof()) {
        if (last) break;
        continue;
      }
      if (c.eat("@graph")) {
        c.skip_ws();
        std::string name = grammar_detail::read_name(c, "graph name");
        if (grammar_.find(name))
          c.fail(Err::DuplicateName, "graph \"" + name + "\" declared twice");
        current_ = &grammar_.add(name);
        declared_.push_back(name);
        in_context_ = false;
      } else if (c.eat("@main")) {
        c.skip_ws();
        while (!c.eof()) {
          mains_.push_back(grammar_detail::read_name(c, "graph name"));
          main_lines_.push_back({std::string(filename), lineno});
          c.skip_ws();
        }
      } else if (c.eat("@context")) {
        in_context_ = true;
        current_ = nullptr;
      } else if (in_context_) {
        parse_context_line(c);
      } else {
        if (!current_)
          c.fail(Err::SyntaxError, "rule outside any @graph");
        current_->rules.push_back(parse_rule_line(c));
      }
      if (last) break;
    }
  }

  GrammarSet finish() {
    validate();
    if (!mains_.empty())
      grammar_.set_entry_points(mains_);
    else
      grammar_.set_entry_points(declared_);
    GrammarSet out;
    out.grammar = std::move(grammar_);
    out.context_rules = std::move(context_rules_);
    return out;
  }

 private:
  static std::string strip_comment(std::string_view raw) {
    std::string out;
    char quote = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      char ch = raw[i];
      if (quote) {
        if (ch == '\\' && i + 1 < raw.size()) {
          out.push_back(ch);
          out.push_back(raw[++i]);
          continue;
        }
        if (ch == quote) quote = 0;
      } else if (ch == '\'' || ch == '"') {
        quote = ch;
      } else if (ch == '#') {
        break;
      }
      out.push_back(ch);
    }
    while (!out.empty() && (out.back() == ' ' || out.back() == '\t' || out.back() == '\r'))
      out.pop_back();
    return out;
  }

  // ---- element parsing ----------------------------------------------------

  bool at_stop(grammar_detail::Cursor& c) const {
    return c.eof() || c.peek() == ')' || c.peek() == '|' || c.at("->") || c.at("=>") ||
           c.at("//");
  }

  std::vector<Element> parse_seq(grammar_detail::Cursor& c) {
    std::vector<Element> out;
    for (;;) {
      c.skip_ws();
      if (at_stop(c)) return out;
      out.push_back(parse_element(c));
    }
  }

  Element parse_element(grammar_detail::Cursor& c) {
    using grammar_detail::read_name;
    using grammar_detail::read_quoted;
    bool elided = false, nofold = false;
    while (!c.eof() && (c.peek() == '~' || c.peek() == '%')) {
      if (c.peek() == '~') elided = true;
      else nofold = true;
      ++c.pos;
    }
    if (c.eof()) c.fail(Err::SyntaxError, "dangling element prefix");

    Element e;
    char ch = c.peek();
    if (ch == '\'' || ch == '"') {
      e.kind = Element::Kind::Literal;
      e.case_sensitive = ch == '\'';
      e.text = read_quoted(c, ch);
      std::size_t words = 0;
      for (const auto& t : tokenize(e.text))
        if (!t.is_space()) ++words;
      if (words != 1)
        c.fail(Err::SyntaxError, "literal \"" + e.text + "\" must be a single token");
    } else if (ch == '<') {
      std::size_t close = c.s.find('>', c.pos);
      if (close == std::string_view::npos) c.fail(Err::SyntaxError, "unterminated mask");
      std::string_view body = c.s.substr(c.pos + 1, close - c.pos - 1);
      c.pos = close + 1;
      if (body == "PRE" || body == "UPPER" || body == "WORD" || body == "NB") {
        e.kind = Element::Kind::Case;
        e.cp = body == "PRE"     ? CasePattern::Pre
               : body == "UPPER" ? CasePattern::Upper
               : body == "WORD"  ? CasePattern::AnyWord
                                 : CasePattern::Number;
      } else {
        e.kind = Element::Kind::Mask;
        e.mask = grammar_detail::parse_mask_body(c, body);
        e.allow_elided = elided;
        e.forbid_folded = nofold;
      }
    } else if (ch == ':') {
      ++c.pos;
      e.kind = Element::Kind::Call;
      e.text = read_name(c, "graph name after ':'");
    } else if (ch == '$') {
      ++c.pos;
      e.kind = Element::Kind::Capture;
      e.text = read_name(c, "variable name after '$'");
      if (!c.eat("(")) c.fail(Err::UnbalancedCapture, "expected '(' after $" + e.text);
      e.kids = parse_seq(c);
      if (!c.eat(")"))
        c.fail(Err::UnbalancedCapture, "capture $" + e.text + "( is never closed");
    } else if (ch == '(') {
      ++c.pos;
      std::vector<Element> branches;
      for (;;) {
        Element br;
        br.kind = Element::Kind::Seq;
        br.kids = parse_seq(c);
        branches.push_back(std::move(br));
        if (c.eat("|")) continue;
        if (c.eat(")")) break;
        c.fail(Err::SyntaxError, "expected '|' or ')' in group");
      }
      if (branches.size() == 1) {
        e = std::move(branches[0]);
      } else {
        e.kind = Element::Kind::Alt;
        e.kids = std::move(branches);
      }
    } else {
      c.fail(Err::SyntaxError, std::string("unexpected character '") + ch + "'");
    }
    if ((elided || nofold) && e.kind != Element::Kind::Mask)
      c.fail(Err::SyntaxError, "prefixes '~'/'%' apply to masks only");

    // Tight-binding suffixes.
    for (;;) {
      if (!c.eof() && c.peek() == '?') {
        ++c.pos;
        Element opt;
        opt.kind = Element::Kind::Opt;
        opt.kids.push_back(std::move(e));
        e = std::move(opt);
      } else if (!c.eof() && c.peek() == '+') {
        ++c.pos;
        int max = kRepeatCap;
        if (!c.eof() && c.peek() >= '0' && c.peek() <= '9') {
          max = 0;
          while (!c.eof() && c.peek() >= '0' && c.peek() <= '9') {
            max = max * 10 + (c.peek() - '0');
            ++c.pos;
            if (max > kRepeatCap)
              c.fail(Err::SyntaxError,
                     "repeat bound exceeds " + std::to_string(kRepeatCap));
          }
          if (max == 0) c.fail(Err::SyntaxError, "repeat bound must be at least 1");
        }
        Element rep;
        rep.kind = Element::Kind::Repeat;
        rep.min = 1;
        rep.max = max;
        rep.kids.push_back(std::move(e));
        e = std::move(rep);
      } else {
        break;
      }
    }
    return e;
  }

  // ---- rule / context lines -----------------------------------------------

  std::vector<std::string> parse_type_path(grammar_detail::Cursor& c, std::string_view text) {
    std::vector<std::string> parts;
    std::size_t p = 0;
    while (p <= text.size()) {
      std::size_t q = text.find('.', p);
      if (q == std::string_view::npos) q = text.size();
      std::string part(text.substr(p, q - p));
      while (!part.empty() && part.front() == ' ') part.erase(part.begin());
      while (!part.empty() && part.back() == ' ') part.pop_back();
      if (part.empty()) c.fail(Err::SyntaxError, "empty component in type path");
      parts.push_back(std::move(part));
      if (q == text.size()) break;
      p = q + 1;
    }
    if (parts.empty()) c.fail(Err::SyntaxError, "empty type path");
    return parts;
  }

  NEType parse_type(grammar_detail::Cursor& c, std::string_view text) {
    std::vector<std::string> parts = parse_type_path(c, text);
    std::string cls = parts.front();
    parts.erase(parts.begin());
    try {
      return tax_.validate_type(cls, std::move(parts));
    } catch (const EngineError& e) {
      c.fail(Err::UnknownType, e.message());
    }
  }

  Rule parse_rule_line(grammar_detail::Cursor& c) {
    Rule r;
    r.file = std::string(c.file);
    r.line = c.line;
    r.priority = next_priority_++;
    r.elements = parse_seq(c);
    if (r.elements.empty()) c.fail(Err::SyntaxError, "rule has no elements");
    c.skip_ws();
    if (c.eof()) return r;  // recognition-only rule
    if (!c.eat("->")) c.fail(Err::SyntaxError, "expected '->' or end of rule");
    c.skip_ws();
    std::size_t brace = c.s.find('{', c.pos);
    if (brace == std::string_view::npos)
      c.fail(Err::SyntaxError, "expected '{' attribute block after output type");
    std::string_view type_text = c.s.substr(c.pos, brace - c.pos);
    while (!type_text.empty() && (type_text.back() == ' ' || type_text.back() == '\t'))
      type_text.remove_suffix(1);
    r.output = parse_type(c, type_text);
    c.pos = brace + 1;
    for (;;) {
      c.skip_ws();
      if (c.eat("}")) break;
      if (c.eof()) c.fail(Err::SyntaxError, "attribute block is never closed");
      std::size_t eq = c.s.find('=', c.pos);
      if (eq == std::string_view::npos)
        c.fail(Err::SyntaxError, "expected attr=var in attribute block");
      std::string attr(c.s.substr(c.pos, eq - c.pos));
      while (!attr.empty() && attr.back() == ' ') attr.pop_back();
      if (attr.empty()) c.fail(Err::SyntaxError, "empty attribute name");
      c.pos = eq + 1;
      c.skip_ws();
      std::string var = grammar_detail::read_name(c, "variable name");
      r.bindings.emplace_back(std::move(attr), std::move(var));
      c.skip_ws();
      if (c.eat(",")) continue;
      if (c.eat("}")) break;
      c.fail(Err::SyntaxError, "expected ',' or '}' in attribute block");
    }
    c.skip_ws();
    if (!c.eat("evidence="))
      c.fail(Err::SyntaxError, "rule output needs evidence=internal|external");
    if (c.eat("internal")) r.evidence = Evidence::Internal;
    else if (c.eat("external")) r.evidence = Evidence::External;
    else c.fail(Err::SyntaxError, "evidence must be internal or external");
    c.skip_ws();
    if (!c.eof()) c.fail(Err::SyntaxError, "trailing text after rule");
    return r;
  }

  void parse_context_line(grammar_detail::Cursor& c) {
    ContextRule r;
    r.file = std::string(c.file);
    r.line = c.line;
    r.priority = next_context_priority_++;
    std::size_t sep = c.s.find("//", c.pos);
    if (sep == std::string_view::npos)
      c.fail(Err::SyntaxError, "context rule needs TARGET // elements => NEW_TYPE");
    std::string_view target = c.s.substr(c.pos, sep - c.pos);
    while (!target.empty() && (target.back() == ' ' || target.back() == '\t'))
      target.remove_suffix(1);
    std::vector<std::string> parts = parse_type_path(c, target);
    r.target_class = parts.front();
    parts.erase(parts.begin());
    r.target_path = std::move(parts);
    try {
      tax_.validate_type(r.target_class, r.target_path);
    } catch (const EngineError& e) {
      c.fail(Err::UnknownType, e.message());
    }
    c.pos = sep + 2;
    r.right_context = parse_seq(c);
    if (r.right_context.empty())
      c.fail(Err::SyntaxError, "context rule has no context elements");
    if (!c.eat("=>")) c.fail(Err::SyntaxError, "expected '=>' in context rule");
    c.skip_ws();
    std::string_view rest = c.s.substr(c.pos);
    r.new_type = parse_type(c, rest);
    c.pos = c.s.size();
    context_rules_.push_back(std::move(r));
  }

  // ---- validation -----------------------------------------------------------

  static void collect_captures(const std::vector<Element>& elems,
                               std::vector<std::string>& vars) {
    for (const auto& e : elems) {
      if (e.kind == Element::Kind::Capture) vars.push_back(e.text);
      collect_captures(e.kids, vars);
    }
  }

  void validate_calls(const std::vector<Element>& elems, const Rule& r) const {
    for (const auto& e : elems) {
      if (e.kind == Element::Kind::Call && !grammar_.find(e.text))
        throw EngineError(Err::UnknownGraph, "call to undefined graph :" + e.text, r.file,
                          r.line);
      validate_calls(e.kids, r);
    }
  }

  void validate() const {
    for (const auto& g : grammar_.graphs()) {
      for (const auto& r : g.rules) {
        validate_calls(r.elements, r);
        if (!r.output) {
          if (!r.bindings.empty())
            throw EngineError(Err::SyntaxError, "attribute bindings without an output type",
                              r.file, r.line);
          continue;
        }
        std::vector<std::string> vars;
        collect_captures(r.elements, vars);
        for (const auto& [attr, var] : r.bindings) {
          bool found = false;
          for (const auto& v : vars)
            if (v == var) { found = true; break; }
          if (!found)
            throw EngineError(Err::UnboundVariable,
                              "variable $" + var + " is bound but never captured", r.file,
                              r.line);
          if (!tax_.find_attr(r.output->class_name, attr))
            throw EngineError(Err::UnknownAttribute,
                              "attribute \"" + attr + "\" is not in the schema of class " +
                                  r.output->class_name,
                              r.file, r.line);
        }
      }
    }
    for (std::size_t k = 0; k < mains_.size(); ++k) {
      if (!grammar_.find(mains_[k]))
        throw EngineError(Err::UnknownGraph, "@main names undefined graph " + mains_[k],
                          main_lines_[k].first, main_lines_[k].second);
    }
    for (const auto& cr : context_rules_) {
      for (const auto& e : cr.right_context)
        if (e.kind == Element::Kind::Call && !grammar_.find(e.text))
          throw EngineError(Err::UnknownGraph, "call to undefined graph :" + e.text, cr.file,
                            cr.line);
    }
  }

  static constexpr int kRepeatCap = 8;

  const Taxonomy& tax_;
  Grammar grammar_;
  Graph* current_ = nullptr;
  bool in_context_ = false;
  std::vector<std::string> declared_;
  std::vector<std::string> mains_;
  std::vector<std::pair<std::string, std::size_t>> main_lines_;
  std::vector<ContextRule> context_rules_;
  int next_priority_ = 0;
  int next_context_priority_ = 0;
};

inline GrammarSet parse_grammar(std::string_view text, const Taxonomy& taxonomy,
                                std::string_view filename = "<grammar>") {
  GrammarReader reader(taxonomy);
  reader.add_file(text, filename);
  return reader.finish();
}

}  // namespace entex
