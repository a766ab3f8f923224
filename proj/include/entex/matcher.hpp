#pragma once

// RTN interpretation over token sequences: depth-first, all matches, Space
// tokens skipped between elements, subgraph recursion capped.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entex/grammar.hpp"
#include "entex/lexicon.hpp"
#include "entex/token.hpp"

namespace entex {

struct Match {
  std::size_t start = 0;
  std::size_t end = 0;  // token indices, end exclusive
  const Rule* rule = nullptr;
  // var -> captured token range [first, last), space-trimmed, sorted by var.
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> captures;
  NEType type;                       // effective type; context rules may rewrite it
  Evidence evidence = Evidence::Internal;
  std::string expansion;             // acronym expansion seen on a matched Sigle entry

  std::optional<std::pair<std::size_t, std::size_t>> capture(std::string_view var) const {
    for (const auto& [v, range] : captures)
      if (v == var) return range;
    return std::nullopt;
  }

  bool operator==(const Match&) const = default;
};

struct MatchOptions {
  std::size_t limit = static_cast<std::size_t>(-1);       // token index bound (sentence end)
  const std::vector<bool>* sentence_initial = nullptr;    // per-token flags for case folding
  std::size_t max_depth = 64;
};

namespace matcher_detail {

class Runner {
 public:
  Runner(const Grammar& grammar, const std::vector<Token>& tokens, const Lexicon& lexicon,
         const MatchOptions& opts)
      : g_(grammar), toks_(tokens), lex_(lexicon), opts_(opts),
        limit_(std::min(opts.limit, tokens.size())) {}

  using Cont = std::function<void(std::size_t)>;

  void run_seq(const std::vector<Element>& elems, std::size_t idx, std::size_t pos,
               std::size_t depth, const Cont& k) {
    if (idx == elems.size()) {
      k(pos);
      return;
    }
    run_elem(elems[idx], pos, depth,
             [&](std::size_t p) { run_seq(elems, idx + 1, p, depth, k); });
  }

  // All end positions of complete traversals of `elems` starting at pos.
  std::vector<std::size_t> ends_of(const std::vector<Element>& elems, std::size_t pos) {
    std::vector<std::size_t> ends;
    run_seq(elems, 0, pos, 0, [&](std::size_t p) { ends.push_back(p); });
    return ends;
  }

  const std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>>& captures()
      const {
    return caps_;
  }
  const std::string& expansion() const { return expansion_; }

 private:
  std::size_t skip_spaces(std::size_t pos) const {
    while (pos < limit_ && toks_[pos].is_space()) ++pos;
    return pos;
  }

  void run_elem(const Element& e, std::size_t pos, std::size_t depth, const Cont& k) {
    switch (e.kind) {
      case Element::Kind::Literal: {
        std::size_t p = skip_spaces(pos);
        if (p >= limit_ || toks_[p].is_space()) return;
        const std::string& s = toks_[p].surface;
        bool ok = e.case_sensitive ? s == e.text
                                   : uni::lower_copy(s) == uni::lower_copy(e.text);
        if (ok) k(p + 1);
        return;
      }
      case Element::Kind::Case: {
        std::size_t p = skip_spaces(pos);
        if (p >= limit_) return;
        const Token& t = toks_[p];
        bool ok = false;
        switch (e.cp) {
          case CasePattern::Pre:
            ok = t.is_word() && (t.case_class == CaseClass::UpperFirst ||
                                 t.case_class == CaseClass::AllUpper);
            break;
          case CasePattern::Upper:
            ok = t.is_word() && t.case_class == CaseClass::AllUpper;
            break;
          case CasePattern::AnyWord:
            ok = t.is_word();
            break;
          case CasePattern::Number:
            ok = t.kind == TokenKind::Number;
            break;
        }
        if (ok) k(p + 1);
        return;
      }
      case Element::Kind::Mask: {
        std::size_t p = skip_spaces(pos);
        if (p >= limit_) return;
        LookupOptions lopts;
        lopts.sentence_initial =
            opts_.sentence_initial && p < opts_.sentence_initial->size() &&
            (*opts_.sentence_initial)[p];
        std::vector<Lexicon::Hit> hits =
            e.allow_elided ? lex_.lookup_elided(toks_, p, lopts) : lex_.lookup(toks_, p, lopts);
        std::vector<std::size_t> seen;
        for (const auto& h : hits) {
          if (e.forbid_folded && h.folded) continue;
          if (p + h.length > limit_) continue;
          if (!match_mask(*h.entry, e.mask)) continue;
          if (std::find(seen.begin(), seen.end(), h.length) != seen.end()) continue;
          seen.push_back(h.length);
          std::string exp = expansion_for(hits, h.length, e);
          std::string saved = expansion_;
          if (!exp.empty()) expansion_ = exp;
          k(p + h.length);
          expansion_ = saved;
        }
        return;
      }
      case Element::Kind::Call: {
        if (depth + 1 > opts_.max_depth)
          throw EngineError(Err::DepthExceeded,
                            "recursion deeper than " + std::to_string(opts_.max_depth) +
                                " while matching :" + e.text);
        const Graph* g = g_.find(e.text);
        if (!g) throw EngineError(Err::UnknownGraph, "call to undefined graph :" + e.text);
        for (const auto& r : g->rules) run_seq(r.elements, 0, pos, depth + 1, k);
        return;
      }
      case Element::Kind::Seq:
        run_seq(e.kids, 0, pos, depth, k);
        return;
      case Element::Kind::Alt:
        for (const auto& br : e.kids) run_elem(br, pos, depth, k);
        return;
      case Element::Kind::Opt:
        run_seq(e.kids, 0, pos, depth, k);
        k(pos);
        return;
      case Element::Kind::Repeat: {
        repeat(e, 0, pos, depth, k);
        return;
      }
      case Element::Kind::Capture: {
        run_seq(e.kids, 0, pos, depth, [&](std::size_t p) {
          std::size_t a = pos, b = p;
          while (a < b && toks_[a].is_space()) ++a;
          while (b > a && toks_[b - 1].is_space()) --b;
          if (a < b) {
            caps_.emplace_back(e.text, std::make_pair(a, b));
            k(p);
            caps_.pop_back();
          } else {
            k(p);
          }
        });
        return;
      }
    }
  }

  void repeat(const Element& e, int done, std::size_t pos, std::size_t depth, const Cont& k) {
    if (done < e.max) {
      run_seq(e.kids, 0, pos, depth, [&](std::size_t p) { repeat(e, done + 1, p, depth, k); });
    }
    if (done >= e.min) k(pos);
  }

  // Expansion carried by Sigle entries: acronym form, multiword lemma.
  std::string expansion_for(const std::vector<Lexicon::Hit>& hits, std::size_t length,
                            const Element& e) const {
    for (const auto& h : hits) {
      if (h.length != length) continue;
      if (e.forbid_folded && h.folded) continue;
      if (!match_mask(*h.entry, e.mask)) continue;
      if (h.entry->has_feature("Sigle") && h.entry->lemma != h.entry->form)
        return h.entry->lemma;
    }
    return {};
  }

  const Grammar& g_;
  const std::vector<Token>& toks_;
  const Lexicon& lex_;
  const MatchOptions& opts_;
  std::size_t limit_;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> caps_;
  std::string expansion_;
};

inline std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>>
squash_captures(
    const std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>>& caps) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_var;
  for (const auto& [v, r] : caps) by_var[v] = r;  // later occurrence wins
  return {by_var.begin(), by_var.end()};
}

}  // namespace matcher_detail

/// Every match of `graph_name` starting exactly at token i, longest first,
/// then by rule priority. Space tokens are skipped between elements; a match
/// cannot start on a Space token.
inline std::vector<Match> match_at(const Grammar& grammar, std::string_view graph_name,
                                   const std::vector<Token>& tokens, std::size_t i,
                                   const Lexicon& lexicon, const MatchOptions& opts = {}) {
  const Graph* g = grammar.find(graph_name);
  if (!g)
    throw EngineError(Err::UnknownGraph, "no graph named " + std::string(graph_name));
  std::vector<Match> out;
  if (i >= std::min(opts.limit, tokens.size()) || tokens[i].is_space()) return out;

  matcher_detail::Runner runner(grammar, tokens, lexicon, opts);
  for (const auto& rule : g->rules) {
    runner.run_seq(rule.elements, 0, i, 0, [&](std::size_t end) {
      if (end <= i) return;
      Match m;
      m.start = i;
      m.end = end;
      m.rule = &rule;
      m.captures = matcher_detail::squash_captures(runner.captures());
      if (rule.output) m.type = *rule.output;
      m.evidence = rule.evidence;
      m.expansion = runner.expansion();
      out.push_back(std::move(m));
    });
  }
  std::stable_sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    if (a.end != b.end) return a.end > b.end;
    if (a.rule->priority != b.rule->priority) return a.rule->priority < b.rule->priority;
    if (a.captures != b.captures) return a.captures < b.captures;
    return a.expansion < b.expansion;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Left-to-right scan over each sentence: at the first position with any
/// entry-point match, pick the longest span, preferring external evidence,
/// then lowest rule priority; emit it and resume after its end. Output spans
/// never overlap or cross sentence boundaries.
inline std::vector<Match> apply_grammars(const Grammar& grammar,
                                         const std::vector<Token>& tokens,
                                         const std::vector<Sentence>& sentences,
                                         const Lexicon& lexicon) {
  std::vector<bool> sentence_initial(tokens.size(), false);
  for (const auto& s : sentences) {
    for (std::size_t t = s.begin; t < s.end; ++t) {
      if (tokens[t].kind == TokenKind::Word || tokens[t].kind == TokenKind::Number) {
        sentence_initial[t] = true;
        break;
      }
    }
  }

  std::vector<Match> out;
  for (const auto& sent : sentences) {
    std::size_t i = sent.begin;
    while (i < sent.end) {
      if (tokens[i].is_space()) { ++i; continue; }
      MatchOptions opts;
      opts.limit = sent.end;
      opts.sentence_initial = &sentence_initial;
      const Match* best = nullptr;
      std::vector<Match> pool;
      for (const auto& ep : grammar.entry_points()) {
        std::vector<Match> ms = match_at(grammar, ep, tokens, i, lexicon, opts);
        for (auto& m : ms)
          if (m.rule->output && m.end > m.start) pool.push_back(std::move(m));
      }
      for (const auto& m : pool) {
        if (!best) { best = &m; continue; }
        if (m.end != best->end) {
          if (m.end > best->end) best = &m;
        } else if (m.evidence != best->evidence) {
          if (m.evidence == Evidence::External) best = &m;
        } else if (m.rule->priority < best->rule->priority) {
          best = &m;
        }
      }
      if (best) {
        std::size_t next = best->end;
        out.push_back(*best);
        i = next;
      } else {
        ++i;
      }
    }
  }
  return out;
}

/// Rewrites the type of each match whose right context (same sentence)
/// matches a rule; the first rule in priority order wins. Spans and captures
/// are untouched.
inline void apply_context_rules(const std::vector<ContextRule>& rules,
                                std::vector<Match>& matches, const Grammar& grammar,
                                const std::vector<Token>& tokens,
                                const std::vector<Sentence>& sentences,
                                const Lexicon& lexicon) {
  if (rules.empty() || matches.empty()) return;
  for (Match& m : matches) {
    const Sentence* sent = nullptr;
    for (const auto& s : sentences)
      if (m.start >= s.begin && m.start < s.end) { sent = &s; break; }
    MatchOptions opts;
    if (sent) opts.limit = sent->end;
    for (const ContextRule& cr : rules) {
      if (!cr.targets(m.type)) continue;
      matcher_detail::Runner runner(grammar, tokens, lexicon, opts);
      bool hit = false;
      runner.run_seq(cr.right_context, 0, m.end, 0, [&](std::size_t) { hit = true; });
      if (hit) {
        m.type = cr.new_type;
        m.evidence = Evidence::ContextReclassified;
        break;
      }
    }
  }
}

}  // namespace entex
