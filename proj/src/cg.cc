// Copyright 2026 The Realword Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "realword/cg.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "realword/errors.h"

namespace realword {
namespace {

// Lexer for one rule line: words, parentheses, ';' and "quoted" literals.
struct Lexeme {
  enum Kind { kWord, kOpen, kClose, kSemicolon, kLiteral, kEnd } kind;
  std::string text;
};

class RuleLexer {
 public:
  RuleLexer(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  Lexeme next() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
    if (pos_ >= line_.size()) return {Lexeme::kEnd, ""};
    char c = line_[pos_];
    if (c == '(') return ++pos_, Lexeme{Lexeme::kOpen, "("};
    if (c == ')') return ++pos_, Lexeme{Lexeme::kClose, ")"};
    if (c == ';') return ++pos_, Lexeme{Lexeme::kSemicolon, ";"};
    if (c == '"') {
      auto close = line_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated literal");
      std::string text(line_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      if (text.empty()) fail("empty literal");
      for (auto& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      return {Lexeme::kLiteral, std::move(text)};
    }
    std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) &&
           line_[pos_] != '(' && line_[pos_] != ')' && line_[pos_] != ';' &&
           line_[pos_] != '"') {
      ++pos_;
    }
    return {Lexeme::kWord, std::string(line_.substr(start, pos_ - start))};
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("rules line " + std::to_string(line_no_) + ": " + msg,
                     line_no_);
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

class RuleParser {
 public:
  RuleParser(std::string_view line, std::size_t line_no, const TagSet& tagset)
      : lex_(line, line_no), tagset_(tagset) {
    advance();
  }

  ConstraintRule parse() {
    ConstraintRule rule;
    if (cur_.kind != Lexeme::kWord || cur_.text != "REMOVE") {
      lex_.fail("expected REMOVE");
    }
    advance();
    rule.target = pattern();
    if (cur_.kind != Lexeme::kWord || cur_.text != "IF") {
      lex_.fail("expected IF and at least one condition");
    }
    advance();
    while (cur_.kind == Lexeme::kOpen) rule.conditions.push_back(condition());
    if (rule.conditions.empty()) lex_.fail("a rule needs at least one condition");
    expect(Lexeme::kSemicolon, "';'");
    if (cur_.kind != Lexeme::kEnd) lex_.fail("trailing text after ';'");
    return rule;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Lexeme::Kind kind, const char* what) {
    if (cur_.kind != kind) {
      lex_.fail(std::string("expected ") + what + " near '" + cur_.text + "'");
    }
    advance();
  }

  TagPattern pattern() {
    expect(Lexeme::kOpen, "'('");
    TagPattern p;
    if (cur_.kind == Lexeme::kLiteral) {
      p.literal = cur_.text;
      advance();
    }
    while (cur_.kind == Lexeme::kWord) {
      if (!tagset_.contains(cur_.text)) lex_.fail("unknown tag '" + cur_.text + "'");
      p.tags.push_back(cur_.text);
      p.tag_ids.push_back(tagset_.id(cur_.text));
      advance();
    }
    if (!p.literal && p.tags.empty()) lex_.fail("empty pattern");
    expect(Lexeme::kClose, "')'");
    std::sort(p.tag_ids.begin(), p.tag_ids.end());
    p.tag_ids.erase(std::unique(p.tag_ids.begin(), p.tag_ids.end()), p.tag_ids.end());
    return p;
  }

  Condition condition() {
    expect(Lexeme::kOpen, "'('");
    Condition c;
    if (cur_.kind == Lexeme::kWord && cur_.text == "NOT") {
      c.negated = true;
      advance();
    }
    if (cur_.kind != Lexeme::kWord) lex_.fail("expected a position");
    std::string_view pos = cur_.text;
    if (!pos.empty() && pos.front() == '*') {
      c.unbounded = true;
      pos.remove_prefix(1);
    }
    if (!pos.empty() && pos.back() == 'C') {
      c.careful = true;
      pos.remove_suffix(1);
    }
    if (!pos.empty() && pos.front() == '+') pos.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(pos.data(), pos.data() + pos.size(), c.offset);
    if (pos.empty() || ec != std::errc() || ptr != pos.data() + pos.size()) {
      lex_.fail("bad position '" + cur_.text + "'");
    }
    advance();
    c.pattern = pattern();
    expect(Lexeme::kClose, "')'");
    return c;
  }

  RuleLexer lex_;
  const TagSet& tagset_;
  Lexeme cur_{Lexeme::kEnd, ""};
};

std::string pattern_string(const TagPattern& p) {
  std::string out = "(";
  if (p.literal) out += '"' + *p.literal + '"';
  for (const auto& t : p.tags) {
    if (out.size() > 1) out += ' ';
    out += t;
  }
  return out + ")";
}

bool token_matches(const TokenAnalysis& t, const TagPattern& p, bool careful) {
  if (careful) {
    return t.readings.size() == 1 && p.matches(*t.readings.front(), t.surface);
  }
  return std::any_of(t.readings.begin(), t.readings.end(),
                     [&](const Reading* r) { return p.matches(*r, t.surface); });
}

bool condition_holds(const Condition& c, const std::vector<TokenAnalysis>& a,
                     std::size_t i) {
  const long n = static_cast<long>(a.size());
  const long start = static_cast<long>(i) + c.offset;
  bool found = false;
  if (!c.unbounded) {
    if (start < 0 || start >= n) return c.negated;
    found = token_matches(a[static_cast<std::size_t>(start)], c.pattern, c.careful);
  } else {
    const long step = c.offset < 0 ? -1 : 1;
    for (long j = start; j >= 0 && j < n; j += step) {
      if (token_matches(a[static_cast<std::size_t>(j)], c.pattern, c.careful)) {
        found = true;
        break;
      }
    }
  }
  return c.negated ? !found : found;
}

// Tags carried by any reading in the sentence; a rule whose target needs a
// tag outside this set cannot fire anywhere this pass.
std::vector<bool> present_tags(const std::vector<TokenAnalysis>& a,
                               std::size_t tag_count) {
  std::vector<bool> present(tag_count, false);
  for (const auto& t : a) {
    for (const Reading* r : t.readings) {
      for (TagId id : r->tag_ids) {
        if (id < present.size()) present[id] = true;
      }
    }
  }
  return present;
}

bool may_fire(const ConstraintRule& rule, const std::vector<bool>& present) {
  return std::all_of(rule.target.tag_ids.begin(), rule.target.tag_ids.end(),
                     [&](TagId id) { return id < present.size() && present[id]; });
}

std::size_t max_tag_id(const Grammar& g) {
  std::size_t m = 0;
  for (const auto& r : g.rules) {
    for (TagId id : r.target.tag_ids) m = std::max<std::size_t>(m, id + 1);
  }
  return m;
}

void run_to_fixpoint(std::vector<TokenAnalysis>& a, const Grammar& g,
                     const std::vector<std::size_t>& order) {
  const std::size_t tag_count = max_tag_id(g);
  std::vector<const Reading*> keep;
  while (true) {
    for (auto& t : a) t.violations.clear();
    const auto present = present_tags(a, tag_count);
    bool removed = false;
    for (std::size_t rule_index : order) {
      const auto& rule = g.rules[rule_index];
      if (!may_fire(rule, present)) continue;
      for (std::size_t i = 0; i < a.size(); ++i) {
        auto& tok = a[i];
        keep.clear();
        for (const Reading* r : tok.readings) {
          if (!rule.target.matches(*r, tok.surface)) keep.push_back(r);
        }
        if (keep.size() == tok.readings.size()) continue;
        bool holds = std::all_of(
            rule.conditions.begin(), rule.conditions.end(),
            [&](const Condition& c) { return condition_holds(c, a, i); });
        if (!holds) continue;
        if (keep.empty()) {
          tok.violations.push_back(rule_index);
        } else {
          tok.readings = keep;
          removed = true;
        }
      }
    }
    if (!removed) break;
  }
}

}  // namespace

bool TagPattern::matches(const Reading& r, std::string_view surface) const {
  if (literal && *literal != surface) return false;
  return std::includes(r.tag_ids.begin(), r.tag_ids.end(), tag_ids.begin(),
                       tag_ids.end());
}

Grammar parse_rules(std::string_view text, const TagSet& tagset) {
  Grammar g;
  RulePhase phase = RulePhase::kGrammar;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      // '#' inside a literal is not a comment.
      auto quotes = std::count(line.begin(), line.begin() + static_cast<long>(hash), '"');
      if (quotes % 2 == 0) line = line.substr(0, hash);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
    }
    if (line.empty()) continue;
    if (line == "HEURISTIC") {
      phase = RulePhase::kHeuristic;
      continue;
    }
    if (line == "GRAMMAR") {
      phase = RulePhase::kGrammar;
      continue;
    }
    ConstraintRule rule = RuleParser(line, line_no, tagset).parse();
    rule.phase = phase;
    rule.line = line_no;
    g.rules.push_back(std::move(rule));
  }
  return g;
}

Grammar load_rules(const std::filesystem::path& path, const TagSet& tagset) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rules " + path.string(), {path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str(), tagset);
}

std::string to_string(const ConstraintRule& rule) {
  std::string out = "REMOVE " + pattern_string(rule.target) + " IF";
  for (const auto& c : rule.conditions) {
    out += " (";
    if (c.negated) out += "NOT ";
    if (c.unbounded) out += '*';
    out += std::to_string(c.offset);
    if (c.careful) out += 'C';
    out += ' ' + pattern_string(c.pattern) + ')';
  }
  return out + ";";
}

std::string to_string(const Grammar& grammar) {
  std::string out;
  RulePhase phase = RulePhase::kGrammar;
  for (const auto& r : grammar.rules) {
    if (r.phase != phase) {
      out += r.phase == RulePhase::kHeuristic ? "HEURISTIC\n" : "GRAMMAR\n";
      phase = r.phase;
    }
    out += to_string(r) + '\n';
  }
  return out;
}

std::vector<TokenAnalysis> analyze(const Sentence& s, const MorphLexicon& lex) {
  std::vector<TokenAnalysis> out;
  out.reserve(s.tokens.size());
  for (const auto& t : s.tokens) {
    TokenAnalysis a;
    a.surface = t;
    a.readings = lex.readings_for(t);
    a.original_count = a.readings.size();
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<TokenAnalysis> disambiguate(std::vector<TokenAnalysis> analyses,
                                        const Grammar& grammar,
                                        DisambiguationOptions options) {
  std::vector<std::size_t> grammar_rules;
  std::vector<std::size_t> heuristic_rules;
  for (std::size_t i = 0; i < grammar.rules.size(); ++i) {
    (grammar.rules[i].phase == RulePhase::kGrammar ? grammar_rules
                                                   : heuristic_rules)
        .push_back(i);
  }
  run_to_fixpoint(analyses, grammar, grammar_rules);
  if (options.heuristics && !heuristic_rules.empty()) {
    auto state = is_well_formed(analyses);
    if (!state.well_formed || state.residual_ambiguity > 0) {
      std::vector<std::size_t> all = grammar_rules;
      all.insert(all.end(), heuristic_rules.begin(), heuristic_rules.end());
      run_to_fixpoint(analyses, grammar, all);
    }
  }
  return analyses;
}

WellFormedness is_well_formed(std::span<const TokenAnalysis> analyses) {
  WellFormedness w;
  for (const auto& t : analyses) {
    if (!t.violations.empty()) w.well_formed = false;
    if (!t.readings.empty()) w.residual_ambiguity += t.readings.size() - 1;
  }
  return w;
}

}  // namespace realword
