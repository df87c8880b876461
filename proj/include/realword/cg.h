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

// Constraint Grammar disambiguation: REMOVE rules with contextual tests,
// applied to a fixpoint, plus the well-formedness judgement the corrector
// uses to discard candidates.
//
// Rule syntax, one rule per line:
//
//   REMOVE (V FIN) IF (-1C (DET)) ;
//   REMOVE (SUBJUNCTIVE) IF (NOT *-1 (CS)) ;
//   REMOVE (V FIN) IF (-1 ("to")) ;
//
// A condition is [NOT] POSITION[C] (PATTERN). POSITION is a signed offset
// (-1, 0, +2, ...) or an unbounded scan (*-1 scans leftwards starting one to
// the left, *1 rightwards). C requires the token to be unambiguous. PATTERN
// is a list of tags, optionally led by a "literal" word form. A line reading
// HEURISTIC starts the heuristic section; GRAMMAR switches back.

#ifndef REALWORD_CG_H_
#define REALWORD_CG_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "realword/corpus.h"
#include "realword/lexicon.h"

namespace realword {

struct TagPattern {
  std::optional<std::string> literal;
  std::vector<std::string> tags;
  std::vector<TagId> tag_ids;  // sorted

  bool matches(const Reading& r, std::string_view surface) const;

  friend bool operator==(const TagPattern& a, const TagPattern& b) {
    return a.literal == b.literal && a.tags == b.tags;
  }
};

struct Condition {
  int offset = 0;
  bool unbounded = false;
  bool negated = false;
  bool careful = false;
  TagPattern pattern;

  friend bool operator==(const Condition&, const Condition&) = default;
};

enum class RulePhase { kGrammar, kHeuristic };

struct ConstraintRule {
  TagPattern target;
  std::vector<Condition> conditions;
  RulePhase phase = RulePhase::kGrammar;
  std::size_t line = 0;  // source line, for diagnostics only

  friend bool operator==(const ConstraintRule& a, const ConstraintRule& b) {
    return a.target == b.target && a.conditions == b.conditions &&
           a.phase == b.phase;
  }
};

struct Grammar {
  std::vector<ConstraintRule> rules;

  std::size_t size() const { return rules.size(); }
};

// Throws ParseError with the 1-based line number on syntax errors and on
// tags missing from the tagset.
Grammar parse_rules(std::string_view text, const TagSet& tagset);
Grammar load_rules(const std::filesystem::path& path, const TagSet& tagset);

// Canonical single-line form; parse_rules(to_string(r)) yields r again.
std::string to_string(const ConstraintRule& rule);
std::string to_string(const Grammar& grammar);

struct TokenAnalysis {
  std::string surface;
  std::vector<const Reading*> readings;  // owned by the lexicon
  std::size_t original_count = 0;
  // Indices of rules that would have removed every remaining reading.
  std::vector<std::size_t> violations;
};

// Looks every token of a padded sentence up; unlisted words get the single
// unknown reading and markers their boundary reading.
std::vector<TokenAnalysis> analyze(const Sentence& s, const MorphLexicon& lex);

struct DisambiguationOptions {
  bool heuristics = false;
};

// Applies the grammar phase to a fixpoint, then (with heuristics enabled and
// ambiguity or violations left) grammar + heuristic rules to a fixpoint. One
// pass runs each rule in order over every token left to right. A rule whose
// target covers all remaining readings of a token removes nothing there and
// records a violation instead. Violations are those found by the final pass.
std::vector<TokenAnalysis> disambiguate(std::vector<TokenAnalysis> analyses,
                                        const Grammar& grammar,
                                        DisambiguationOptions options = {});

struct WellFormedness {
  bool well_formed = true;
  std::size_t residual_ambiguity = 0;

  friend bool operator==(const WellFormedness&, const WellFormedness&) = default;
};

WellFormedness is_well_formed(std::span<const TokenAnalysis> analyses);

}  // namespace realword

#endif  // REALWORD_CG_H_
