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

// Real-word error correction over fixed-length windows.
//
// A padded sentence is scanned with windows of d+4 tokens advancing by d.
// Each window gets a search space: every combination of the original words
// and their top-K spelling variations. Window spaces are merged left to
// right into full-sentence candidates that agree on every overlap, the
// candidates that the constraint grammar rejects are dropped, and the
// survivor maximizing log P(candidate) + log P(observed | candidate) wins.

#ifndef REALWORD_CORRECTOR_H_
#define REALWORD_CORRECTOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "realword/cg.h"
#include "realword/corpus.h"
#include "realword/lexicon.h"
#include "realword/lm.h"

namespace realword {

struct ScanConfig {
  std::size_t span = 1;  // d: window step; windows hold d + 4 tokens
  double alpha = 0.95;
  std::size_t max_variations_per_word = 10;
  std::size_t max_candidates = 8192;
  // Combinations enumerated per window. A window whose product is larger
  // drops its least frequent variations until it fits.
  std::size_t max_generated = std::size_t{1} << 20;
  // Upper bound on edits per candidate; 0 means unbounded. 1 reproduces the
  // classic one-change-per-sentence search space.
  std::size_t max_edits = 0;
  bool heuristics = false;

  std::size_t window_length() const { return span + 4; }
  // Throws ContractError on d == 0, alpha outside (0, 1] or zero caps.
  void validate() const;
};

struct Window {
  std::size_t start = 0;
  std::vector<std::string> tokens;

  std::size_t end() const { return start + tokens.size(); }
};

// Windows start at 0 and advance by d; the last one is clamped to end at
// </s>. Sentences shorter than a window get one window covering them.
std::vector<Window> windows(const Sentence& padded, std::size_t d);

using Choice = std::uint16_t;

// The alternatives considered at one position of a padded sentence. Entry 0
// is always the observed token.
struct PositionOptions {
  std::vector<std::string> words;
  std::vector<WordId> ids;       // language-model ids
  std::vector<double> channel;   // log P(observed | words[k])
  std::vector<std::uint64_t> frequency;  // vocabulary counts
};

// Per-position options for one sentence, built once and shared by all
// windows.
class Lattice {
 public:
  Lattice(const Sentence& padded, const TrigramModel& model,
          const ScanConfig& config);

  std::size_t size() const { return positions_.size(); }
  const PositionOptions& at(std::size_t i) const { return positions_[i]; }
  const Sentence& sentence() const { return sentence_; }

  // Product of option counts over [begin, end), saturating at 2^53.
  double product(std::size_t begin, std::size_t end) const;

  // Channel plus trigram log-probability of choosing option c at position
  // p, given options c1 at p-1 and c2 at p-2 (ignored where p is too small).
  // The trigram term is dropped when its history reaches before
  // history_begin; position 1 uses the doubled <s> history.
  double local_score(std::size_t p, Choice c, Choice c1, Choice c2,
                     std::size_t history_begin) const;

  std::vector<std::string> realize(std::span<const Choice> choices) const;

 private:
  Sentence sentence_;
  std::vector<PositionOptions> positions_;
  // Channel plus trigram term per (c, c1, c2), flattened per position.
  std::vector<std::vector<double>> scores_;
};

// One member of a window's search space: a choice per window position.
struct SubSequence {
  std::vector<Choice> choices;
  double score = 0.0;  // window-internal trigram + channel log score
  std::size_t edits = 0;
};

struct WindowSpace {
  Window window;
  std::vector<SubSequence> members;
  double full_size = 0.0;   // uncapped combination count
  double generated = 0.0;   // combinations actually enumerated
};

// Enumerates every combination of original words and variations inside the
// window (within max_edits and the max_generated budget) and keeps the
// max_candidates best by window score. The all-original sub-sequence is
// always kept. Members are in lexicographic choice order.
WindowSpace window_search_space(const Window& window, const Lattice& lattice,
                                const ScanConfig& config);

struct Edit {
  std::size_t position = 0;  // index into the unpadded sentence
  std::string original;
  std::string replacement;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct Candidate {
  std::vector<std::string> tokens;  // padded, same length as the input
  std::vector<Choice> choices;
  std::vector<Edit> edits;
  std::vector<std::size_t> window_provenance;  // member index per window
  double score = 0.0;  // full-sentence noisy-channel log score
};

// Merges window spaces in window order. Two sub-sequences join only when
// they agree on every overlapping position. Capped at max_candidates by
// score; the unmodified sentence is never evicted.
std::vector<Candidate> combine(std::span<const WindowSpace> spaces,
                               const Lattice& lattice,
                               const ScanConfig& config);

// sentence_logprob(candidate) plus, for every word position, log P(observed
// | candidate word): log alpha when unchanged, log((1-alpha)/|S_c(w)|) when
// the candidate word w differs.
double score_candidate(const Candidate& candidate, const Sentence& original,
                       const TrigramModel& model, const ChannelModel& channel);

struct CorrectionResult {
  Sentence original;   // unpadded, as given
  Sentence corrected;  // unpadded
  std::vector<Edit> edits;
  double score_log = 0.0;
  std::size_t initial_space = 0;  // candidates after combination
  std::size_t final_space = 0;    // candidates surviving the grammar
  double uncapped_space = 0.0;    // product of option counts
};

// The scored pool of one run, for inspection.
struct CorrectionTrace {
  std::vector<Candidate> pool;     // after combination
  std::vector<bool> well_formed;   // parallel to pool
  std::vector<std::size_t> scored; // indices into pool that were scored
};

// Runs the whole pipeline on one unpadded sentence. Ties are broken by fewer
// edits, then lexicographically. When the grammar rejects the original
// sentence it is still scored.
CorrectionResult correct_sentence(const Sentence& sentence,
                                  const TrigramModel& model,
                                  const MorphLexicon& lexicon,
                                  const Grammar& grammar,
                                  const ScanConfig& config,
                                  CorrectionTrace* trace = nullptr);

// Bundles the read-only artifacts a correction run needs.
struct Corrector {
  const TrigramModel& model;
  const MorphLexicon& lexicon;
  const Grammar& grammar;
  ScanConfig config;

  CorrectionResult operator()(const Sentence& sentence) const {
    return correct_sentence(sentence, model, lexicon, grammar, config);
  }
};

}  // namespace realword

#endif  // REALWORD_CORRECTOR_H_
