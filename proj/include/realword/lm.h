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

// Interpolated trigram language model and the uniform-confusion channel
// model of the noisy-channel corrector.

#ifndef REALWORD_LM_H_
#define REALWORD_LM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "realword/corpus.h"
#include "realword/lexicon.h"

namespace realword {

// Jelinek-Mercer weights for the trigram, bigram, unigram and uniform terms.
struct Interpolation {
  double trigram = 0.7;
  double bigram = 0.2;
  double unigram = 0.09;
  double uniform = 0.01;

  // Throws ContractError unless all weights are >= 0, uniform > 0 and the
  // sum is 1 within 1e-12.
  void validate() const;

  friend bool operator==(const Interpolation&, const Interpolation&) = default;
};

// Counts are taken over padded sentences with a doubled <s> history, so the
// first word is predicted from (<s>, <s>). Every position after the leading
// <s> (the closing </s> included) is one event. Words outside the vocabulary
// are counted as <unk>.
//
//   P(w | h2 h1) = l3 c(h2 h1 w)/c(h2 h1) + l2 c(h1 w)/c(h1)
//                + l1 c(w)/N + l0/V
//
// where the context counts are the number of events seen after that history
// and any 0/0 term is 0.
class TrigramModel {
 public:
  TrigramModel(Vocabulary vocab, Interpolation weights);

  // sentences may be padded or unpadded; unpadded ones are padded first.
  static TrigramModel train(std::span<const Sentence> sentences,
                            Vocabulary vocab, Interpolation weights = {});

  // Adds one event w after history (h2, h1) to all three orders.
  void observe(WordId h2, WordId h1, WordId w);

  double prob(WordId w, WordId h1, WordId h2) const;
  double logprob(WordId w, WordId h1, WordId h2) const;

  // Maps out-of-vocabulary words to <unk>.
  WordId id(std::string_view word) const;

  const Vocabulary& vocab() const { return vocab_; }
  const Interpolation& weights() const { return weights_; }
  std::uint64_t total() const { return total_; }

  std::uint64_t unigram_count(WordId w) const;
  std::uint64_t bigram_count(WordId h1, WordId w) const;
  std::uint64_t trigram_count(WordId h2, WordId h1, WordId w) const;
  std::uint64_t bigram_context(WordId h1) const;
  std::uint64_t trigram_context(WordId h2, WordId h1) const;
  std::size_t distinct_trigrams() const { return trigrams_.size(); }

  // Histories (h2, h1) with at least one observed event.
  std::vector<std::pair<WordId, WordId>> trigram_histories() const;

  // Text format: header lines, then "1-grams:", "2-grams:", "3-grams:"
  // sections of "count<TAB>w1[ w2[ w3]]" lines in lexicographic order.
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static TrigramModel load(std::istream& in);
  static TrigramModel load(const std::filesystem::path& path);

 private:
  static std::uint64_t key(WordId a, WordId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  static std::uint64_t key(WordId a, WordId b, WordId c) {
    return (static_cast<std::uint64_t>(a) << 42) |
           (static_cast<std::uint64_t>(b) << 21) | c;
  }

  Vocabulary vocab_;
  Interpolation weights_;
  std::vector<std::uint64_t> unigrams_;
  std::vector<std::uint64_t> bigram_contexts_;
  std::unordered_map<std::uint64_t, std::uint64_t> bigrams_;
  std::unordered_map<std::uint64_t, std::uint64_t> trigrams_;
  std::unordered_map<std::uint64_t, std::uint64_t> trigram_contexts_;
  std::uint64_t total_ = 0;
};

// String-level conveniences. Out-of-vocabulary words score as <unk>.
double trigram_prob(const TrigramModel& m, std::string_view w,
                    std::string_view h1, std::string_view h2);

// Sum of log P over every position after the leading <s>, </s> included.
// s is padded first if needed.
double sentence_logprob(const TrigramModel& m, const Sentence& s);

// Probability alpha that a word is typed as intended; the remaining mass is
// spread evenly over its spelling variations.
class ChannelModel {
 public:
  explicit ChannelModel(double alpha);

  double alpha() const { return alpha_; }

  // log P(typed | intended). Throws ContractError unless typed == intended
  // or typed is a member of the intended word's variation set.
  double logprob(std::string_view typed, std::string_view intended,
                 const VariationSet& intended_variations) const;

  // log P for an unchanged word and for an edit into a word with
  // variation_count variations.
  double keep_logprob() const;
  double edit_logprob(std::size_t variation_count) const;

 private:
  double alpha_;
};

double channel_logprob(const ChannelModel& ch, std::string_view typed,
                       std::string_view intended,
                       const VariationSet& intended_variations);

}  // namespace realword

#endif  // REALWORD_LM_H_
