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

// Corpus ingestion: tokenization, sentence segmentation and vocabulary
// construction.

#ifndef REALWORD_CORPUS_H_
#define REALWORD_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace realword {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

// True for the sentence boundary markers (not for <unk>).
bool is_boundary(std::string_view token);
// True for any reserved token: boundary markers and <unk>.
bool is_marker(std::string_view token);

struct Sentence {
  std::vector<std::string> tokens;
  bool padded = false;

  std::size_t size() const { return tokens.size(); }
  // Number of tokens that are not boundary markers.
  std::size_t word_count() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Attaches <s> and </s>. Padding an already padded sentence is a no-op.
Sentence pad(Sentence s);
// Strips the markers again.
Sentence unpad(Sentence s);

// Joins tokens with single spaces (markers included if present).
std::string join(const Sentence& s);

// Splits text into unpadded, lowercased sentences. A sentence ends at '.',
// '!' or '?' followed by whitespace and an uppercase letter, or by the end of
// input. Throws IngestError on invalid UTF-8.
std::vector<Sentence> tokenize(std::string_view text);

// Returns the byte offset of the first invalid UTF-8 sequence, or npos.
std::size_t find_invalid_utf8(std::string_view text);

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename V>
using StringMap =
    std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

using WordId = std::uint32_t;
inline constexpr WordId kNoWord = static_cast<WordId>(-1);

// The closed word list every other component works against. Entries are
// kept sorted by frequency (descending) then lexicographically; ids are
// positions in that order. The three markers are always members, with
// frequency 0, and do not count against max_size.
class Vocabulary {
 public:
  Vocabulary();

  // Builds from raw counts, keeping the max_size most frequent words.
  static Vocabulary from_counts(
      std::vector<std::pair<std::string, std::uint64_t>> counts,
      std::size_t max_size);

  bool contains(std::string_view word) const;
  WordId id(std::string_view word) const;  // kNoWord when absent
  const std::string& word(WordId id) const { return entries_[id]; }
  std::uint64_t frequency(std::string_view word) const;
  std::uint64_t frequency(WordId id) const { return frequency_[id]; }

  std::size_t size() const { return entries_.size(); }
  std::size_t max_size() const { return max_size_; }
  const std::vector<std::string>& entries() const { return entries_; }

  WordId bos() const { return bos_; }
  WordId eos() const { return eos_; }
  WordId unk() const { return unk_; }

  // Bytes usable for insertion/substitution edits: a-z, apostrophe, hyphen,
  // plus any other byte occurring in an entry. Sorted, unique.
  const std::string& alphabet() const { return alphabet_; }

  // "surface<TAB>count" lines, count descending then lexicographic.
  void write(std::ostream& out) const;
  static Vocabulary read(std::istream& in);

 private:
  void index();

  std::vector<std::string> entries_;
  std::vector<std::uint64_t> frequency_;
  StringMap<WordId> ids_;
  std::string alphabet_;
  std::size_t max_size_ = 0;
  WordId bos_ = kNoWord;
  WordId eos_ = kNoWord;
  WordId unk_ = kNoWord;
};

// Counts tokens over the (unpadded or padded) sentences and keeps the
// max_size most frequent, ties broken lexicographically. Markers in padded
// input are not counted. Throws ContractError on an empty corpus or
// max_size == 0.
Vocabulary build_vocabulary(std::span<const Sentence> sentences,
                            std::size_t max_size);

}  // namespace realword

#endif  // REALWORD_CORPUS_H_
