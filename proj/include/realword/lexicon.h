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

// Morphological lexicon (surface -> readings) and the edit-distance-1
// real-word variation generator.

#ifndef REALWORD_LEXICON_H_
#define REALWORD_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "realword/corpus.h"

namespace realword {

using TagId = std::uint16_t;

// Reserved tags, always part of every tagset.
inline constexpr std::string_view kUnknownTag = "UNK";
inline constexpr std::string_view kBosTag = ">>>";
inline constexpr std::string_view kEosTag = "<<<";

class TagSet {
 public:
  TagSet();
  explicit TagSet(std::span<const std::string> tags);

  // Throws ParseError on a malformed line.
  static TagSet read(std::istream& in);
  static TagSet load(const std::filesystem::path& path);

  bool contains(std::string_view tag) const;
  TagId id(std::string_view tag) const;  // throws ContractError if unknown
  const std::string& name(TagId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  TagId add(std::string_view tag);

 private:
  std::vector<std::string> names_;
  StringMap<TagId> ids_;
};

// One morphological analysis. tag_ids mirrors tags, sorted, for fast set
// inclusion tests.
struct Reading {
  std::string lemma;
  std::vector<std::string> tags;
  std::vector<TagId> tag_ids;

  // Tags joined by single spaces.
  std::string tag_string() const;

  friend bool operator==(const Reading& a, const Reading& b) {
    return a.lemma == b.lemma && a.tags == b.tags;
  }
};

class MorphLexicon {
 public:
  explicit MorphLexicon(TagSet tagset = TagSet());

  MorphLexicon(const MorphLexicon&) = delete;
  MorphLexicon& operator=(const MorphLexicon&) = delete;
  MorphLexicon(MorphLexicon&&) = default;
  MorphLexicon& operator=(MorphLexicon&&) = default;

  // Adds a reading; duplicates are collapsed. Throws ParseError (line 0)
  // on an empty or undeclared tag list.
  void add(std::string_view surface, std::string_view lemma,
           std::span<const std::string> tags);

  // Readings of a listed surface, empty for unlisted ones.
  std::span<const Reading> lookup(std::string_view surface) const;
  bool contains(std::string_view surface) const;

  // Shared readings for unlisted words and sentence markers.
  const Reading& unknown_reading() const { return *unknown_; }
  const Reading& bos_reading() const { return *bos_; }
  const Reading& eos_reading() const { return *eos_; }

  // Lexicon readings, or the single unknown/boundary reading.
  std::vector<const Reading*> readings_for(std::string_view surface) const;

  // True when some reading's first tag is N.
  bool has_noun_reading(std::string_view surface) const;

  const TagSet& tagset() const { return tagset_; }
  std::size_t entry_count() const { return entries_.size(); }
  std::size_t reading_count() const;
  std::vector<std::string> surfaces() const;  // sorted

 private:
  Reading make_reading(std::string_view lemma,
                       std::span<const std::string> tags) const;

  TagSet tagset_;
  StringMap<std::vector<Reading>> entries_;
  std::unique_ptr<Reading> unknown_;
  std::unique_ptr<Reading> bos_;
  std::unique_ptr<Reading> eos_;
};

// Parses "surface<TAB>lemma<TAB>tag [tag ...]" lines; '#' starts a comment.
// Throws ParseError with the 1-based line number.
MorphLexicon read_lexicon(std::istream& in, const TagSet& tagset);
MorphLexicon load_lexicon(const std::filesystem::path& path,
                          const TagSet& tagset);

// True iff b is reachable from a by exactly one insertion, deletion,
// substitution or adjacent transposition.
bool edit_distance_one(std::string_view a, std::string_view b);

struct VariationSet {
  std::string source;
  std::vector<std::string> members;  // lexicographic

  std::size_t size() const { return members.size(); }
  bool contains(std::string_view w) const;
};

// In-vocabulary words at edit distance exactly one from w, markers excluded.
// Tokens without a letter or digit are not words and never vary.
VariationSet spelling_variations(std::string_view w, const Vocabulary& vocab);

// The k most frequent members (ties lexicographic), returned in
// frequency order.
std::vector<std::string> top_variations(const VariationSet& set,
                                        const Vocabulary& vocab,
                                        std::size_t k);

}  // namespace realword

#endif  // REALWORD_LEXICON_H_
