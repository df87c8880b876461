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

// A small synthetic English used by the tests, the acceptance suite and the
// bundled demo corpus. Sentences come from a handful of templates filled
// from the demo lexicon, with Zipf-like word frequencies and fixed
// verb-object and adjective-noun preferences so that a trigram model trained
// on them has real context to exploit.

#ifndef REALWORD_TESTS_DEMO_LANGUAGE_H_
#define REALWORD_TESTS_DEMO_LANGUAGE_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "realword/cg.h"
#include "realword/corpus.h"
#include "realword/lexicon.h"

namespace realword::demo {

// Directory holding tagset.txt, lexicon.tsv, rules.cg and corpus.txt.
std::filesystem::path data_dir();

struct DemoResources {
  TagSet tagset;
  MorphLexicon lexicon;
  Grammar grammar;
};

DemoResources load_resources(const std::filesystem::path& dir = data_dir());

// Seed of the committed corpus.txt.
inline constexpr std::uint64_t kCorpusSeed = 20260101;
inline constexpr std::size_t kCorpusSentences = 12000;

class Generator {
 public:
  explicit Generator(const MorphLexicon& lexicon,
                     std::uint64_t language_seed = 7);

  std::vector<Sentence> generate(std::size_t n, std::uint64_t seed) const;
  Sentence sentence(std::mt19937_64& rng) const;

 private:
  struct Noun {
    std::string sg, pl;
  };
  struct Verb {
    std::string base, sg3, past, pcp2, pcp1;
  };
  struct Pool {
    std::vector<std::string> items;
    std::vector<double> weights;
  };

  using Tokens = std::vector<std::string>;

  std::size_t pick(const std::vector<double>& weights,
                   std::mt19937_64& rng) const;
  std::size_t pick_noun(std::mt19937_64& rng,
                        const std::vector<std::size_t>* preferred) const;
  void noun_phrase(Tokens& out, bool plural, std::mt19937_64& rng,
                   const std::vector<std::size_t>* preferred) const;
  // Returns whether the subject is plural (or I/you) for agreement.
  bool subject(Tokens& out, std::mt19937_64& rng) const;
  void object(Tokens& out, std::size_t verb, std::mt19937_64& rng) const;
  void prep_phrase(Tokens& out, std::mt19937_64& rng) const;
  void finite_verb(Tokens& out, std::size_t verb, bool plural,
                   std::mt19937_64& rng) const;

  std::vector<Noun> nouns_;
  std::vector<double> noun_weights_;
  std::vector<Verb> verbs_;
  std::vector<double> verb_weights_;
  Pool adjectives_;
  Pool prepositions_;
  Pool modals_;
  std::vector<std::vector<std::size_t>> verb_objects_;
  std::vector<std::vector<std::size_t>> prep_objects_;
  std::vector<std::vector<std::size_t>> noun_adjectives_;
};

// The committed corpus text: one capitalized sentence per line.
std::string render_corpus(const std::vector<Sentence>& sentences);

}  // namespace realword::demo

#endif  // REALWORD_TESTS_DEMO_LANGUAGE_H_
