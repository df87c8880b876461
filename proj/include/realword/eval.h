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

// Evaluation harness: seeded real-word error injection, detection and
// correction precision/recall/F, and experiment grids over alpha and d.

#ifndef REALWORD_EVAL_H_
#define REALWORD_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "realword/cg.h"
#include "realword/corpus.h"
#include "realword/corrector.h"
#include "realword/lexicon.h"
#include "realword/lm.h"

namespace realword {

enum class InjectionMode {
  kAnyWord,   // any vocabulary word may be corrupted
  kNounOnly,  // only words with a noun reading in the lexicon
};

std::string_view to_string(InjectionMode mode);
// Accepts "s62000"/"any" and "noun-only"/"malp". Throws ConfigError.
InjectionMode parse_injection_mode(std::string_view name);

struct InjectionRecord {
  std::size_t sentence_id = 0;
  std::size_t position = 0;  // index into the unpadded sentence
  std::string intended;
  std::string typed;

  friend bool operator==(const InjectionRecord&, const InjectionRecord&) = default;
};

struct Injection {
  std::vector<Sentence> corrupted;
  std::vector<InjectionRecord> records;
};

// Each eligible token is replaced with probability 1 - alpha by a uniform
// draw from its full variation set. A token is eligible when it is in the
// vocabulary, is not a marker, has at least one variation, and (noun-only)
// has a noun reading. Every eligible token consumes the same two draws
// whatever alpha is, so one seed gives nested corruptions across alphas.
// lexicon is required for kNounOnly.
Injection inject_errors(std::span<const Sentence> sentences,
                        const Vocabulary& vocab, double alpha,
                        std::uint64_t seed, InjectionMode mode,
                        const MorphLexicon* lexicon = nullptr);

// "sentence_id<TAB>position<TAB>intended<TAB>typed" lines.
void write_injection_ledger(std::ostream& out,
                            std::span<const InjectionRecord> records);
std::vector<InjectionRecord> read_injection_ledger(std::istream& in);

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;

  friend bool operator==(const Prf&, const Prf&) = default;
};

struct Metrics {
  Counts detection_counts;
  Counts correction_counts;
  Prf detection;
  Prf correction;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// 2PR / (P + R), and 0 when P + R is 0.
double f_measure(double precision, double recall);

// Precision and recall from counts; empty denominators give 0.
Prf prf(const Counts& c);

// results[i] is the correction of sentence i. Detection counts edited
// positions against injected ones; correction additionally requires the
// replacement to equal the intended word. Throws AlignmentError when a
// record points outside the results or a result changed sentence length.
Metrics score(std::span<const CorrectionResult> results,
              std::span<const InjectionRecord> gold);

// Corrects every sentence, fanning out over `jobs` threads. Output order
// follows input order. millis[i], when requested, receives the wall time of
// sentence i.
std::vector<CorrectionResult> correct_all(std::span<const Sentence> sentences,
                                          const Corrector& corrector,
                                          std::size_t jobs,
                                          std::vector<double>* millis = nullptr);

struct ExperimentConfig {
  std::vector<double> alphas{0.9, 0.99, 0.995, 0.999};
  std::vector<std::size_t> spans{1, 3, 6, 10};
  std::vector<InjectionMode> modes{InjectionMode::kAnyWord};
  std::uint64_t seed = 1;
  ScanConfig scan;  // alpha and span are overridden per cell
  std::size_t jobs = 1;
};

struct ExperimentCell {
  double alpha = 0.0;
  std::size_t span = 0;
  InjectionMode mode = InjectionMode::kAnyWord;
  Metrics metrics;
  std::size_t sentences = 0;
  std::size_t injected = 0;
  double ms_per_sentence = 0.0;
  double init_space = 0.0;   // mean candidates after combination
  double final_space = 0.0;  // mean candidates surviving the grammar
};

struct ExperimentReport {
  std::vector<ExperimentCell> cells;
};

// Runs every (mode, alpha, d) cell over the clean test sentences.
ExperimentReport run_experiment(std::span<const Sentence> test,
                                const TrigramModel& model,
                                const MorphLexicon& lexicon,
                                const Grammar& grammar,
                                const ExperimentConfig& config);

// Locations of the artifacts an experiment needs.
struct ExperimentPaths {
  std::filesystem::path test_corpus;
  std::filesystem::path model;
  std::filesystem::path lexicon;
  std::filesystem::path tagset;
  std::filesystem::path rules;

  // Throws ConfigError naming every path that does not exist.
  void check() const;
};

ExperimentReport run_experiment(const ExperimentPaths& paths,
                                const ExperimentConfig& config);

// One JSON object per line with alpha, d, mode, det_P ... final_space.
void write_report_jsonl(std::ostream& out, const ExperimentReport& report);
// Fixed-width table, one block per (mode, d) with a row per alpha.
void write_report_table(std::ostream& out, const ExperimentReport& report);

}  // namespace realword

#endif  // REALWORD_EVAL_H_
