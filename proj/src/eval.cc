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

#include "realword/eval.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "realword/errors.h"

namespace realword {
namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string format_alpha(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  std::string s = buf;
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

std::string format_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

}  // namespace

std::string_view to_string(InjectionMode mode) {
  return mode == InjectionMode::kAnyWord ? "s62000" : "noun-only";
}

InjectionMode parse_injection_mode(std::string_view name) {
  if (name == "s62000" || name == "any") return InjectionMode::kAnyWord;
  if (name == "noun-only" || name == "malp") return InjectionMode::kNounOnly;
  throw ConfigError("unknown injection mode '" + std::string(name) +
                    "' (expected s62000 or noun-only)");
}

Injection inject_errors(std::span<const Sentence> sentences,
                        const Vocabulary& vocab, double alpha,
                        std::uint64_t seed, InjectionMode mode,
                        const MorphLexicon* lexicon) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractError("alpha must lie in (0, 1]");
  if (mode == InjectionMode::kNounOnly && lexicon == nullptr) {
    throw ContractError("noun-only injection needs a lexicon");
  }
  std::mt19937_64 rng(seed);
  StringMap<VariationSet> cache;
  auto variations = [&](const std::string& w) -> const VariationSet& {
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, spelling_variations(w, vocab)).first;
    return it->second;
  };

  Injection out;
  out.corrupted.reserve(sentences.size());
  for (std::size_t sid = 0; sid < sentences.size(); ++sid) {
    Sentence s = unpad(sentences[sid]);
    for (std::size_t pos = 0; pos < s.tokens.size(); ++pos) {
      const std::string intended = s.tokens[pos];
      if (is_marker(intended) || !vocab.contains(intended)) continue;
      if (mode == InjectionMode::kNounOnly && !lexicon->has_noun_reading(intended)) {
        continue;
      }
      const VariationSet& vs = variations(intended);
      if (vs.members.empty()) continue;
      const double coin = unit_draw(rng);
      const double pick = unit_draw(rng);
      if (coin >= 1.0 - alpha) continue;
      auto index = std::min(vs.members.size() - 1,
                            static_cast<std::size_t>(pick * static_cast<double>(vs.members.size())));
      s.tokens[pos] = vs.members[index];
      out.records.push_back({sid, pos, intended, s.tokens[pos]});
    }
    out.corrupted.push_back(std::move(s));
  }
  return out;
}

void write_injection_ledger(std::ostream& out,
                            std::span<const InjectionRecord> records) {
  for (const auto& r : records) {
    out << r.sentence_id << '\t' << r.position << '\t' << r.intended << '\t'
        << r.typed << '\n';
  }
}

std::vector<InjectionRecord> read_injection_ledger(std::istream& in) {
  std::vector<InjectionRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    InjectionRecord r;
    std::string sid, pos;
    if (!std::getline(ls, sid, '\t') || !std::getline(ls, pos, '\t') ||
        !std::getline(ls, r.intended, '\t') || !std::getline(ls, r.typed)) {
      throw ParseError("ledger line " + std::to_string(line_no) +
                           ": expected four tab-separated fields",
                       line_no);
    }
    try {
      r.sentence_id = std::stoul(sid);
      r.position = std::stoul(pos);
    } catch (const std::exception&) {
      throw ParseError("ledger line " + std::to_string(line_no) + ": bad index",
                       line_no);
    }
    out.push_back(std::move(r));
  }
  return out;
}

double f_measure(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

Prf prf(const Counts& c) {
  Prf p;
  if (c.tp + c.fp > 0) p.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) p.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  p.f = f_measure(p.precision, p.recall);
  return p;
}

Metrics score(std::span<const CorrectionResult> results,
              std::span<const InjectionRecord> gold) {
  std::map<std::pair<std::size_t, std::size_t>, const InjectionRecord*> injected;
  for (const auto& r : gold) {
    if (r.sentence_id >= results.size()) {
      throw AlignmentError("injection record for sentence " +
                           std::to_string(r.sentence_id) + " has no result");
    }
    if (r.position >= results[r.sentence_id].corrected.tokens.size()) {
      throw AlignmentError("injection position out of range in sentence " +
                           std::to_string(r.sentence_id));
    }
    injected[{r.sentence_id, r.position}] = &r;
  }

  Metrics m;
  for (std::size_t sid = 0; sid < results.size(); ++sid) {
    const auto& res = results[sid];
    if (!res.original.tokens.empty() &&
        res.original.tokens.size() != res.corrected.tokens.size()) {
      throw AlignmentError("sentence " + std::to_string(sid) + " changed length");
    }
    for (const auto& e : res.edits) {
      auto it = injected.find({sid, e.position});
      if (it == injected.end()) {
        ++m.detection_counts.fp;
        ++m.correction_counts.fp;
        continue;
      }
      ++m.detection_counts.tp;
      if (e.replacement == it->second->intended) {
        ++m.correction_counts.tp;
      } else {
        ++m.correction_counts.fp;
      }
    }
  }
  for (const auto& [key, rec] : injected) {
    const auto& res = results[key.first];
    bool edited = std::any_of(res.edits.begin(), res.edits.end(),
                              [&](const Edit& e) { return e.position == key.second; });
    if (!edited) ++m.detection_counts.fn;
    if (res.corrected.tokens[key.second] != rec->intended) ++m.correction_counts.fn;
  }
  m.detection = prf(m.detection_counts);
  m.correction = prf(m.correction_counts);
  return m;
}

std::vector<CorrectionResult> correct_all(std::span<const Sentence> sentences,
                                          const Corrector& corrector,
                                          std::size_t jobs,
                                          std::vector<double>* millis) {
  std::vector<CorrectionResult> out(sentences.size());
  if (millis != nullptr) millis->assign(sentences.size(), 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < sentences.size(); i = next++) {
      auto t0 = std::chrono::steady_clock::now();
      out[i] = corrector(sentences[i]);
      auto t1 = std::chrono::steady_clock::now();
      if (millis != nullptr) {
        (*millis)[i] = std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, sentences.size()));
  if (jobs == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

ExperimentReport run_experiment(std::span<const Sentence> test,
                                const TrigramModel& model,
                                const MorphLexicon& lexicon,
                                const Grammar& grammar,
                                const ExperimentConfig& config) {
  ExperimentReport report;
  for (InjectionMode mode : config.modes) {
    std::vector<Injection> injections;
    for (double alpha : config.alphas) {
      injections.push_back(
          inject_errors(test, model.vocab(), alpha, config.seed, mode, &lexicon));
    }
    for (std::size_t d : config.spans) {
      for (std::size_t a = 0; a < config.alphas.size(); ++a) {
        ScanConfig scan = config.scan;
        scan.alpha = config.alphas[a];
        scan.span = d;
        const Corrector corrector{model, lexicon, grammar, scan};
        std::vector<double> millis;
        auto results = correct_all(injections[a].corrupted, corrector,
                                   config.jobs, &millis);
        ExperimentCell cell;
        cell.alpha = scan.alpha;
        cell.span = d;
        cell.mode = mode;
        cell.metrics = score(results, injections[a].records);
        cell.sentences = results.size();
        cell.injected = injections[a].records.size();
        if (!results.empty()) {
          double ms = 0, init = 0, fin = 0;
          for (std::size_t i = 0; i < results.size(); ++i) {
            ms += millis[i];
            init += static_cast<double>(results[i].initial_space);
            fin += static_cast<double>(results[i].final_space);
          }
          const auto n = static_cast<double>(results.size());
          cell.ms_per_sentence = ms / n;
          cell.init_space = init / n;
          cell.final_space = fin / n;
        }
        report.cells.push_back(cell);
      }
    }
  }
  return report;
}

void ExperimentPaths::check() const {
  std::vector<std::string> missing;
  for (const auto* p : {&test_corpus, &model, &lexicon, &tagset, &rules}) {
    if (p->empty() || !std::filesystem::exists(*p)) {
      missing.push_back(p->empty() ? std::string("<unset>") : p->string());
    }
  }
  if (!missing.empty()) {
    std::string msg = "missing experiment artifacts:";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg, missing);
  }
}

ExperimentReport run_experiment(const ExperimentPaths& paths,
                                const ExperimentConfig& config) {
  paths.check();
  std::ifstream in(paths.test_corpus, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  const auto test = tokenize(text.str());
  const auto model = TrigramModel::load(paths.model);
  const auto tagset = TagSet::load(paths.tagset);
  const auto lexicon = load_lexicon(paths.lexicon, tagset);
  const auto grammar = load_rules(paths.rules, tagset);
  return run_experiment(test, model, lexicon, grammar, config);
}

void write_report_jsonl(std::ostream& out, const ExperimentReport& report) {
  for (const auto& c : report.cells) {
    nlohmann::ordered_json j;
    j["alpha"] = c.alpha;
    j["d"] = c.span;
    j["mode"] = std::string(to_string(c.mode));
    j["det_P"] = c.metrics.detection.precision;
    j["det_R"] = c.metrics.detection.recall;
    j["det_F"] = c.metrics.detection.f;
    j["cor_P"] = c.metrics.correction.precision;
    j["cor_R"] = c.metrics.correction.recall;
    j["cor_F"] = c.metrics.correction.f;
    j["ms_per_sentence"] = c.ms_per_sentence;
    j["init_space"] = c.init_space;
    j["final_space"] = c.final_space;
    j["sentences"] = c.sentences;
    j["injected"] = c.injected;
    j["det_counts"] = {c.metrics.detection_counts.tp, c.metrics.detection_counts.fp,
                       c.metrics.detection_counts.fn};
    j["cor_counts"] = {c.metrics.correction_counts.tp, c.metrics.correction_counts.fp,
                       c.metrics.correction_counts.fn};
    out << j.dump() << '\n';
  }
}

void write_report_table(std::ostream& out, const ExperimentReport& report) {
  const ExperimentCell* prev = nullptr;
  char line[256];
  for (const auto& c : report.cells) {
    if (prev == nullptr || prev->mode != c.mode || prev->span != c.span) {
      if (prev != nullptr) out << '\n';
      out << "Test set " << (c.mode == InjectionMode::kAnyWord ? "S62000" : "noun-only")
          << ", d=" << c.span << ":\n";
      std::snprintf(line, sizeof line, "%-7s %-6s %-6s %-6s   %-6s %-6s %-6s   %10s %10s %10s\n",
                    "alpha", "det_P", "det_R", "det_F", "cor_P", "cor_R", "cor_F",
                    "ms/sent", "init", "final");
      out << line;
    }
    std::snprintf(line, sizeof line,
                  "%-7s %-6s %-6s %-6s   %-6s %-6s %-6s   %10.3f %10.1f %10.1f\n",
                  format_alpha(c.alpha).c_str(),
                  format_ratio(c.metrics.detection.precision).c_str(),
                  format_ratio(c.metrics.detection.recall).c_str(),
                  format_ratio(c.metrics.detection.f).c_str(),
                  format_ratio(c.metrics.correction.precision).c_str(),
                  format_ratio(c.metrics.correction.recall).c_str(),
                  format_ratio(c.metrics.correction.f).c_str(), c.ms_per_sentence,
                  c.init_space, c.final_space);
    out << line;
    prev = &c;
  }
}

}  // namespace realword
