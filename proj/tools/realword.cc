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

// realword: train, correct, inject, evaluate, selftest.
//
// Settings come from flags, then from the file named by --config (TOML or
// INI, one section per subcommand), then from built-in defaults. Nothing is
// written until all inputs have been read and the work is done, so a failed
// run leaves no partial output behind.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance.h"
#include "demo_language.h"
#include "json.hpp"
#include "realword/cg.h"
#include "realword/corpus.h"
#include "realword/corrector.h"
#include "realword/errors.h"
#include "realword/eval.h"
#include "realword/lexicon.h"
#include "realword/lm.h"

namespace fs = std::filesystem;
using namespace realword;

namespace {

constexpr int kExitError = 1;
constexpr int kExitConfig = 2;

std::string read_file(const fs::path& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string(), {path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes the whole of `text` to `path`, or to stdout for "-" or "".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path, {path});
  out << text;
  if (!out) throw Error("write failed: " + path);
}

// One sentence per line, capitalized so that the text tokenizes back into
// the same sentences.
std::string render(const Sentence& s) {
  std::string line = join(s);
  if (!line.empty()) line[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(line[0])));
  return line;
}

void require_paths(const std::vector<std::pair<std::string, std::string>>& named) {
  std::vector<std::string> missing;
  std::string what;
  for (const auto& [flag, path] : named) {
    if (path == "-") continue;
    if (path.empty() || !fs::exists(path)) {
      const std::string shown = path.empty() ? "<unset>" : path;
      missing.push_back(shown);
      what += (what.empty() ? "" : ", ") + flag + " " + shown;
    }
  }
  if (!missing.empty()) throw ConfigError("missing input: " + what, missing);
}

// Grammar resources, filled from --data when not given one by one.
struct Resources {
  std::string data;
  std::string lexicon;
  std::string tagset;
  std::string rules;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--data", data,
                    "directory holding lexicon.tsv, tagset.txt and rules.cg "
                    "(default: the bundled demo grammar)")
        ->envname("REALWORD_DATA");
    cmd->add_option("--lexicon", lexicon, "morphological lexicon (TSV)");
    cmd->add_option("--tagset", tagset, "tag inventory");
    cmd->add_option("--rules", rules, "constraint grammar");
  }
  void resolve() {
    if (data.empty()) data = demo::data_dir().string();
    if (lexicon.empty()) lexicon = (fs::path(data) / "lexicon.tsv").string();
    if (tagset.empty()) tagset = (fs::path(data) / "tagset.txt").string();
    if (rules.empty()) rules = (fs::path(data) / "rules.cg").string();
  }
};

struct ScanFlags {
  ScanConfig scan;

  void add_to(CLI::App* cmd, bool single_cell) {
    if (single_cell) {
      cmd->add_option("--alpha", scan.alpha, "probability a word is typed correctly")
          ->capture_default_str()
          ->check(CLI::Range(0.0, 1.0));
      cmd->add_option("-d,--span", scan.span, "window step d; windows hold d+4 tokens")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
    }
    cmd->add_option("-k,--variations", scan.max_variations_per_word,
                    "spelling variations searched per word")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-candidates", scan.max_candidates,
                    "candidates kept per window and per sentence")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-generated", scan.max_generated,
                    "combinations enumerated per window")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-edits", scan.max_edits, "edits per sentence, 0 for no limit")
        ->capture_default_str();
    cmd->add_flag("--heuristics", scan.heuristics, "also run the heuristic rules");
  }
};

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string corpus;
  std::string out;
  std::size_t vocab_size = 62000;
  std::vector<double> lambda{0.7, 0.2, 0.09, 0.01};
};

int cmd_train(const TrainArgs& a) {
  require_paths({{"--corpus", a.corpus}});
  Interpolation w{a.lambda[0], a.lambda[1], a.lambda[2], a.lambda[3]};
  w.validate();
  const auto sentences = tokenize(read_file(a.corpus));
  Vocabulary vocab = build_vocabulary(sentences, a.vocab_size);
  const auto model = TrigramModel::train(sentences, std::move(vocab), w);
  std::ostringstream ss;
  model.save(ss);
  emit(a.out, ss.str());
  std::cerr << "trained on " << sentences.size() << " sentences, "
            << model.vocab().size() << " vocabulary entries, " << model.distinct_trigrams()
            << " trigrams\n";
  return 0;
}

struct Loaded {
  TagSet tagset;
  MorphLexicon lexicon;
  Grammar grammar;
};

Loaded load_grammar(const Resources& r) {
  TagSet tagset = TagSet::load(r.tagset);
  MorphLexicon lexicon = load_lexicon(r.lexicon, tagset);
  Grammar grammar = load_rules(r.rules, tagset);
  return {std::move(tagset), std::move(lexicon), std::move(grammar)};
}

struct CorrectArgs {
  std::string input = "-";
  std::string model;
  std::string output;
  std::string report;
  Resources res;
  ScanFlags flags;
};

int cmd_correct(CorrectArgs a, std::size_t jobs) {
  a.res.resolve();
  require_paths({{"--input", a.input},
                 {"--model", a.model},
                 {"--lexicon", a.res.lexicon},
                 {"--tagset", a.res.tagset},
                 {"--rules", a.res.rules}});
  a.flags.scan.validate();
  const auto model = TrigramModel::load(fs::path(a.model));
  const auto g = load_grammar(a.res);
  const auto sentences = tokenize(read_file(a.input));

  const Corrector corrector{model, g.lexicon, g.grammar, a.flags.scan};
  const auto results = correct_all(sentences, corrector, jobs);

  std::string text, report;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    text += render(r.corrected) + "\n";
    nlohmann::ordered_json rec;
    rec["id"] = i;
    rec["original"] = join(r.original);
    rec["corrected"] = join(r.corrected);
    auto edits = nlohmann::json::array();
    for (const auto& e : r.edits) {
      edits.push_back(std::to_string(e.position) + ":" + e.original + "→" + e.replacement);
    }
    rec["edits"] = edits;
    rec["score"] = r.score_log;
    rec["initial_space"] = r.initial_space;
    rec["final_space"] = r.final_space;
    report += rec.dump() + "\n";
  }
  emit(a.output, text);
  if (a.report.empty()) {
    std::cerr << report;
  } else {
    emit(a.report, report);
  }
  return 0;
}

struct InjectArgs {
  std::string corpus;
  std::string model;
  std::string output;
  std::string ledger;
  std::string mode = "s62000";
  double alpha = 0.95;
  std::uint64_t seed = 1;
  Resources res;
};

int cmd_inject(InjectArgs a) {
  a.res.resolve();
  const InjectionMode mode = parse_injection_mode(a.mode);
  std::vector<std::pair<std::string, std::string>> paths{{"--corpus", a.corpus},
                                                         {"--model", a.model}};
  if (mode == InjectionMode::kNounOnly) {
    paths.push_back({"--lexicon", a.res.lexicon});
    paths.push_back({"--tagset", a.res.tagset});
  }
  require_paths(paths);
  const auto model = TrigramModel::load(fs::path(a.model));
  const auto sentences = tokenize(read_file(a.corpus));
  std::optional<TagSet> tagset;
  std::optional<MorphLexicon> lexicon;
  if (mode == InjectionMode::kNounOnly) {
    tagset = TagSet::load(a.res.tagset);
    lexicon.emplace(load_lexicon(a.res.lexicon, *tagset));
  }
  const auto inj = inject_errors(sentences, model.vocab(), a.alpha, a.seed, mode,
                                 lexicon ? &*lexicon : nullptr);
  std::string text;
  for (const auto& s : inj.corrupted) text += render(s) + "\n";
  std::ostringstream ledger;
  write_injection_ledger(ledger, inj.records);
  emit(a.output, text);
  if (!a.ledger.empty()) emit(a.ledger, ledger.str());
  std::cerr << inj.records.size() << " errors injected into " << sentences.size()
            << " sentences\n";
  return 0;
}

struct EvaluateArgs {
  std::string test;
  std::string model;
  std::string jsonl;
  std::string table;
  std::vector<double> alphas{0.9, 0.99, 0.995, 0.999};
  std::vector<std::size_t> spans{1, 3, 6, 10};
  std::vector<std::string> modes{"s62000"};
  std::uint64_t seed = 1;
  Resources res;
  ScanFlags flags;
};

int cmd_evaluate(EvaluateArgs a, std::size_t jobs) {
  a.res.resolve();
  ExperimentPaths paths{a.test, a.model, a.res.lexicon, a.res.tagset, a.res.rules};
  ExperimentConfig config;
  config.alphas = a.alphas;
  config.spans = a.spans;
  config.modes.clear();
  for (const auto& m : a.modes) config.modes.push_back(parse_injection_mode(m));
  config.seed = a.seed;
  config.scan = a.flags.scan;
  config.jobs = jobs;
  for (double alpha : config.alphas) {
    ScanConfig probe = config.scan;
    probe.alpha = alpha;
    probe.validate();
  }
  for (std::size_t d : config.spans) {
    if (d == 0) throw ContractError("d must be at least 1");
  }
  const auto report = run_experiment(paths, config);
  std::ostringstream table, jsonl;
  write_report_table(table, report);
  write_report_jsonl(jsonl, report);
  emit(a.table, table.str());
  if (!a.jsonl.empty()) emit(a.jsonl, jsonl.str());
  return 0;
}

int cmd_selftest(const std::vector<int>& only, std::size_t jobs) {
  acceptance::Options options;
  options.jobs = jobs;
  options.only = only;
  const auto results = acceptance::run(
      options, [](const acceptance::Result& r) { std::cout << acceptance::format(r) << std::endl; });
  return acceptance::exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real-word spelling error correction with a noisy channel, a trigram "
               "model and a constraint grammar"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read settings from a TOML or INI file");
  std::size_t jobs = 1;
  app.add_option("-j,--jobs", jobs, "worker threads")
      ->envname("REALWORD_JOBS")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "build a vocabulary and trigram model from a corpus");
  t->add_option("--corpus", train.corpus, "training text")->required();
  t->add_option("-o,--out", train.out, "model file")->required();
  t->add_option("--vocab-size", train.vocab_size, "most frequent words kept")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  t->add_option("--lambda", train.lambda, "trigram, bigram, unigram, uniform weights")
      ->expected(4)
      ->delimiter(',')
      ->capture_default_str();

  CorrectArgs correct;
  auto* c = app.add_subcommand("correct", "correct real-word errors in text");
  c->add_option("-i,--input", correct.input, "text to correct, - for stdin")->capture_default_str();
  c->add_option("--model", correct.model, "trained model")->required();
  c->add_option("-o,--output", correct.output, "corrected text (default stdout)");
  c->add_option("--report", correct.report, "per-sentence JSON lines (default stderr)");
  correct.res.add_to(c);
  correct.flags.add_to(c, true);

  InjectArgs inject;
  auto* in = app.add_subcommand("inject", "corrupt text with real-word errors");
  in->add_option("--corpus", inject.corpus, "clean text")->required();
  in->add_option("--model", inject.model, "model whose vocabulary is used")->required();
  in->add_option("-o,--output", inject.output, "corrupted text (default stdout)");
  in->add_option("--ledger", inject.ledger, "injection ledger (TSV)");
  in->add_option("--alpha", inject.alpha, "probability a word is left alone")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  in->add_option("--seed", inject.seed)->capture_default_str();
  in->add_option("--mode", inject.mode, "s62000 or noun-only")->capture_default_str();
  inject.res.add_to(in);

  EvaluateArgs evaluate;
  auto* e = app.add_subcommand("evaluate", "run an alpha by d experiment grid");
  e->add_option("--test", evaluate.test, "clean test text")->required();
  e->add_option("--model", evaluate.model, "trained model")->required();
  e->add_option("--alpha-grid", evaluate.alphas)->delimiter(',')->capture_default_str();
  e->add_option("--d-grid", evaluate.spans)->delimiter(',')->capture_default_str();
  e->add_option("--mode", evaluate.modes, "s62000 and/or noun-only")
      ->delimiter(',')
      ->capture_default_str();
  e->add_option("--seed", evaluate.seed)->capture_default_str();
  e->add_option("--report", evaluate.jsonl, "machine-readable report (JSON lines)");
  e->add_option("--table", evaluate.table, "human-readable table (default stdout)");
  evaluate.res.add_to(e);
  evaluate.flags.add_to(e, false);

  std::vector<int> only;
  auto* s = app.add_subcommand("selftest", "run the acceptance checks");
  s->add_option("--only", only, "criteria to run")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*t) return cmd_train(train);
    if (*c) return cmd_correct(correct, jobs);
    if (*in) return cmd_inject(inject);
    if (*e) return cmd_evaluate(evaluate, jobs);
    if (*s) return cmd_selftest(only, jobs);
  } catch (const ConfigError& err) {
    std::cerr << "realword: " << err.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& err) {
    std::cerr << "realword: " << err.what();
    if (err.line() > 0) std::cerr << " (line " << err.line() << ")";
    std::cerr << "\n";
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "realword: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
