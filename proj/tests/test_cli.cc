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

// Drives the realword binary end to end through the shell.

#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "demo_language.h"
#include "doctest.h"
#include "realword/lm.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// A scratch directory holding a small training corpus and eight of its
// sentences as test text, shared by the cases below.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("realword_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ifstream corpus(realword::demo::data_dir() / "corpus.txt");
    std::string line, train, test;
    for (int i = 0; std::getline(corpus, line); ++i) {
      if (i >= 3000) break;
      train += line + "\n";
      if (i < 8) test += line + "\n";
    }
    write(dir / "train.txt", train);
    write(dir / "test.txt", test);
  }
  ~Workspace() { fs::remove_all(dir); }

  fs::path operator/(const std::string& name) const { return dir / name; }

  // Runs the binary with `args` from inside the workspace.
  Run run(const std::string& args, const std::string& env = "") const {
    const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = "cd '" + dir.string() + "' && " + env + " '" REALWORD_CLI "' " +
                            args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  const fs::path& model() const {
    static bool trained = false;
    static const fs::path path = dir / "model.lm";
    if (!trained) {
      REQUIRE(run("train --corpus train.txt -o model.lm").status == 0);
      trained = true;
    }
    return path;
  }
};

Workspace& ws() {
  static Workspace w;
  return w;
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

// Report records without the timing field, which is not deterministic.
std::vector<nlohmann::json> metrics_only(const std::string& text) {
  auto lines = json_lines(text);
  for (auto& j : lines) j.erase("ms_per_sentence");
  return lines;
}

}  // namespace

TEST_CASE("train is deterministic and the model loads") {
  Workspace& w = ws();
  REQUIRE(w.run("train --corpus train.txt -o a.lm --vocab-size 62000").status == 0);
  REQUIRE(w.run("train --corpus train.txt -o b.lm --vocab-size 62000").status == 0);
  CHECK(slurp(w / "a.lm") == slurp(w / "b.lm"));
  CHECK_FALSE(slurp(w / "a.lm").empty());
  auto model = realword::TrigramModel::load(w / "a.lm");
  CHECK(model.vocab().size() > 100);
}

TEST_CASE("custom interpolation weights are stored") {
  Workspace& w = ws();
  REQUIRE(w.run("train --corpus train.txt -o l.lm --lambda 0.6,0.3,0.09,0.01").status == 0);
  auto model = realword::TrigramModel::load(w / "l.lm");
  CHECK(model.weights().trigram == doctest::Approx(0.6));
  CHECK(model.weights().bigram == doctest::Approx(0.3));
  CHECK(w.run("train --corpus train.txt -o bad.lm --lambda 0.6,0.3,0.3,0.01").status != 0);
  CHECK_FALSE(fs::exists(w / "bad.lm"));
}

TEST_CASE("a missing model fails without partial output") {
  Workspace& w = ws();
  Run r = w.run("correct -i test.txt --model missing.lm -o out.txt --report rep.jsonl");
  CHECK(r.status != 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("missing.lm") != std::string::npos);
  CHECK_FALSE(fs::exists(w / "out.txt"));
  CHECK_FALSE(fs::exists(w / "rep.jsonl"));
}

TEST_CASE("clean training text is left alone at high alpha") {
  Workspace& w = ws();
  w.model();
  const std::string before = slurp(w / "test.txt");
  Run r = w.run("correct -i test.txt --model model.lm --alpha 0.999 --report rep.jsonl");
  REQUIRE(r.status == 0);
  CHECK(slurp(w / "test.txt") == before);
  auto lines = json_lines(slurp(w / "rep.jsonl"));
  REQUIRE(lines.size() == 8);
  for (const auto& j : lines) {
    CHECK(j["edits"].empty());
    CHECK(j["original"] == j["corrected"]);
    CHECK(j["final_space"].get<double>() <= j["initial_space"].get<double>());
  }
  // Output is one sentence per line and reads back as the same sentences.
  std::istringstream out(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(out, line)) CHECK(line == [&] {
      std::string s = lines[n++]["corrected"];
      s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
      return s;
    }());
  CHECK(n == 8);
}

TEST_CASE("injected errors are corrected from the injected text") {
  Workspace& w = ws();
  w.model();
  REQUIRE(w.run("inject --corpus test.txt --model model.lm --alpha 0.8 --seed 5 -o bad.txt "
                "--ledger ledger.tsv")
              .status == 0);
  CHECK(slurp(w / "bad.txt") != slurp(w / "test.txt"));
  CHECK_FALSE(slurp(w / "ledger.tsv").empty());
  Run r = w.run("correct -i bad.txt --model model.lm --alpha 0.9 --report rep.jsonl");
  REQUIRE(r.status == 0);
  auto lines = json_lines(slurp(w / "rep.jsonl"));
  CHECK(lines.size() == 8);
  std::size_t edits = 0;
  for (const auto& j : lines) edits += j["edits"].size();
  CHECK(edits > 0);
}

TEST_CASE("config file sits between flags and defaults") {
  Workspace& w = ws();
  w.model();
  REQUIRE(w.run("inject --corpus test.txt --model model.lm --alpha 0.7 --seed 6 -o bad.txt")
              .status == 0);
  write(w / "cfg.toml", "[correct]\nalpha = 0.5\n");
  const std::string base = "correct -i bad.txt --model model.lm --report ";
  REQUIRE(w.run(base + "low.jsonl --alpha 0.5").status == 0);
  REQUIRE(w.run(base + "high.jsonl --alpha 0.999").status == 0);
  REQUIRE(w.run(base + "default.jsonl").status == 0);
  REQUIRE(w.run(base + "default95.jsonl --alpha 0.95").status == 0);
  REQUIRE(w.run("--config cfg.toml " + base + "cfg.jsonl").status == 0);
  REQUIRE(w.run("--config cfg.toml " + base + "flag.jsonl --alpha 0.999").status == 0);
  CHECK(slurp(w / "cfg.jsonl") == slurp(w / "low.jsonl"));
  CHECK(slurp(w / "flag.jsonl") == slurp(w / "high.jsonl"));
  CHECK(slurp(w / "default.jsonl") == slurp(w / "default95.jsonl"));
  CHECK(slurp(w / "low.jsonl") != slurp(w / "high.jsonl"));
}

TEST_CASE("evaluate runs the full grid deterministically") {
  Workspace& w = ws();
  w.model();
  const std::string args =
      "evaluate --test test.txt --model model.lm --alpha-grid .9,.99,.995,.999 "
      "--d-grid 1,3,6,10 --seed 4 --max-candidates 256 --report ";
  Run a = w.run(args + "a.jsonl");
  REQUIRE(a.status == 0);
  CHECK(a.out.find("d=10") != std::string::npos);
  auto cells = json_lines(slurp(w / "a.jsonl"));
  CHECK(cells.size() == 16);
  REQUIRE(w.run(args + "b.jsonl", "REALWORD_JOBS=2").status == 0);
  CHECK(metrics_only(slurp(w / "a.jsonl")) == metrics_only(slurp(w / "b.jsonl")));
}

TEST_CASE("noun-only mode reaches injection and evaluation") {
  Workspace& w = ws();
  w.model();
  REQUIRE(w.run("inject --corpus test.txt --model model.lm --alpha 0.5 --seed 2 --mode noun-only "
                "-o nouns.txt --ledger nouns.tsv")
              .status == 0);
  auto res = realword::demo::load_resources();
  std::istringstream ledger(slurp(w / "nouns.tsv"));
  std::string id, pos, intended, typed;
  std::size_t n = 0;
  while (ledger >> id >> pos >> intended >> typed) {
    CHECK(res.lexicon.has_noun_reading(intended));
    ++n;
  }
  CHECK(n > 0);
  REQUIRE(w.run("evaluate --test test.txt --model model.lm --alpha-grid .9 --d-grid 1 --mode "
                "noun-only --max-candidates 256 --report n.jsonl")
              .status == 0);
  auto cells = json_lines(slurp(w / "n.jsonl"));
  REQUIRE(cells.size() == 1);
  CHECK(cells[0]["mode"] == "noun-only");
}

TEST_CASE("bad flags and unknown modes exit nonzero") {
  Workspace& w = ws();
  CHECK(w.run("").status != 0);
  CHECK(w.run("correct --model model.lm --alpha 1.5 -i test.txt").status != 0);
  CHECK(w.run("inject --corpus test.txt --model model.lm --mode wordnet").status != 0);
}

TEST_CASE("selftest runs a chosen criterion") {
  Run r = ws().run("selftest --only 4");
  CHECK(r.status == 0);
  CHECK(r.out.find("[PASS] 4 ") != std::string::npos);
}
