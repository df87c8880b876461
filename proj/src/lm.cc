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

#include "realword/lm.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "realword/errors.h"

namespace realword {
namespace {

constexpr std::string_view kMagic = "realword-trigram 1";
constexpr WordId kMaxTrigramId = (1u << 21) - 1;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("model line " + std::to_string(line) + ": bad number '" +
                         std::string(s) + "'",
                     line);
  }
  return v;
}

std::uint64_t parse_count(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("model line " + std::to_string(line) + ": bad count '" +
                         std::string(s) + "'",
                     line);
  }
  return v;
}

}  // namespace

void Interpolation::validate() const {
  for (double w : {trigram, bigram, unigram, uniform}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ContractError("interpolation weights must be non-negative");
    }
  }
  if (!(uniform > 0.0)) {
    throw ContractError("uniform interpolation weight must be positive");
  }
  if (std::abs(trigram + bigram + unigram + uniform - 1.0) > 1e-12) {
    throw ContractError("interpolation weights must sum to 1");
  }
}

TrigramModel::TrigramModel(Vocabulary vocab, Interpolation weights)
    : vocab_(std::move(vocab)), weights_(weights) {
  weights_.validate();
  if (vocab_.bos() == kNoWord || vocab_.eos() == kNoWord ||
      vocab_.unk() == kNoWord) {
    throw ContractError("vocabulary lacks <s>, </s> or <unk>");
  }
  if (vocab_.size() > kMaxTrigramId) {
    throw ContractError("vocabulary too large for the trigram key packing");
  }
  unigrams_.assign(vocab_.size(), 0);
  bigram_contexts_.assign(vocab_.size(), 0);
}

TrigramModel TrigramModel::train(std::span<const Sentence> sentences,
                                 Vocabulary vocab, Interpolation weights) {
  TrigramModel m(std::move(vocab), weights);
  std::vector<WordId> ids;
  for (const auto& raw : sentences) {
    const Sentence s = raw.padded ? raw : pad(raw);
    ids.clear();
    for (const auto& t : s.tokens) ids.push_back(m.id(t));
    for (std::size_t i = 1; i < ids.size(); ++i) {
      WordId h1 = ids[i - 1];
      WordId h2 = i >= 2 ? ids[i - 2] : m.vocab_.bos();
      m.observe(h2, h1, ids[i]);
    }
  }
  return m;
}

void TrigramModel::observe(WordId h2, WordId h1, WordId w) {
  ++unigrams_[w];
  ++total_;
  ++bigrams_[key(h1, w)];
  ++bigram_contexts_[h1];
  ++trigrams_[key(h2, h1, w)];
  ++trigram_contexts_[key(h2, h1)];
}

WordId TrigramModel::id(std::string_view word) const {
  WordId i = vocab_.id(word);
  return i == kNoWord ? vocab_.unk() : i;
}

std::uint64_t TrigramModel::unigram_count(WordId w) const {
  return unigrams_[w];
}

std::uint64_t TrigramModel::bigram_count(WordId h1, WordId w) const {
  auto it = bigrams_.find(key(h1, w));
  return it == bigrams_.end() ? 0 : it->second;
}

std::uint64_t TrigramModel::trigram_count(WordId h2, WordId h1,
                                          WordId w) const {
  auto it = trigrams_.find(key(h2, h1, w));
  return it == trigrams_.end() ? 0 : it->second;
}

std::uint64_t TrigramModel::bigram_context(WordId h1) const {
  return bigram_contexts_[h1];
}

std::uint64_t TrigramModel::trigram_context(WordId h2, WordId h1) const {
  auto it = trigram_contexts_.find(key(h2, h1));
  return it == trigram_contexts_.end() ? 0 : it->second;
}

std::vector<std::pair<WordId, WordId>> TrigramModel::trigram_histories() const {
  std::vector<std::pair<WordId, WordId>> out;
  out.reserve(trigram_contexts_.size());
  for (const auto& [k, _] : trigram_contexts_) {
    out.emplace_back(static_cast<WordId>(k >> 32),
                     static_cast<WordId>(k & 0xffffffffu));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double TrigramModel::prob(WordId w, WordId h1, WordId h2) const {
  double p = weights_.uniform / static_cast<double>(vocab_.size());
  if (total_ > 0) {
    p += weights_.unigram * static_cast<double>(unigrams_[w]) /
         static_cast<double>(total_);
  }
  if (std::uint64_t ctx = bigram_contexts_[h1]; ctx > 0) {
    p += weights_.bigram * static_cast<double>(bigram_count(h1, w)) /
         static_cast<double>(ctx);
  }
  if (std::uint64_t ctx = trigram_context(h2, h1); ctx > 0) {
    p += weights_.trigram * static_cast<double>(trigram_count(h2, h1, w)) /
         static_cast<double>(ctx);
  }
  return p;
}

double TrigramModel::logprob(WordId w, WordId h1, WordId h2) const {
  return std::log(prob(w, h1, h2));
}

void TrigramModel::save(std::ostream& out) const {
  out << kMagic << '\n';
  out << "lambda\t" << format_double(weights_.trigram) << ' '
      << format_double(weights_.bigram) << ' '
      << format_double(weights_.unigram) << ' '
      << format_double(weights_.uniform) << '\n';
  out << "V\t" << vocab_.size() << '\n';
  out << "N\t" << total_ << '\n';

  using Words1 = std::tuple<std::string_view>;
  std::vector<std::pair<Words1, std::uint64_t>> uni;
  for (WordId i = 0; i < vocab_.size(); ++i) {
    uni.emplace_back(Words1{vocab_.word(i)}, unigrams_[i]);
  }
  std::sort(uni.begin(), uni.end());
  out << "1-grams:\n";
  for (const auto& [w, c] : uni) out << c << '\t' << std::get<0>(w) << '\n';

  using Words2 = std::tuple<std::string_view, std::string_view>;
  std::vector<std::pair<Words2, std::uint64_t>> bi;
  for (const auto& [k, c] : bigrams_) {
    bi.emplace_back(Words2{vocab_.word(static_cast<WordId>(k >> 32)),
                           vocab_.word(static_cast<WordId>(k & 0xffffffffu))},
                    c);
  }
  std::sort(bi.begin(), bi.end());
  out << "2-grams:\n";
  for (const auto& [w, c] : bi) {
    out << c << '\t' << std::get<0>(w) << ' ' << std::get<1>(w) << '\n';
  }

  using Words3 = std::tuple<std::string_view, std::string_view, std::string_view>;
  std::vector<std::pair<Words3, std::uint64_t>> tri;
  for (const auto& [k, c] : trigrams_) {
    tri.emplace_back(Words3{vocab_.word(static_cast<WordId>(k >> 42)),
                            vocab_.word(static_cast<WordId>((k >> 21) & kMaxTrigramId)),
                            vocab_.word(static_cast<WordId>(k & kMaxTrigramId))},
                     c);
  }
  std::sort(tri.begin(), tri.end());
  out << "3-grams:\n";
  for (const auto& [w, c] : tri) {
    out << c << '\t' << std::get<0>(w) << ' ' << std::get<1>(w) << ' '
        << std::get<2>(w) << '\n';
  }
}

void TrigramModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write model " + path.string());
  save(out);
  if (!out) throw ConfigError("failed writing model " + path.string());
}

TrigramModel TrigramModel::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("model line " + std::to_string(line_no) + ": " + msg,
                     line_no);
  };
  auto header = [&](std::string_view name) -> std::string {
    if (!next()) fail("unexpected end of file");
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.substr(0, tab) != name) {
      fail("expected '" + std::string(name) + "' header");
    }
    return line.substr(tab + 1);
  };

  if (!next() || line != kMagic) fail("not a realword trigram model");
  Interpolation weights;
  {
    std::istringstream ls(header("lambda"));
    std::string a, b, c, d;
    if (!(ls >> a >> b >> c >> d)) fail("expected four interpolation weights");
    weights = {parse_double(a, line_no), parse_double(b, line_no),
               parse_double(c, line_no), parse_double(d, line_no)};
  }
  const std::uint64_t declared_v = parse_count(header("V"), line_no);
  const std::uint64_t declared_n = parse_count(header("N"), line_no);

  struct Entry {
    std::uint64_t count;
    std::vector<std::string> words;
    std::size_t line;
  };
  std::array<std::vector<Entry>, 3> sections;
  int order = 0;
  while (next()) {
    if (line == "1-grams:" || line == "2-grams:" || line == "3-grams:") {
      int expected = order + 1;
      if (line[0] - '0' != expected) fail("sections out of order");
      order = expected;
      continue;
    }
    if (order == 0) fail("n-gram line before section header");
    auto tab = line.find('\t');
    if (tab == std::string::npos) fail("expected count<TAB>words");
    Entry e{parse_count(std::string_view(line).substr(0, tab), line_no), {}, line_no};
    std::istringstream ws(line.substr(tab + 1));
    for (std::string w; ws >> w;) e.words.push_back(std::move(w));
    if (static_cast<int>(e.words.size()) != order) fail("wrong n-gram order");
    sections[order - 1].push_back(std::move(e));
  }
  if (order != 3) fail("missing n-gram sections");
  if (sections[0].size() != declared_v) fail("V does not match the 1-grams section");

  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::size_t words = 0;
  for (const auto& e : sections[0]) {
    if (!is_marker(e.words[0])) ++words;
    counts.emplace_back(e.words[0], is_marker(e.words[0]) ? 0 : e.count);
  }
  Vocabulary vocab = Vocabulary::from_counts(std::move(counts), words);
  if (vocab.size() != declared_v) {
    throw ParseError("model: duplicate or missing vocabulary entries", 0);
  }
  TrigramModel m(std::move(vocab), weights);
  auto lookup = [&](const std::string& w, std::size_t at) {
    WordId i = m.vocab_.id(w);
    if (i == kNoWord) {
      throw ParseError("model line " + std::to_string(at) +
                           ": word not in 1-grams: " + w,
                       at);
    }
    return i;
  };
  for (const auto& e : sections[0]) {
    WordId w = lookup(e.words[0], e.line);
    m.unigrams_[w] = e.count;
    m.total_ += e.count;
  }
  for (const auto& e : sections[1]) {
    WordId h1 = lookup(e.words[0], e.line);
    WordId w = lookup(e.words[1], e.line);
    m.bigrams_[key(h1, w)] = e.count;
    m.bigram_contexts_[h1] += e.count;
  }
  for (const auto& e : sections[2]) {
    WordId h2 = lookup(e.words[0], e.line);
    WordId h1 = lookup(e.words[1], e.line);
    WordId w = lookup(e.words[2], e.line);
    m.trigrams_[key(h2, h1, w)] = e.count;
    m.trigram_contexts_[key(h2, h1)] += e.count;
  }
  if (m.total_ != declared_n) {
    throw ParseError("model: N does not match the 1-gram counts", 0);
  }
  return m;
}

TrigramModel TrigramModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open model " + path.string(), {path.string()});
  return load(in);
}

double trigram_prob(const TrigramModel& m, std::string_view w,
                    std::string_view h1, std::string_view h2) {
  return m.prob(m.id(w), m.id(h1), m.id(h2));
}

double sentence_logprob(const TrigramModel& m, const Sentence& s) {
  const Sentence padded = s.padded ? s : pad(s);
  double total = 0.0;
  WordId h2 = m.vocab().bos();
  WordId h1 = m.id(padded.tokens.front());
  for (std::size_t i = 1; i < padded.tokens.size(); ++i) {
    WordId w = m.id(padded.tokens[i]);
    total += m.logprob(w, h1, h2);
    h2 = h1;
    h1 = w;
  }
  return total;
}

ChannelModel::ChannelModel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ContractError("alpha must lie in (0, 1]");
  }
}

double ChannelModel::keep_logprob() const { return std::log(alpha_); }

double ChannelModel::edit_logprob(std::size_t variation_count) const {
  if (variation_count == 0) {
    throw ContractError("edit into a word without spelling variations");
  }
  return std::log((1.0 - alpha_) / static_cast<double>(variation_count));
}

double ChannelModel::logprob(std::string_view typed, std::string_view intended,
                             const VariationSet& intended_variations) const {
  if (typed == intended) return keep_logprob();
  if (!intended_variations.contains(typed)) {
    throw ContractError("'" + std::string(typed) +
                        "' is not a spelling variation of '" +
                        std::string(intended) + "'");
  }
  return edit_logprob(intended_variations.size());
}

double channel_logprob(const ChannelModel& ch, std::string_view typed,
                       std::string_view intended,
                       const VariationSet& intended_variations) {
  return ch.logprob(typed, intended, intended_variations);
}

}  // namespace realword
