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

#include "realword/corpus.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "realword/errors.h"

namespace realword {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_leading_punct(char c) {
  return c == '(' || c == '[' || c == '{' || c == '"';
}

bool is_trailing_punct(char c, bool sentence_final) {
  switch (c) {
    case ',': case ';': case ':': case '!': case '?':
    case ')': case ']': case '}': case '"':
      return true;
    case '.':
      return sentence_final;
    default:
      return false;
  }
}

// A terminal character at i closes the sentence when it is followed by
// whitespace and then an uppercase letter, or by nothing but whitespace.
bool closes_sentence(std::string_view text, std::size_t i) {
  if (!is_terminal(text[i])) return false;
  std::size_t j = i + 1;
  if (j == text.size()) return true;
  if (!is_space(text[j])) return false;
  while (j < text.size() && is_space(text[j])) ++j;
  return j == text.size() || is_upper(text[j]);
}

void emit(std::vector<std::string>& out, std::string token) {
  if (token.empty() || is_boundary(token)) return;
  out.push_back(std::move(token));
}

void split_chunk(std::string_view chunk, bool sentence_final,
                 std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();
  while (end - begin > 1 && is_leading_punct(chunk[begin])) {
    emit(out, std::string(1, chunk[begin]));
    ++begin;
  }
  std::vector<std::string> trailing;
  while (end - begin > 1 && is_trailing_punct(chunk[end - 1], sentence_final)) {
    trailing.emplace_back(1, chunk[end - 1]);
    --end;
  }
  emit(out, std::string(chunk.substr(begin, end - begin)));
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
    emit(out, std::move(*it));
  }
}

Sentence segment_to_sentence(std::string_view segment) {
  std::string lowered(segment);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(), to_lower);

  std::vector<std::string_view> chunks;
  std::size_t i = 0;
  while (i < lowered.size()) {
    while (i < lowered.size() && is_space(lowered[i])) ++i;
    std::size_t start = i;
    while (i < lowered.size() && !is_space(lowered[i])) ++i;
    if (i > start) chunks.emplace_back(lowered.data() + start, i - start);
  }

  Sentence s;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    split_chunk(chunks[c], c + 1 == chunks.size(), s.tokens);
  }
  return s;
}

}  // namespace

bool is_boundary(std::string_view token) {
  return token == kBos || token == kEos;
}

bool is_marker(std::string_view token) {
  return is_boundary(token) || token == kUnk;
}

std::size_t Sentence::word_count() const {
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(),
      [](const std::string& t) { return !is_boundary(t); }));
}

Sentence pad(Sentence s) {
  if (s.padded) return s;
  s.tokens.insert(s.tokens.begin(), std::string(kBos));
  s.tokens.emplace_back(kEos);
  s.padded = true;
  return s;
}

Sentence unpad(Sentence s) {
  if (!s.padded) return s;
  if (s.tokens.size() >= 2) {
    s.tokens.pop_back();
    s.tokens.erase(s.tokens.begin());
  }
  s.padded = false;
  return s;
}

std::string join(const Sentence& s) {
  std::string out;
  for (const auto& t : s.tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::size_t find_invalid_utf8(std::string_view text) {
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(text[k]);
  };
  while (i < text.size()) {
    unsigned char c = byte(i);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > text.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return i;
    }
    i += len;
  }
  return std::string_view::npos;
}

std::vector<Sentence> tokenize(std::string_view text) {
  if (auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
    throw IngestError("invalid UTF-8 at byte offset " + std::to_string(bad),
                      bad);
  }
  std::vector<Sentence> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    Sentence s = segment_to_sentence(text.substr(start, end - start));
    if (!s.tokens.empty()) out.push_back(std::move(s));
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (closes_sentence(text, i)) flush(i + 1);
  }
  if (start < text.size()) flush(text.size());
  return out;
}

Vocabulary::Vocabulary() {
  entries_ = {std::string(kEos), std::string(kBos), std::string(kUnk)};
  frequency_ = {0, 0, 0};
  index();
}

Vocabulary Vocabulary::from_counts(
    std::vector<std::pair<std::string, std::uint64_t>> counts,
    std::size_t max_size) {
  std::erase_if(counts, [](const auto& kv) { return is_marker(kv.first); });
  const auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  std::sort(counts.begin(), counts.end(), by_rank);
  if (counts.size() > max_size) counts.resize(max_size);
  for (auto m : {kBos, kEos, kUnk}) counts.emplace_back(std::string(m), 0);
  std::sort(counts.begin(), counts.end(), by_rank);

  Vocabulary v;
  v.entries_.clear();
  v.frequency_.clear();
  for (auto& [word, count] : counts) {
    v.entries_.push_back(std::move(word));
    v.frequency_.push_back(count);
  }
  v.max_size_ = max_size;
  v.index();
  return v;
}

void Vocabulary::index() {
  ids_.clear();
  ids_.reserve(entries_.size());
  std::string alphabet = "abcdefghijklmnopqrstuvwxyz'-";
  for (WordId i = 0; i < entries_.size(); ++i) {
    ids_.emplace(entries_[i], i);
    if (!is_marker(entries_[i])) alphabet += entries_[i];
  }
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  alphabet_ = std::move(alphabet);
  bos_ = id(kBos);
  eos_ = id(kEos);
  unk_ = id(kUnk);
}

bool Vocabulary::contains(std::string_view word) const {
  return ids_.find(word) != ids_.end();
}

WordId Vocabulary::id(std::string_view word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? kNoWord : it->second;
}

std::uint64_t Vocabulary::frequency(std::string_view word) const {
  WordId i = id(word);
  return i == kNoWord ? 0 : frequency_[i];
}

void Vocabulary::write(std::ostream& out) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out << entries_[i] << '\t' << frequency_[i] << '\n';
  }
}

Vocabulary Vocabulary::read(std::istream& in) {
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::string line;
  std::size_t line_no = 0;
  std::size_t words = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                           ": expected surface<TAB>count",
                       line_no);
    }
    std::uint64_t count = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                           ": bad count",
                       line_no);
    }
    std::string word = line.substr(0, tab);
    if (!is_marker(word)) ++words;
    counts.emplace_back(std::move(word), count);
  }
  return from_counts(std::move(counts), words);
}

Vocabulary build_vocabulary(std::span<const Sentence> sentences,
                            std::size_t max_size) {
  if (max_size == 0) throw ContractError("max_size must be at least 1");
  StringMap<std::uint64_t> counts;
  std::uint64_t total = 0;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      if (is_marker(t)) continue;
      auto it = counts.find(t);
      if (it == counts.end()) {
        counts.emplace(t, 1);
      } else {
        ++it->second;
      }
      ++total;
    }
  }
  if (total == 0) throw ContractError("cannot build a vocabulary from an empty corpus");
  std::vector<std::pair<std::string, std::uint64_t>> flat(counts.begin(),
                                                          counts.end());
  return Vocabulary::from_counts(std::move(flat), max_size);
}

}  // namespace realword
