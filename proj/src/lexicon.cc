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

#include "realword/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>
#include <unordered_set>

#include "realword/errors.h"

namespace realword {
namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

TagSet::TagSet() {
  for (auto t : {kUnknownTag, kBosTag, kEosTag}) add(t);
}

TagSet::TagSet(std::span<const std::string> tags) : TagSet() {
  for (const auto& t : tags) add(t);
}

TagId TagSet::add(std::string_view tag) {
  if (auto it = ids_.find(tag); it != ids_.end()) return it->second;
  auto id = static_cast<TagId>(names_.size());
  names_.emplace_back(tag);
  ids_.emplace(std::string(tag), id);
  return id;
}

bool TagSet::contains(std::string_view tag) const {
  return ids_.find(tag) != ids_.end();
}

TagId TagSet::id(std::string_view tag) const {
  auto it = ids_.find(tag);
  if (it == ids_.end()) {
    throw ContractError("tag not in tagset: " + std::string(tag));
  }
  return it->second;
}

TagSet TagSet::read(std::istream& in) {
  TagSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.find_first_of(" \t()\";") != std::string_view::npos) {
      throw ParseError("tagset line " + std::to_string(line_no) +
                           ": tag contains whitespace or reserved punctuation",
                       line_no);
    }
    set.add(t);
  }
  return set;
}

TagSet TagSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tagset " + path.string(), {path.string()});
  return read(in);
}

std::string Reading::tag_string() const {
  std::string out;
  for (const auto& t : tags) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

MorphLexicon::MorphLexicon(TagSet tagset) : tagset_(std::move(tagset)) {
  auto single = [this](std::string_view lemma, std::string_view tag) {
    std::vector<std::string> tags{std::string(tag)};
    return std::make_unique<Reading>(make_reading(lemma, tags));
  };
  unknown_ = single(kUnk, kUnknownTag);
  bos_ = single(kBos, kBosTag);
  eos_ = single(kEos, kEosTag);
}

Reading MorphLexicon::make_reading(std::string_view lemma,
                                   std::span<const std::string> tags) const {
  Reading r;
  r.lemma = std::string(lemma);
  r.tags.assign(tags.begin(), tags.end());
  for (const auto& t : tags) r.tag_ids.push_back(tagset_.id(t));
  std::sort(r.tag_ids.begin(), r.tag_ids.end());
  r.tag_ids.erase(std::unique(r.tag_ids.begin(), r.tag_ids.end()),
                  r.tag_ids.end());
  return r;
}

void MorphLexicon::add(std::string_view surface, std::string_view lemma,
                       std::span<const std::string> tags) {
  if (tags.empty()) throw ParseError("empty reading for " + std::string(surface), 0);
  for (const auto& t : tags) {
    if (!tagset_.contains(t)) {
      throw ParseError("unknown tag '" + t + "' for " + std::string(surface), 0);
    }
  }
  Reading r = make_reading(lemma, tags);
  auto it = entries_.find(surface);
  if (it == entries_.end()) {
    it = entries_.emplace(std::string(surface), std::vector<Reading>{}).first;
  }
  auto& readings = it->second;
  if (std::find(readings.begin(), readings.end(), r) == readings.end()) {
    readings.push_back(std::move(r));
  }
}

std::span<const Reading> MorphLexicon::lookup(std::string_view surface) const {
  auto it = entries_.find(surface);
  if (it == entries_.end()) return {};
  return it->second;
}

bool MorphLexicon::contains(std::string_view surface) const {
  return entries_.find(surface) != entries_.end();
}

std::vector<const Reading*> MorphLexicon::readings_for(
    std::string_view surface) const {
  if (surface == kBos) return {bos_.get()};
  if (surface == kEos) return {eos_.get()};
  auto found = lookup(surface);
  if (found.empty()) return {unknown_.get()};
  std::vector<const Reading*> out;
  out.reserve(found.size());
  for (const auto& r : found) out.push_back(&r);
  return out;
}

bool MorphLexicon::has_noun_reading(std::string_view surface) const {
  for (const auto& r : lookup(surface)) {
    if (!r.tags.empty() && r.tags.front() == "N") return true;
  }
  return false;
}

std::size_t MorphLexicon::reading_count() const {
  std::size_t n = 0;
  for (const auto& [_, readings] : entries_) n += readings.size();
  return n;
}

std::vector<std::string> MorphLexicon::surfaces() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [surface, _] : entries_) out.push_back(surface);
  std::sort(out.begin(), out.end());
  return out;
}

MorphLexicon read_lexicon(std::istream& in, const TagSet& tagset) {
  MorphLexicon lex(tagset);
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("lexicon line " + std::to_string(line_no) + ": " + msg,
                     line_no);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) fail("expected surface<TAB>lemma<TAB>tags");
    std::string surface(trim(std::string_view(line).substr(0, tab1)));
    std::string lemma(trim(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1)));
    auto tags = split_ws(std::string_view(line).substr(tab2 + 1));
    if (surface.empty()) fail("empty surface");
    if (lemma.empty()) fail("empty lemma");
    if (tags.empty()) fail("empty reading for '" + surface + "'");
    for (const auto& tag : tags) {
      if (!tagset.contains(tag)) fail("unknown tag '" + tag + "'");
    }
    lex.add(surface, lemma, tags);
  }
  return lex;
}

MorphLexicon load_lexicon(const std::filesystem::path& path,
                          const TagSet& tagset) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon " + path.string(), {path.string()});
  return read_lexicon(in, tagset);
}

bool edit_distance_one(std::string_view a, std::string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // Whether a[i..] equals b[j..], both running to the end.
  auto same_tail = [&](std::size_t i, std::size_t j) {
    return n - i == m - j && std::equal(a.begin() + static_cast<long>(i), a.end(),
                                        b.begin() + static_cast<long>(j));
  };
  if (n == m) {
    std::size_t first = 0;
    while (first < n && a[first] == b[first]) ++first;
    if (first == n) return false;
    // Substitution: the rest must match.
    if (same_tail(first + 1, first + 1)) return true;
    // Adjacent transposition.
    return first + 1 < n && a[first] == b[first + 1] && a[first + 1] == b[first] &&
           same_tail(first + 2, first + 2);
  }
  if (n + 1 == m) return edit_distance_one(b, a);
  if (n != m + 1) return false;
  // a is one longer: deleting one byte of a must give b.
  std::size_t first = 0;
  while (first < m && a[first] == b[first]) ++first;
  return same_tail(first + 1, first);
}

bool VariationSet::contains(std::string_view w) const {
  return std::binary_search(members.begin(), members.end(), w);
}

namespace {

// Punctuation-only tokens are not words: they have no spelling variations
// and are never offered as one ("." and "a" are one substitution apart).
bool is_word(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u);
  });
}

}  // namespace

VariationSet spelling_variations(std::string_view w, const Vocabulary& vocab) {
  VariationSet out;
  out.source = std::string(w);
  if (!is_word(w)) return out;
  std::unordered_set<std::string> seen;
  std::string edit;
  auto consider = [&](const std::string& cand) {
    if (cand == w || is_marker(cand) || !vocab.contains(cand) || !is_word(cand)) return;
    if (seen.insert(cand).second) out.members.push_back(cand);
  };
  const std::string& alphabet = vocab.alphabet();
  const std::size_t n = w.size();
  for (std::size_t i = 0; i <= n; ++i) {
    for (char c : alphabet) {
      edit.assign(w.substr(0, i));
      edit += c;
      edit.append(w.substr(i));
      consider(edit);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    edit.assign(w.substr(0, i));
    edit.append(w.substr(i + 1));
    consider(edit);
    for (char c : alphabet) {
      if (c == w[i]) continue;
      edit.assign(w);
      edit[i] = c;
      consider(edit);
    }
    if (i + 1 < n && w[i] != w[i + 1]) {
      edit.assign(w);
      std::swap(edit[i], edit[i + 1]);
      consider(edit);
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::vector<std::string> top_variations(const VariationSet& set,
                                        const Vocabulary& vocab,
                                        std::size_t k) {
  std::vector<std::string> out = set.members;
  std::stable_sort(out.begin(), out.end(),
                   [&](const std::string& a, const std::string& b) {
                     return vocab.frequency(a) > vocab.frequency(b);
                   });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace realword
