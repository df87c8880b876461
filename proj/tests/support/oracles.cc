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

#include "oracles.h"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace realword::oracle {

std::size_t osa_distance(const std::string& a, const std::string& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[n][m];
}

std::set<std::string> variations_by_scan(const std::string& w,
                                         const std::vector<std::string>& words) {
  std::set<std::string> out;
  auto wordlike = [](const std::string& s) {
    for (unsigned char c : s) {
      if (c >= 0x80 || std::isalnum(c)) return true;
    }
    return false;
  };
  if (!wordlike(w)) return out;
  for (const auto& v : words) {
    if (v == "<s>" || v == "</s>" || v == "<unk>" || !wordlike(v)) continue;
    if (osa_distance(w, v) == 1) out.insert(v);
  }
  return out;
}

NgramCounts::NgramCounts(const std::vector<Sentence>& sentences,
                         const std::set<std::string>& vocabulary)
    : vocabulary_(vocabulary) {
  vocabulary_.insert({"<s>", "</s>", "<unk>"});
  for (const auto& s : sentences) {
    std::vector<std::string> t{"<s>"};
    for (const auto& w : s.tokens) {
      if (w != "<s>" && w != "</s>") t.push_back(map(w));
    }
    t.push_back("</s>");
    for (std::size_t i = 1; i < t.size(); ++i) {
      const std::string h2 = i >= 2 ? t[i - 2] : "<s>";
      const std::string& h1 = t[i - 1];
      ++counts_[{t[i]}];
      ++counts_[{h1, t[i]}];
      ++counts_[{h2, h1, t[i]}];
      ++contexts_[{h1}];
      ++contexts_[{h2, h1}];
      ++events_;
    }
  }
}

std::string NgramCounts::map(const std::string& w) const {
  return vocabulary_.count(w) ? w : "<unk>";
}

double NgramCounts::prob(const std::string& w0, const std::string& h10,
                         const std::string& h20, const double lambda[4]) const {
  const std::string w = map(w0), h1 = map(h10), h2 = map(h20);
  auto get = [](const auto& m, const std::vector<std::string>& k) -> double {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : static_cast<double>(it->second);
  };
  double p = lambda[3] / static_cast<double>(vocabulary_.size());
  if (events_ > 0) p += lambda[2] * get(counts_, {w}) / static_cast<double>(events_);
  if (double c = get(contexts_, {h1}); c > 0) p += lambda[1] * get(counts_, {h1, w}) / c;
  if (double c = get(contexts_, {h2, h1}); c > 0) {
    p += lambda[0] * get(counts_, {h2, h1, w}) / c;
  }
  return p;
}

double NgramCounts::sentence_logprob(const std::vector<std::string>& t,
                                     const double lambda[4]) const {
  double total = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    total += std::log(prob(t[i], t[i - 1], i >= 2 ? t[i - 2] : "<s>", lambda));
  }
  return total;
}

namespace {

bool reading_has(const Reading& r, const TagPattern& p, const std::string& surface) {
  if (p.literal.has_value() && *p.literal != surface) return false;
  for (const auto& tag : p.tags) {
    if (std::find(r.tags.begin(), r.tags.end(), tag) == r.tags.end()) return false;
  }
  return true;
}

bool token_satisfies(const OracleToken& t, const TagPattern& p, bool careful) {
  std::size_t hits = 0;
  for (const auto& r : t.readings) hits += reading_has(r, p, t.surface) ? 1 : 0;
  if (careful) return t.readings.size() == 1 && hits == 1;
  return hits > 0;
}

bool condition_true(const Condition& c, const std::vector<OracleToken>& s, long i) {
  const long n = static_cast<long>(s.size());
  bool found = false;
  if (c.unbounded) {
    if (c.offset < 0) {
      for (long j = i + c.offset; j >= 0; --j) {
        if (j < n && token_satisfies(s[static_cast<std::size_t>(j)], c.pattern, c.careful)) {
          found = true;
          break;
        }
      }
    } else {
      for (long j = std::max(0L, i + c.offset); j < n; ++j) {
        if (token_satisfies(s[static_cast<std::size_t>(j)], c.pattern, c.careful)) {
          found = true;
          break;
        }
      }
    }
  } else {
    const long j = i + c.offset;
    if (j < 0 || j >= n) return c.negated;
    found = token_satisfies(s[static_cast<std::size_t>(j)], c.pattern, c.careful);
  }
  return c.negated ? !found : found;
}

// One full pass; returns whether anything was removed.
bool pass(std::vector<OracleToken>& s, const Grammar& g,
          const std::vector<std::size_t>& rules) {
  for (auto& t : s) t.violations.clear();
  bool removed = false;
  for (std::size_t ri : rules) {
    const auto& rule = g.rules[ri];
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<Reading> rest;
      std::size_t targeted = 0;
      for (const auto& r : s[i].readings) {
        if (reading_has(r, rule.target, s[i].surface)) {
          ++targeted;
        } else {
          rest.push_back(r);
        }
      }
      if (targeted == 0) continue;
      bool all = true;
      for (const auto& c : rule.conditions) {
        if (!condition_true(c, s, static_cast<long>(i))) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      if (rest.empty()) {
        s[i].violations.push_back(ri);
      } else {
        s[i].readings = rest;
        removed = true;
      }
    }
  }
  return removed;
}

}  // namespace

std::vector<OracleToken> naive_analyze(const std::vector<std::string>& padded,
                                       const MorphLexicon& lexicon) {
  std::vector<OracleToken> out;
  for (const auto& w : padded) {
    OracleToken t;
    t.surface = w;
    if (w == "<s>") {
      t.readings.push_back({"<s>", {">>>"}, {}});
    } else if (w == "</s>") {
      t.readings.push_back({"</s>", {"<<<"}, {}});
    } else if (auto found = lexicon.lookup(w); !found.empty()) {
      t.readings.assign(found.begin(), found.end());
    } else {
      t.readings.push_back({"<unk>", {"UNK"}, {}});
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<OracleToken> naive_disambiguate(const std::vector<OracleToken>& tokens,
                                            const Grammar& grammar,
                                            bool heuristics) {
  std::vector<OracleToken> s = tokens;
  std::vector<std::size_t> core, all;
  for (std::size_t i = 0; i < grammar.rules.size(); ++i) {
    if (grammar.rules[i].phase == RulePhase::kGrammar) core.push_back(i);
  }
  all = core;
  for (std::size_t i = 0; i < grammar.rules.size(); ++i) {
    if (grammar.rules[i].phase == RulePhase::kHeuristic) all.push_back(i);
  }
  while (pass(s, grammar, core)) {
  }
  if (heuristics && all.size() > core.size()) {
    bool unsettled = !naive_well_formed(s);
    for (const auto& t : s) unsettled = unsettled || t.readings.size() > 1;
    if (unsettled) {
      while (pass(s, grammar, all)) {
      }
    }
  }
  return s;
}

bool naive_well_formed(const std::vector<OracleToken>& tokens) {
  for (const auto& t : tokens) {
    if (!t.violations.empty()) return false;
  }
  return true;
}

double naive_noisy_channel(const NgramCounts& counts,
                           const std::vector<std::string>& observed,
                           const std::vector<std::string>& intended,
                           double alpha, const double lambda[4]) {
  const std::vector<std::string> words(counts.vocabulary().begin(),
                                       counts.vocabulary().end());
  double score = counts.sentence_logprob(intended, lambda);
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] == "<s>" || observed[i] == "</s>") continue;
    if (observed[i] == intended[i]) {
      score += std::log(alpha);
    } else {
      score += std::log((1 - alpha) /
                        static_cast<double>(variations_by_scan(intended[i], words).size()));
    }
  }
  return score;
}

}  // namespace realword::oracle
