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

#include "demo_language.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace realword::demo {
namespace {

bool has_tags(const Reading& r, std::initializer_list<std::string_view> tags) {
  return std::all_of(tags.begin(), tags.end(), [&](std::string_view t) {
    return std::find(r.tags.begin(), r.tags.end(), t) != r.tags.end();
  });
}

// 1/(rank+1) weights over a seeded permutation of n items.
std::vector<double> zipf(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / static_cast<double>(rank[i] + 1);
  return w;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        std::mt19937_64& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(k, n));
  return all;
}

double uniform(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

const std::string& choose(const std::vector<std::string>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

std::filesystem::path data_dir() { return REALWORD_DATA_DIR; }

DemoResources load_resources(const std::filesystem::path& dir) {
  TagSet tagset = TagSet::load(dir / "tagset.txt");
  MorphLexicon lexicon = load_lexicon(dir / "lexicon.tsv", tagset);
  Grammar grammar = load_rules(dir / "rules.cg", tagset);
  return {std::move(tagset), std::move(lexicon), std::move(grammar)};
}

Generator::Generator(const MorphLexicon& lexicon, std::uint64_t language_seed) {
  std::map<std::string, Noun> nouns;
  std::map<std::string, Verb> verbs;
  std::vector<std::string> adjectives, prepositions, modals;
  for (const auto& surface : lexicon.surfaces()) {
    for (const Reading& r : lexicon.lookup(surface)) {
      if (r.tags.front() == "N" && r.lemma != "thew") {
        if (has_tags(r, {"SG"})) nouns[r.lemma].sg = surface;
        if (has_tags(r, {"PL"})) nouns[r.lemma].pl = surface;
      } else if (r.tags.front() == "V" && !has_tags(r, {"MODAL"}) &&
                 r.lemma != "be" && r.lemma != "have") {
        Verb& v = verbs[r.lemma];
        if (has_tags(r, {"INF"})) v.base = surface;
        if (has_tags(r, {"SG3"})) v.sg3 = surface;
        if (has_tags(r, {"PAST"})) v.past = surface;
        if (has_tags(r, {"PCP2"})) v.pcp2 = surface;
        if (has_tags(r, {"PCP1"})) v.pcp1 = surface;
      } else if (r.tags.front() == "V") {
        if (has_tags(r, {"MODAL"})) modals.push_back(surface);
      } else if (r.tags.front() == "ADJ") {
        adjectives.push_back(surface);
      } else if (r.tags.front() == "PREP" && surface != "to") {
        prepositions.push_back(surface);
      }
    }
  }
  for (auto& [lemma, n] : nouns) {
    if (!n.sg.empty() && !n.pl.empty()) nouns_.push_back(n);
  }
  for (auto& [lemma, v] : verbs) {
    if (!v.base.empty() && !v.sg3.empty() && !v.past.empty() && !v.pcp2.empty()) {
      verbs_.push_back(v);
    }
  }

  std::mt19937_64 rng(language_seed);
  noun_weights_ = zipf(nouns_.size(), rng);
  verb_weights_ = zipf(verbs_.size(), rng);
  adjectives_ = {adjectives, zipf(adjectives.size(), rng)};
  prepositions_ = {prepositions, zipf(prepositions.size(), rng)};
  modals_ = {modals, zipf(modals.size(), rng)};
  for (std::size_t v = 0; v < verbs_.size(); ++v) {
    verb_objects_.push_back(sample_indices(nouns_.size(), 6, rng));
  }
  for (std::size_t p = 0; p < prepositions.size(); ++p) {
    prep_objects_.push_back(sample_indices(nouns_.size(), 6, rng));
  }
  for (std::size_t n = 0; n < nouns_.size(); ++n) {
    noun_adjectives_.push_back(sample_indices(adjectives.size(), 3, rng));
  }
}

std::size_t Generator::pick(const std::vector<double>& weights,
                            std::mt19937_64& rng) const {
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  return dist(rng);
}

std::size_t Generator::pick_noun(std::mt19937_64& rng,
                                 const std::vector<std::size_t>* preferred) const {
  if (preferred != nullptr && !preferred->empty() && uniform(rng) < 0.75) {
    return (*preferred)[std::uniform_int_distribution<std::size_t>(
        0, preferred->size() - 1)(rng)];
  }
  return pick(noun_weights_, rng);
}

void Generator::noun_phrase(Tokens& out, bool plural, std::mt19937_64& rng,
                            const std::vector<std::size_t>* preferred) const {
  static const std::vector<std::string> kPossessive{"my", "our", "their", "his", "her"};
  const std::size_t n = pick_noun(rng, preferred);
  std::string adjective;
  if (uniform(rng) < 0.3) {
    adjective = uniform(rng) < 0.8
                    ? adjectives_.items[noun_adjectives_[n][std::uniform_int_distribution<std::size_t>(
                          0, noun_adjectives_[n].size() - 1)(rng)]]
                    : adjectives_.items[pick(adjectives_.weights, rng)];
  }
  const std::string& head = plural ? nouns_[n].pl : nouns_[n].sg;
  const std::string& next = adjective.empty() ? head : adjective;
  const double r = uniform(rng);
  if (plural) {
    if (r < 0.5) out.push_back("the");
    else if (r < 0.6) out.push_back("these");
    else if (r < 0.7) out.push_back("those");
    else if (r < 0.8) out.push_back("some");
    else if (r < 0.9) out.push_back("two");
    else out.push_back(choose(kPossessive, rng));
  } else {
    if (r < 0.5) {
      out.push_back("the");
    } else if (r < 0.75) {
      out.push_back(std::string("aeiou").find(next.front()) != std::string::npos ? "an" : "a");
    } else if (r < 0.8) {
      out.push_back("this");
    } else if (r < 0.85) {
      out.push_back("that");
    } else if (r < 0.9) {
      out.push_back("every");
    } else {
      out.push_back(choose(kPossessive, rng));
    }
  }
  if (!adjective.empty()) out.push_back(adjective);
  out.push_back(head);
}

bool Generator::subject(Tokens& out, std::mt19937_64& rng) const {
  static const std::vector<std::string> kPronouns{"he", "she", "it", "they", "we", "i", "you"};
  if (uniform(rng) < 0.2) {
    const std::string& p = choose(kPronouns, rng);
    out.push_back(p);
    return p == "they" || p == "we" || p == "i" || p == "you";
  }
  const bool plural = uniform(rng) < 0.3;
  noun_phrase(out, plural, rng, nullptr);
  return plural;
}

void Generator::object(Tokens& out, std::size_t verb, std::mt19937_64& rng) const {
  static const std::vector<std::string> kPronouns{"him", "her", "them", "me", "us", "it", "you"};
  if (uniform(rng) < 0.15) {
    out.push_back(choose(kPronouns, rng));
    return;
  }
  noun_phrase(out, uniform(rng) < 0.3, rng, &verb_objects_[verb]);
}

void Generator::prep_phrase(Tokens& out, std::mt19937_64& rng) const {
  const std::size_t p = pick(prepositions_.weights, rng);
  out.push_back(prepositions_.items[p]);
  noun_phrase(out, uniform(rng) < 0.2, rng, &prep_objects_[p]);
}

void Generator::finite_verb(Tokens& out, std::size_t verb, bool plural,
                            std::mt19937_64& rng) const {
  const Verb& v = verbs_[verb];
  if (uniform(rng) < 0.5) {
    out.push_back(v.past);
  } else {
    out.push_back(plural ? v.base : v.sg3);
  }
}

Sentence Generator::sentence(std::mt19937_64& rng) const {
  Tokens t;
  auto verb = [&] { return pick(verb_weights_, rng); };
  const double r = uniform(rng);
  if (r < 0.30) {
    bool plural = subject(t, rng);
    std::size_t v = verb();
    finite_verb(t, v, plural, rng);
    object(t, v, rng);
    if (uniform(rng) < 0.4) prep_phrase(t, rng);
  } else if (r < 0.38) {
    subject(t, rng);
    t.push_back(modals_.items[pick(modals_.weights, rng)]);
    std::size_t v = verb();
    t.push_back(verbs_[v].base);
    object(t, v, rng);
    if (uniform(rng) < 0.3) prep_phrase(t, rng);
  } else if (r < 0.46) {
    bool plural = subject(t, rng);
    const double f = uniform(rng);
    t.push_back(f < 0.5 ? "wanted" : plural ? "want" : "wants");
    t.push_back("to");
    std::size_t v = verb();
    t.push_back(verbs_[v].base);
    object(t, v, rng);
  } else if (r < 0.53) {
    t.insert(t.end(), {"the", "two", "of", "them"});
    std::size_t v = verb();
    t.push_back(verbs_[v].past);
    object(t, v, rng);
    if (uniform(rng) < 0.3) prep_phrase(t, rng);
  } else if (r < 0.60) {
    subject(t, rng);
    std::size_t v = verb();
    t.push_back(verbs_[v].past);
    object(t, v, rng);
    t.insert(t.end(), {"and", "then"});
    v = verb();
    t.push_back(verbs_[v].past);
    object(t, v, rng);
  } else if (r < 0.68) {
    const bool plural = uniform(rng) < 0.3;
    noun_phrase(t, plural, rng, nullptr);
    const bool past = uniform(rng) < 0.5;
    t.push_back(plural ? (past ? "were" : "are") : (past ? "was" : "is"));
    const double m = uniform(rng);
    if (m < 0.15) t.push_back("too");
    else if (m < 0.3) t.push_back("very");
    t.push_back(adjectives_.items[pick(adjectives_.weights, rng)]);
  } else if (r < 0.74) {
    subject(t, rng);
    std::size_t v = verb();
    t.push_back(verbs_[v].past);
    object(t, v, rng);
    t.push_back("too");
  } else if (r < 0.80) {
    bool plural = subject(t, rng);
    const double f = uniform(rng);
    t.push_back(f < 0.5 ? "had" : plural ? "have" : "has");
    std::size_t v = verb();
    t.push_back(verbs_[v].pcp2);
    object(t, v, rng);
  } else if (r < 0.86) {
    bool plural = subject(t, rng);
    std::size_t v = verb();
    finite_verb(t, v, plural, rng);
    object(t, v, rng);
    t.push_back("because");
    plural = subject(t, rng);
    v = verb();
    finite_verb(t, v, plural, rng);
    object(t, v, rng);
  } else if (r < 0.90) {
    t.push_back("there");
    if (uniform(rng) < 0.6) {
      t.push_back("is");
      noun_phrase(t, false, rng, nullptr);
    } else {
      t.push_back("are");
      noun_phrase(t, true, rng, nullptr);
    }
    prep_phrase(t, rng);
  } else if (r < 0.93) {
    t.insert(t.end(), {"it", "is", "good", "that"});
    noun_phrase(t, uniform(rng) < 0.3, rng, nullptr);
    t.push_back("be");
    t.push_back(adjectives_.items[pick(adjectives_.weights, rng)]);
  } else if (r < 0.96) {
    t.insert(t.end(), {"one", "of", "the"});
    t.push_back(nouns_[pick(noun_weights_, rng)].pl);
    std::size_t v = verb();
    t.push_back(verbs_[v].past);
    object(t, v, rng);
  } else {
    t.push_back("then");
    subject(t, rng);
    std::size_t v = verb();
    t.push_back(verbs_[v].past);
    object(t, v, rng);
  }
  t.push_back(".");
  return Sentence{std::move(t), false};
}

std::vector<Sentence> Generator::generate(std::size_t n, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<Sentence> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sentence(rng));
  return out;
}

std::string render_corpus(const std::vector<Sentence>& sentences) {
  std::string text;
  for (const auto& s : sentences) {
    std::string line;
    for (const auto& tok : s.tokens) {
      if (tok == ".") {
        line += '.';
        continue;
      }
      if (!line.empty()) line += ' ';
      line += tok == "i" ? "I" : tok;
    }
    line[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(line[0])));
    text += line;
    text += '\n';
  }
  return text;
}

}  // namespace realword::demo
