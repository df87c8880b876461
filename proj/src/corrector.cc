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

#include "realword/corrector.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>

#include "realword/errors.h"

namespace realword {
namespace {

constexpr double kSaturated = 9007199254740992.0;  // 2^53

// Ranking shared by window spaces and candidate caps: higher score, then
// fewer edits, then lexicographically smaller choices.
bool ranks_before(double sa, std::size_t ea, std::span<const Choice> ca,
                  double sb, std::size_t eb, std::span<const Choice> cb) {
  if (sa != sb) return sa > sb;
  if (ea != eb) return ea < eb;
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

template <typename T>
bool ranks_before(const T& a, const T& b) {
  return ranks_before(a.score, a.edits, a.choices, b.score, b.edits, b.choices);
}

// Partial candidates covering positions [0, width), stored row-major.
struct PartialSet {
  std::size_t width = 0;
  std::size_t windows = 0;  // provenance entries per row
  std::vector<Choice> choices;
  std::vector<std::size_t> provenance;
  std::vector<double> score;
  std::vector<std::size_t> edits;

  std::size_t size() const { return score.size(); }
  std::span<const Choice> row(std::size_t i) const {
    return {choices.data() + i * width, width};
  }
  bool before(std::size_t a, std::size_t b) const {
    return ranks_before(score[a], edits[a], row(a), score[b], edits[b], row(b));
  }
};


std::size_t edit_limit(const ScanConfig& config) {
  return config.max_edits == 0 ? std::numeric_limits<std::size_t>::max()
                               : config.max_edits;
}

}  // namespace

void ScanConfig::validate() const {
  if (span == 0) throw ContractError("d must be at least 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractError("alpha must lie in (0, 1]");
  if (max_candidates == 0) throw ContractError("max_candidates must be positive");
  if (max_generated == 0) throw ContractError("max_generated must be positive");
  if (max_variations_per_word >= std::numeric_limits<Choice>::max()) {
    throw ContractError("max_variations_per_word too large");
  }
}

std::vector<Window> windows(const Sentence& padded, std::size_t d) {
  if (d == 0) throw ContractError("d must be at least 1");
  const std::size_t l = padded.tokens.size();
  const std::size_t len = d + 4;
  auto make = [&](std::size_t start, std::size_t end) {
    Window w;
    w.start = start;
    w.tokens.assign(padded.tokens.begin() + static_cast<long>(start),
                    padded.tokens.begin() + static_cast<long>(end));
    return w;
  };
  std::vector<Window> out;
  if (l <= len) {
    out.push_back(make(0, l));
    return out;
  }
  std::size_t start = 0;
  for (; start + len < l; start += d) out.push_back(make(start, start + len));
  out.push_back(make(l - len, l));
  return out;
}

Lattice::Lattice(const Sentence& padded, const TrigramModel& model,
                 const ScanConfig& config)
    : sentence_(padded.padded ? padded : pad(padded)) {
  const ChannelModel channel(config.alpha);
  const Vocabulary& vocab = model.vocab();
  positions_.reserve(sentence_.tokens.size());
  for (const auto& token : sentence_.tokens) {
    PositionOptions po;
    po.words.push_back(token);
    po.ids.push_back(model.id(token));
    po.channel.push_back(is_boundary(token) ? 0.0 : channel.keep_logprob());
    po.frequency.push_back(vocab.frequency(token));
    if (!is_marker(token) && vocab.contains(token)) {
      auto variations = spelling_variations(token, vocab);
      for (auto& v : top_variations(variations, vocab,
                                    config.max_variations_per_word)) {
        // The typed token is itself a variation of v, so this is >= 1.
        std::size_t count = spelling_variations(v, vocab).size();
        po.ids.push_back(model.id(v));
        po.channel.push_back(channel.edit_logprob(count));
        po.frequency.push_back(vocab.frequency(v));
        po.words.push_back(std::move(v));
      }
    }
    positions_.push_back(std::move(po));
  }

  // Every (c, c1, c2) score is needed many times over by the window and
  // combination searches, so compute each once.
  scores_.resize(positions_.size());
  for (std::size_t p = 1; p < positions_.size(); ++p) {
    const auto& cur = positions_[p];
    const auto& prev = positions_[p - 1];
    const std::size_t o1 = prev.words.size();
    const std::size_t o2 = p >= 2 ? positions_[p - 2].words.size() : 1;
    auto& table = scores_[p];
    table.resize(cur.words.size() * o1 * o2);
    for (std::size_t c = 0; c < cur.words.size(); ++c) {
      for (std::size_t c1 = 0; c1 < o1; ++c1) {
        for (std::size_t c2 = 0; c2 < o2; ++c2) {
          WordId h2 = p >= 2 ? positions_[p - 2].ids[c2] : vocab.bos();
          table[(c * o1 + c1) * o2 + c2] =
              cur.channel[c] + model.logprob(cur.ids[c], prev.ids[c1], h2);
        }
      }
    }
  }
}

double Lattice::product(std::size_t begin, std::size_t end) const {
  double p = 1.0;
  for (std::size_t i = begin; i < end; ++i) {
    p = std::min(kSaturated, p * static_cast<double>(positions_[i].words.size()));
  }
  return p;
}

double Lattice::local_score(std::size_t p, Choice c, Choice c1, Choice c2,
                            std::size_t history_begin) const {
  if (p == 0 || p - 1 < history_begin || (p >= 2 && p - 2 < history_begin)) {
    return positions_[p].channel[c];
  }
  const std::size_t o1 = positions_[p - 1].words.size();
  const std::size_t o2 = p >= 2 ? positions_[p - 2].words.size() : 1;
  if (p < 2) c2 = 0;
  return scores_[p][(static_cast<std::size_t>(c) * o1 + c1) * o2 + c2];
}

std::vector<std::string> Lattice::realize(std::span<const Choice> choices) const {
  std::vector<std::string> out;
  out.reserve(choices.size());
  for (std::size_t i = 0; i < choices.size(); ++i) {
    out.push_back(positions_[i].words[choices[i]]);
  }
  return out;
}

WindowSpace window_search_space(const Window& window, const Lattice& lattice,
                                const ScanConfig& config) {
  const std::size_t b = window.start;
  const std::size_t n = window.tokens.size();
  WindowSpace space;
  space.window = window;
  space.full_size = lattice.product(b, b + n);
  const std::size_t max_edits = edit_limit(config);

  // Options usable at each window position; option k is the k-th most
  // frequent variation, so trimming from the back drops the rarest first.
  std::vector<std::size_t> limit(n);
  for (std::size_t k = 0; k < n; ++k) limit[k] = lattice.at(b + k).words.size();
  auto limited_product = [&] {
    double p = 1.0;
    for (std::size_t x : limit) p = std::min(kSaturated, p * static_cast<double>(x));
    return p;
  };
  const auto budget = static_cast<double>(config.max_generated);
  while (limited_product() > budget) {
    std::size_t victim = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (limit[k] <= 1) continue;
      if (victim == n || lattice.at(b + k).frequency[limit[k] - 1] <=
                             lattice.at(b + victim).frequency[limit[victim] - 1]) {
        victim = k;
      }
    }
    --limit[victim];
  }
  space.generated = limited_product();

  // Depth-first enumeration with incremental scores into a bounded heap
  // whose front is the worst member kept.
  const std::size_t cap = config.max_candidates;
  auto worse = [](const SubSequence& a, const SubSequence& b2) { return ranks_before(a, b2); };
  std::vector<SubSequence>& heap = space.members;
  std::vector<Choice> cur(n, 0);
  SubSequence original;
  auto offer = [&](double score, std::size_t edits) {
    if (edits == 0) original = {cur, score, 0};
    if (heap.size() < cap) {
      heap.push_back({cur, score, edits});
      std::push_heap(heap.begin(), heap.end(), worse);
      return;
    }
    const auto& w = heap.front();
    if (!ranks_before(score, edits, cur, w.score, w.edits, w.choices)) return;
    std::pop_heap(heap.begin(), heap.end(), worse);
    heap.back().choices.assign(cur.begin(), cur.end());
    heap.back().score = score;
    heap.back().edits = edits;
    std::push_heap(heap.begin(), heap.end(), worse);
  };
  auto recurse = [&](auto&& self, std::size_t k, double score,
                     std::size_t edits) -> void {
    if (k == n) {
      offer(score, edits);
      return;
    }
    const std::size_t p = b + k;
    for (std::size_t c = 0; c < limit[k]; ++c) {
      std::size_t e = edits + (c > 0 ? 1 : 0);
      if (e > max_edits) break;
      cur[k] = static_cast<Choice>(c);
      Choice c1 = k >= 1 ? cur[k - 1] : 0;
      Choice c2 = k >= 2 ? cur[k - 2] : 0;
      self(self, k + 1, score + lattice.local_score(p, cur[k], c1, c2, b), e);
    }
  };
  recurse(recurse, 0, 0.0, 0);

  const bool kept = std::any_of(heap.begin(), heap.end(),
                                [](const SubSequence& m) { return m.edits == 0; });
  if (!kept) heap.front() = std::move(original);
  std::sort(heap.begin(), heap.end(), [](const SubSequence& a, const SubSequence& b2) {
    return a.choices < b2.choices;
  });
  return space;
}

std::vector<Candidate> combine(std::span<const WindowSpace> spaces,
                               const Lattice& lattice,
                               const ScanConfig& config) {
  std::vector<Candidate> out;
  if (spaces.empty()) return out;
  const std::size_t max_edits = edit_limit(config);
  const std::size_t cap = config.max_candidates;

  const auto& first = spaces.front();
  if (first.window.start != 0) throw ContractError("first window must start at 0");
  PartialSet parts;
  parts.width = first.window.end();
  parts.windows = 1;
  for (std::size_t m = 0; m < first.members.size(); ++m) {
    const auto& ch = first.members[m].choices;
    double score = 0.0;
    for (std::size_t p = 0; p < ch.size(); ++p) {
      score += lattice.local_score(p, ch[p], p >= 1 ? ch[p - 1] : 0,
                                   p >= 2 ? ch[p - 2] : 0, 0);
    }
    parts.choices.insert(parts.choices.end(), ch.begin(), ch.end());
    parts.provenance.push_back(m);
    parts.score.push_back(score);
    parts.edits.push_back(first.members[m].edits);
  }

  // Member tails are scored once: with at least two overlapping positions
  // the trigram history of every new position lies inside the member.
  struct Tail {
    std::uint64_t key;
    std::size_t member;
    double score;
    std::size_t edits;
  };
  struct Keyed {
    std::uint64_t key;
    double score;
    std::size_t part;
  };
  // Partials and tails sharing an overlap, each range best first.
  struct Group {
    std::size_t part_begin, part_end;
    std::size_t tail_begin, tail_end;
  };
  struct Ext {
    std::size_t part;
    std::size_t member;
    double score;
    std::size_t edits;
  };
  struct Frontier {
    double score;
    std::uint32_t i, k;  // positions in part_order and tails
  };

  std::vector<Tail> tails;
  std::vector<Keyed> part_order, radix_buf;
  std::vector<std::size_t> counts;
  std::vector<std::uint64_t> part_key, member_key;
  std::vector<Group> groups;
  std::vector<std::uint32_t> group_of;
  std::vector<Frontier> heap;
  std::vector<Ext> picked;
  for (std::size_t j = 1; j < spaces.size(); ++j) {
    const auto& space = spaces[j];
    const std::size_t start = space.window.start;
    const std::size_t end = space.window.end();
    const std::size_t covered = parts.width;
    if (start > covered) throw ContractError("windows leave a gap");
    const std::size_t overlap = covered - start;
    if (overlap < 2) throw ContractError("windows must overlap by two tokens");

    auto member_head = [&](std::size_t m) {
      return std::span(space.members[m].choices).first(overlap);
    };
    auto part_head = [&](std::size_t i) { return parts.row(i).subspan(start, overlap); };

    // Overlaps become integer keys that order like the choices themselves.
    // Up to four choices pack into one word; longer overlaps (the clamped
    // last window) get dense ranks instead.
    part_key.resize(parts.size());
    member_key.resize(space.members.size());
    const bool packed = overlap * 16 <= 64;
    if (packed) {
      auto pack = [](std::span<const Choice> h) {
        std::uint64_t k = 0;
        for (Choice c : h) k = (k << 16) | c;
        return k;
      };
      for (std::size_t i = 0; i < parts.size(); ++i) part_key[i] = pack(part_head(i));
      for (std::size_t m = 0; m < space.members.size(); ++m) member_key[m] = pack(member_head(m));
    } else {
      std::vector<std::span<const Choice>> heads;
      for (std::size_t i = 0; i < parts.size(); ++i) heads.push_back(part_head(i));
      for (std::size_t m = 0; m < space.members.size(); ++m) heads.push_back(member_head(m));
      std::vector<std::size_t> idx(heads.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      auto less_span = [&](std::size_t x, std::size_t y) {
        return std::ranges::lexicographical_compare(heads[x], heads[y]);
      };
      std::sort(idx.begin(), idx.end(), less_span);
      std::uint64_t rank = 0;
      for (std::size_t r = 0; r < idx.size(); ++r) {
        if (r > 0 && less_span(idx[r - 1], idx[r])) ++rank;
        if (idx[r] < parts.size()) {
          part_key[idx[r]] = rank;
        } else {
          member_key[idx[r] - parts.size()] = rank;
        }
      }
    }

    tails.clear();
    for (std::size_t m = 0; m < space.members.size(); ++m) {
      const auto& ch = space.members[m].choices;
      Tail t{member_key[m], m, 0.0, 0};
      for (std::size_t p = covered; p < end; ++p) {
        const std::size_t k = p - start;
        t.score += lattice.local_score(p, ch[k], ch[k - 1], ch[k - 2], 0);
        if (ch[k] != 0) ++t.edits;
      }
      tails.push_back(t);
    }
    // Members are in choice order, so their keys already ascend; only each
    // run of equal keys needs ranking.
    for (std::size_t r = 0; r < tails.size();) {
      std::size_t e = r + 1;
      while (e < tails.size() && tails[e].key == tails[r].key) ++e;
      std::sort(tails.begin() + static_cast<long>(r), tails.begin() + static_cast<long>(e),
                [](const Tail& a, const Tail& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.member < b.member;
                });
      r = e;
    }
    part_order.resize(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      part_order[i] = {part_key[i], parts.score[i], i};
    }
    if (packed && std::is_sorted(parts.score.begin(), parts.score.end(), std::greater<>())) {
      // Partials already run best first, so stable passes over the packed
      // choices, last position first, leave every key's range best first.
      std::size_t radix = 1;
      for (std::size_t p = start; p < covered; ++p) {
        radix = std::max(radix, lattice.at(p).words.size());
      }
      radix_buf.resize(part_order.size());
      for (std::size_t t = 0; t < overlap; ++t) {
        const unsigned shift = static_cast<unsigned>(16 * t);
        counts.assign(radix + 1, 0);
        for (const Keyed& k : part_order) ++counts[((k.key >> shift) & 0xFFFF) + 1];
        std::partial_sum(counts.begin(), counts.end(), counts.begin());
        for (const Keyed& k : part_order) radix_buf[counts[(k.key >> shift) & 0xFFFF]++] = k;
        part_order.swap(radix_buf);
      }
    } else {
      std::sort(part_order.begin(), part_order.end(), [](const Keyed& a, const Keyed& b) {
        if (a.key != b.key) return a.key < b.key;
        if (a.score != b.score) return a.score > b.score;
        return a.part < b.part;
      });
    }

    // Both lists are ordered by key, so matching groups line up.
    groups.clear();
    group_of.resize(part_order.size());
    for (std::size_t pi = 0, ti = 0; pi < part_order.size() && ti < tails.size();) {
      const std::uint64_t kp = part_order[pi].key;
      const std::uint64_t kt = tails[ti].key;
      if (kp < kt) {
        ++pi;
      } else if (kt < kp) {
        ++ti;
      } else {
        Group g{pi, pi, ti, ti};
        while (g.part_end < part_order.size() && part_order[g.part_end].key == kp) {
          ++g.part_end;
        }
        while (g.tail_end < tails.size() && tails[g.tail_end].key == kt) {
          ++g.tail_end;
        }
        std::fill(group_of.begin() + static_cast<long>(g.part_begin),
                  group_of.begin() + static_cast<long>(g.part_end),
                  static_cast<std::uint32_t>(groups.size()));
        groups.push_back(g);
        pi = g.part_end;
        ti = g.tail_end;
      }
    }

    // Walk every group's (partial, tail) grid in nonincreasing score order
    // until `cap` admissible pairs are out and the next score is lower.
    // A max-heap on score; the popped entry's first successor takes its
    // place with one sift instead of a pop and a push.
    auto sift_down = [&](std::size_t at) {
      const Frontier moving = heap[at];
      const std::size_t n = heap.size();
      for (;;) {
        std::size_t child = 2 * at + 1;
        if (child >= n) break;
        if (child + 1 < n && heap[child + 1].score > heap[child].score) ++child;
        if (heap[child].score <= moving.score) break;
        heap[at] = heap[child];
        at = child;
      }
      heap[at] = moving;
    };
    auto push = [&](Frontier f) {
      heap.push_back(f);
      std::size_t at = heap.size() - 1;
      while (at > 0) {
        const std::size_t parent = (at - 1) / 2;
        if (heap[parent].score >= f.score) break;
        heap[at] = heap[parent];
        at = parent;
      }
      heap[at] = f;
    };
    heap.clear();
    for (const Group& gr : groups) {
      heap.push_back({part_order[gr.part_begin].score + tails[gr.tail_begin].score,
                      static_cast<std::uint32_t>(gr.part_begin),
                      static_cast<std::uint32_t>(gr.tail_begin)});
    }
    for (std::size_t h = heap.size() / 2; h-- > 0;) sift_down(h);
    picked.clear();
    while (!heap.empty()) {
      const Frontier f = heap.front();
      if (picked.size() >= cap && f.score < picked.back().score) break;
      const Group& g = groups[group_of[f.i]];
      const std::size_t pi = part_order[f.i].part;
      const Tail& tail = tails[f.k];
      if (parts.edits[pi] + tail.edits <= max_edits) {
        picked.push_back({pi, tail.member, f.score, parts.edits[pi] + tail.edits});
      }
      bool replaced = false;
      auto emit = [&](Frontier next) {
        if (replaced) {
          push(next);
        } else {
          heap.front() = next;
          sift_down(0);
          replaced = true;
        }
      };
      if (f.k + 1 < g.tail_end) emit({part_order[f.i].score + tails[f.k + 1].score, f.i, f.k + 1});
      if (f.k == g.tail_begin && f.i + 1 < g.part_end) {
        emit({part_order[f.i + 1].score + tails[g.tail_begin].score, f.i + 1, f.k});
      }
      if (!replaced) {
        heap.front() = heap.back();
        heap.pop_back();
        if (!heap.empty()) sift_down(0);
      }
    }

    auto before = [&](const Ext& a, const Ext& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.edits != b.edits) return a.edits < b.edits;
      auto ra = parts.row(a.part);
      auto rb = parts.row(b.part);
      if (!std::equal(ra.begin(), ra.end(), rb.begin())) {
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
      }
      const auto& ma = space.members[a.member].choices;
      const auto& mb = space.members[b.member].choices;
      return std::lexicographical_compare(ma.begin() + static_cast<long>(overlap), ma.end(),
                                          mb.begin() + static_cast<long>(overlap), mb.end());
    };
    // The walk already yields nonincreasing scores; only ties need ordering.
    for (std::size_t r = 0; r < picked.size();) {
      std::size_t e = r + 1;
      while (e < picked.size() && picked[e].score == picked[r].score) ++e;
      if (e - r > 1) {
        std::sort(picked.begin() + static_cast<long>(r), picked.begin() + static_cast<long>(e),
                  before);
      }
      r = e;
    }
    if (picked.size() > cap) picked.resize(cap);
    const bool has_original = std::any_of(picked.begin(), picked.end(),
                                          [](const Ext& e) { return e.edits == 0; });
    if (!has_original) {
      // Evicted by the cap: rescore the unmodified extension and put it back.
      auto orig_part = std::find(parts.edits.begin(), parts.edits.end(), 0);
      auto orig_member = std::find_if(space.members.begin(), space.members.end(),
                                      [](const SubSequence& m) { return m.edits == 0; });
      if (orig_part != parts.edits.end() && orig_member != space.members.end()) {
        const auto pi = static_cast<std::size_t>(orig_part - parts.edits.begin());
        const auto& ch = orig_member->choices;
        double score = parts.score[pi];
        for (std::size_t p = covered; p < end; ++p) {
          const std::size_t k = p - start;
          score += lattice.local_score(p, ch[k], ch[k - 1], ch[k - 2], 0);
        }
        Ext e{pi, static_cast<std::size_t>(orig_member - space.members.begin()), score, 0};
        if (picked.size() >= cap) picked.back() = e;
        else picked.push_back(e);
      }
    }

    PartialSet next;
    next.width = end;
    next.windows = parts.windows + 1;
    next.choices.resize(picked.size() * end);
    next.provenance.resize(picked.size() * next.windows);
    next.score.resize(picked.size());
    next.edits.resize(picked.size());
    Choice* out_row = next.choices.data();
    std::size_t* out_prov = next.provenance.data();
    for (std::size_t r = 0; r < picked.size(); ++r) {
      const Ext& e = picked[r];
      const auto row = parts.row(e.part);
      const auto& member = space.members[e.member].choices;
      out_row = std::copy(row.begin(), row.end(), out_row);
      out_row = std::copy(member.begin() + static_cast<long>(overlap), member.end(), out_row);
      const std::size_t* prov = parts.provenance.data() + e.part * parts.windows;
      out_prov = std::copy(prov, prov + parts.windows, out_prov);
      *out_prov++ = e.member;
      next.score[r] = e.score;
      next.edits[r] = e.edits;
    }
    parts = std::move(next);
  }

  std::vector<std::size_t> order(parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto ranked = [&](std::size_t a, std::size_t b) { return parts.before(a, b); };
  // Merged rows already come out ranked; a single window does not.
  if (!std::is_sorted(order.begin(), order.end(), ranked)) {
    std::sort(order.begin(), order.end(), ranked);
  }
  out.reserve(order.size());
  for (std::size_t i : order) {
    Candidate c;
    auto row = parts.row(i);
    c.choices.assign(row.begin(), row.end());
    c.tokens = lattice.realize(c.choices);
    c.edits.reserve(static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [](Choice x) { return x != 0; })));
    for (std::size_t p = 0; p < c.choices.size(); ++p) {
      if (c.choices[p] != 0) {
        c.edits.push_back({p - 1, lattice.at(p).words[0], c.tokens[p]});
      }
    }
    auto prov = parts.provenance.begin() + static_cast<long>(i * parts.windows);
    c.window_provenance.assign(prov, prov + static_cast<long>(parts.windows));
    c.score = parts.score[i];
    out.push_back(std::move(c));
  }
  return out;
}

double score_candidate(const Candidate& candidate, const Sentence& original,
                       const TrigramModel& model, const ChannelModel& channel) {
  const Sentence observed = original.padded ? original : pad(original);
  if (observed.tokens.size() != candidate.tokens.size()) {
    throw ContractError("candidate length differs from the original sentence");
  }
  Sentence cand{candidate.tokens, true};
  double score = sentence_logprob(model, cand);
  for (std::size_t i = 0; i < observed.tokens.size(); ++i) {
    const auto& typed = observed.tokens[i];
    if (is_boundary(typed)) continue;
    const auto& intended = candidate.tokens[i];
    if (typed == intended) {
      score += channel.keep_logprob();
    } else {
      score += channel.logprob(typed, intended,
                               spelling_variations(intended, model.vocab()));
    }
  }
  return score;
}

CorrectionResult correct_sentence(const Sentence& sentence,
                                  const TrigramModel& model,
                                  const MorphLexicon& lexicon,
                                  const Grammar& grammar,
                                  const ScanConfig& config,
                                  CorrectionTrace* trace) {
  config.validate();
  const Sentence padded = pad(sentence);
  CorrectionResult result;
  result.original = unpad(sentence);

  const Lattice lattice(padded, model, config);
  std::vector<WindowSpace> spaces;
  for (const auto& w : windows(padded, config.span)) {
    spaces.push_back(window_search_space(w, lattice, config));
  }
  std::vector<Candidate> pool = combine(spaces, lattice, config);
  result.initial_space = pool.size();
  result.uncapped_space = lattice.product(0, lattice.size());

  const DisambiguationOptions cg_options{config.heuristics};
  std::vector<bool> well_formed(pool.size(), false);
  std::vector<std::size_t> scored;
  std::size_t original_index = pool.size();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].edits.empty()) original_index = i;
    auto analyses = disambiguate(analyze(Sentence{pool[i].tokens, true}, lexicon),
                                 grammar, cg_options);
    well_formed[i] = is_well_formed(analyses).well_formed;
    if (well_formed[i]) scored.push_back(i);
  }
  result.final_space = scored.size();
  if (original_index == pool.size()) {
    throw ContractError("internal: unmodified sentence missing from the pool");
  }
  if (!well_formed[original_index]) {
    scored.push_back(original_index);
    result.final_space = scored.size();
  }

  auto better = [&](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.edits.size() != b.edits.size()) return a.edits.size() < b.edits.size();
    return a.tokens < b.tokens;
  };
  std::size_t best = scored.front();
  for (std::size_t i : scored) {
    if (better(pool[i], pool[best])) best = i;
  }

  result.corrected = unpad(Sentence{pool[best].tokens, true});
  result.edits = pool[best].edits;
  result.score_log = pool[best].score;
  if (trace != nullptr) {
    trace->pool = std::move(pool);
    trace->well_formed = std::move(well_formed);
    trace->scored = std::move(scored);
  }
  return result;
}

}  // namespace realword
