// Copyright 2026 The XLinker Authors.
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

#include "xlinker/strmatch.hpp"

#include <algorithm>
#include <set>

#include "xlinker/text.hpp"

namespace xlinker {

const char* to_string(CandidateSource s) {
  switch (s) {
    case CandidateSource::kStringMatch:
      return "string-match";
    case CandidateSource::kXmr:
      return "xmr";
    case CandidateSource::kExactLookup:
      return "exact-lookup";
  }
  return "unknown";
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  if (a.size() < b.size()) return edit_distance(b, a);
  // a is the longer string; two rows over |b|+1 columns.
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double similarity(const std::string& a, const std::string& b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - double(edit_distance(a, b)) / double(longest);
}

std::vector<std::uint32_t> NameIndex::exact(const std::string& lowercased) const {
  auto it = exact_.find(lowercased);
  if (it == exact_.end()) return {};
  return it->second;
}

NameIndex build_name_index(const KnowledgeBase& kb) {
  NameIndex index;
  std::set<std::pair<std::string, std::uint32_t>> seen;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    const Concept& c = kb.concept_at(i);
    auto add = [&](const std::string& surface) {
      std::string lowered = to_lower(surface);
      if (lowered.empty()) return;
      if (!seen.emplace(lowered, std::uint32_t(i)).second) return;
      index.entries_.push_back({lowered, std::uint32_t(i)});
    };
    add(c.canonical_name);
    for (const auto& syn : c.synonyms) add(syn);
  }
  for (std::uint32_t e = 0; e < index.entries_.size(); ++e) {
    const NameIndex::Entry& entry = index.entries_[e];
    index.exact_[entry.name].push_back(entry.concept_index);
    index.length_buckets_[entry.name.size()].push_back(e);
  }
  for (auto& [name, ids] : index.exact_) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  return index;
}

std::vector<ScoredCandidate> NameIndex::match(const std::string& mention_text,
                                              std::size_t top_n) const {
  if (top_n == 0) return {};
  std::string query = to_lower(mention_text);

  // Best score per concept; surface ties keep the smaller string.
  std::unordered_map<std::uint32_t, std::pair<double, const std::string*>> best;

  // Bucket upper bound: strings of length L are at distance >= |L - q|.
  auto bound = [&](std::size_t len) {
    std::size_t longest = std::max(len, query.size());
    if (longest == 0) return 1.0;
    std::size_t diff = len > query.size() ? len - query.size()
                                          : query.size() - len;
    return 1.0 - double(diff) / double(longest);
  };

  std::vector<std::pair<double, std::size_t>> order;  // (bound, length)
  for (const auto& [len, ids] : length_buckets_)
    order.emplace_back(bound(len), len);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  auto nth_best = [&]() {
    // Current n-th best concept score, or -1 while fewer than n concepts.
    if (best.size() < top_n) return -1.0;
    std::vector<double> scores;
    scores.reserve(best.size());
    for (const auto& [id, sc] : best) scores.push_back(sc.first);
    std::nth_element(scores.begin(), scores.begin() + std::ptrdiff_t(top_n) - 1,
                     scores.end(), std::greater<double>());
    return scores[top_n - 1];
  };

  double cutoff = -1.0;
  for (const auto& [b, len] : order) {
    if (b < cutoff) break;  // equal bounds still matter for tie-breaking
    for (std::uint32_t e : length_buckets_.at(len)) {
      const Entry& entry = entries_[e];
      double s = similarity(query, entry.name);
      auto it = best.find(entry.concept_index);
      if (it == best.end()) {
        best.emplace(entry.concept_index, std::make_pair(s, &entry.name));
      } else if (s > it->second.first ||
                 (s == it->second.first && entry.name < *it->second.second)) {
        it->second = {s, &entry.name};
      }
    }
    cutoff = nth_best();
  }

  std::vector<ScoredCandidate> out;
  out.reserve(best.size());
  for (const auto& [id, sc] : best)
    out.push_back({id, sc.first, CandidateSource::kStringMatch, *sc.second});
  std::sort(out.begin(), out.end(),
            [](const ScoredCandidate& a, const ScoredCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.concept_index < b.concept_index;
            });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

}  // namespace xlinker
