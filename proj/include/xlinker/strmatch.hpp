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

// Fuzzy candidate generation over every KOS name and synonym, scored by
// normalized Levenshtein similarity.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "xlinker/kos.hpp"

namespace xlinker {

enum class CandidateSource { kStringMatch, kXmr, kExactLookup };

const char* to_string(CandidateSource s);

struct ScoredCandidate {
  std::uint32_t concept_index = 0;
  double score = 0.0;  // in [0, 1]
  CandidateSource source = CandidateSource::kStringMatch;
  std::string matched_surface;
};

std::size_t edit_distance(const std::string& a, const std::string& b);

// 1 - d / max(|a|, |b|); two empty strings score 1. Equals 1 iff a == b.
double similarity(const std::string& a, const std::string& b);

// Immutable after build; match() is read-only.
class NameIndex {
 public:
  struct Entry {
    std::string name;  // lowercased
    std::uint32_t concept_index;
  };

  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // Concept indexes whose surface set contains the lowercased string.
  std::vector<std::uint32_t> exact(const std::string& lowercased) const;

  // Top-n concepts by best surface similarity, descending; ties broken by
  // ascending concept index. Length buckets are pruned only when they
  // cannot beat the current n-th best, so results equal an exhaustive scan.
  std::vector<ScoredCandidate> match(const std::string& mention_text,
                                     std::size_t top_n) const;

  friend NameIndex build_name_index(const KnowledgeBase& kb);

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> exact_;
  std::map<std::size_t, std::vector<std::uint32_t>> length_buckets_;
};

// Indexes every lowercased canonical name and synonym once per
// (string, concept) pair.
NameIndex build_name_index(const KnowledgeBase& kb);

}  // namespace xlinker
