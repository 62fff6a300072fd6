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

// Target knowledge organization system: CTD-style vocabulary loading,
// id/index mapping, is-a adjacency and intrinsic information content.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace xlinker {

struct Concept {
  std::string id;
  std::string canonical_name;
  std::vector<std::string> synonyms;    // no duplicates after lowercasing
  std::vector<std::string> parent_ids;  // every entry resolves in the same KB
  std::vector<std::string> alt_ids;
};

// Immutable after load; safe for unrestricted concurrent reads.
class KnowledgeBase {
 public:
  std::size_t size() const { return concepts_.size(); }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const Concept& concept_at(std::size_t index) const { return concepts_[index]; }

  // Dense label index <-> identifier bijection.
  std::size_t index_of(const std::string& id) const;  // throws LookupError
  const std::string& id_of(std::size_t index) const;
  bool contains(const std::string& id) const;

  // Resolves a primary or alternate identifier to its concept index;
  // nullopt means the id is obsolete (absent everywhere).
  std::optional<std::size_t> resolve(const std::string& id) const;

  // Number of direct children (concepts listing this one as parent).
  std::size_t children_count(std::size_t index) const {
    return children_count_[index];
  }

  // Intrinsic information content: -ln((Desc(e)+1) / |E|) with Desc the
  // direct-children count.
  double information_content(const std::string& id) const;
  double information_content(std::size_t index) const;

  // Undirected is-a adjacency: union of parents and direct children.
  std::vector<std::string> neighbors(const std::string& id) const;
  const std::vector<std::size_t>& neighbor_indexes(std::size_t index) const {
    return adjacency_[index];
  }

  friend KnowledgeBase load_kos(const std::string& path);

 private:
  std::vector<Concept> concepts_;
  std::unordered_map<std::string, std::size_t> index_;      // primary ids
  std::unordered_map<std::string, std::size_t> alt_index_;  // alt -> owner
  std::vector<std::size_t> children_count_;
  std::vector<std::vector<std::size_t>> adjacency_;  // sorted, unique
};

// Loads a CTD-style TSV vocabulary ('#' comment header lines; columns
// Name, ID, AltIDs, Definition, ParentIDs, TreeNumbers, ParentTreeNumbers,
// Synonyms; multi-valued fields '|'-separated). MESH:/OMIM: prefixes are
// stripped from identifiers.
KnowledgeBase load_kos(const std::string& path);

// Writes the KB back out in the same CTD-style TSV layout (used by the
// build-kb command; reloading reproduces the KB exactly).
void write_ctd_tsv(const KnowledgeBase& kb, const std::string& path);

// "MESH:D014657" -> "D014657"; non-prefixed ids pass through.
std::string strip_id_prefix(const std::string& id);

}  // namespace xlinker
