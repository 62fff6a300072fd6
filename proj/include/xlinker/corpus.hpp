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

// PubTator corpora, evaluation datasets and distant-supervision training
// set generation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "xlinker/kos.hpp"

namespace xlinker {

struct Mention {
  std::string doc_id;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive; offsets over title + " " + abstract
  std::string text;
  std::string entity_type;
  std::string raw_id;                 // identifier field verbatim
  std::vector<std::string> gold_ids;  // '|'-split, prefix-stripped
};

// NIL annotations carry identifier "-1" or "-".
bool is_nil(const Mention& m);

struct Document {
  std::string doc_id;
  std::string title;
  std::string abstract_text;
  std::vector<Mention> mentions;
};

std::vector<Document> parse_pubtator(std::istream& in);
std::vector<Document> parse_pubtator_file(const std::string& path);
void write_pubtator(const std::vector<Document>& docs, std::ostream& out);

// One raw annotation occurrence; composite identifiers are expanded to one
// entry per id and NIL entries are dropped.
struct Annotation {
  std::string doc_id;
  std::string text;
  std::string id;
};

std::vector<Annotation> annotations_from_documents(
    const std::vector<Document>& docs);

struct TrainingInstance {
  std::uint32_t label = 0;  // dense concept index
  std::string text;         // lowercased
};

enum class Provenance { kKosOnly, kKosPlusPubtator };

// Instances are kept in canonical (label, text) ascending order, so equal
// sets compare equal as lists.
struct TrainingSet {
  std::vector<TrainingInstance> instances;
  Provenance provenance = Provenance::kKosPlusPubtator;
  std::optional<std::size_t> cap;
};

// Distant-supervision generation: drop excluded documents, lowercase,
// deduplicate (text, id) pairs keeping raw occurrence counts, map ids
// (alternates included) onto live concepts, then keep per label the cap
// most frequent texts (ties: lexicographically smaller text first).
TrainingSet generate_training_set(
    const std::vector<Annotation>& annotations, const KnowledgeBase& kb,
    const std::unordered_set<std::string>& excluded_docs,
    std::optional<std::size_t> cap);

// One instance per lowercased canonical name and synonym.
TrainingSet kos_training_instances(const KnowledgeBase& kb);

struct EvalDataset {
  std::vector<Document> documents;
  std::size_t nil_removed = 0;
  std::size_t obsolete_removed = 0;
};

// Drops NIL mentions and mentions none of whose gold ids resolve in kb.
EvalDataset load_eval_dataset(const std::string& path,
                              const KnowledgeBase& kb);

// Training-set files are two tab-separated columns: label_index<TAB>text.
void write_training_file(const TrainingSet& ts, const std::string& path);
TrainingSet read_training_file(const std::string& path);

}  // namespace xlinker
