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

// End-to-end linking: abbreviation expansion, dual candidate generation,
// threshold routing, graph disambiguation, final selection.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "xlinker/corpus.hpp"
#include "xlinker/ppr.hpp"
#include "xlinker/strmatch.hpp"
#include "xlinker/xmr.hpp"

namespace xlinker {

struct PipelineConfig {
  double threshold = 0.1;  // minimum accepted matcher score
  std::size_t beam = 10;
  std::size_t top_k = 5;
  std::size_t string_top_n = 1;
  PprParams ppr;
  // When set, only mentions of this entity type are linked; one run links
  // one type against its matching KOS.
  std::string entity_type;
};

// Which routing branch produced the selected candidate.
enum class Branch { kExact, kPecos, kLowScore, kNil };

const char* to_string(Branch b);

struct LinkedMention {
  Mention mention;
  std::string expanded_text;
  Branch trace = Branch::kNil;
  // Ranked (concept id, score); empty only when both generators returned
  // nothing.
  std::vector<std::pair<std::string, double>> prediction;
};

std::vector<LinkedMention> link_document(const Document& doc,
                                         const XmrModel& model,
                                         const KnowledgeBase& kb,
                                         const NameIndex& index,
                                         const PipelineConfig& cfg);

struct CorpusLinkResult {
  std::vector<std::vector<LinkedMention>> per_document;  // aligned with docs
  std::vector<std::string> errors;  // per-document failures, non-fatal
};

CorpusLinkResult link_corpus(const std::vector<Document>& docs,
                             const XmrModel& model, const KnowledgeBase& kb,
                             const NameIndex& index, const PipelineConfig& cfg,
                             std::size_t jobs = 1);

// PubTator documents with a seventh annotation column carrying the ranked
// predicted ids (comma-separated; "-" when empty).
void write_predictions(const std::vector<Document>& docs,
                       const CorpusLinkResult& result, std::ostream& out);

// One record per linked mention: doc id, span, text, expanded text, branch,
// ranked id:score pairs.
void write_link_report(const CorpusLinkResult& result, std::ostream& out);

}  // namespace xlinker
