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

// Collective disambiguation over a per-document candidate graph, scored by
// information-content-weighted Personalized PageRank.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "xlinker/kos.hpp"
#include "xlinker/strmatch.hpp"

namespace xlinker {

// Power-iteration defaults. 100 iterations cannot reach 1e-8 on small
// graphs (the walk contracts by at most 1 - teleport per step, and
// 0.85^100 is about 8.7e-8), so the ceiling sits at 200.
struct PprParams {
  double teleport = 0.15;
  double tol = 1e-8;
  std::size_t max_iters = 200;
};

struct GraphNode {
  std::uint32_t mention = 0;  // mention group this node belongs to
  std::uint32_t concept_index = 0;
  double incoming_score = 0.0;  // candidate score that created the node
  CandidateSource source = CandidateSource::kStringMatch;
};

// Edges join nodes of different mentions whose concepts are identical or
// directly related in the KOS.
struct DisambiguationGraph {
  std::vector<GraphNode> nodes;
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted, unique
  std::vector<std::vector<std::uint32_t>> mention_groups;
};

DisambiguationGraph build_graph(
    const std::vector<std::vector<ScoredCandidate>>& candidate_lists,
    const KnowledgeBase& kb);

// Random walk teleporting to one fixed source node; a node without
// neighbors sends its mass back to the source. Throws ConvergenceError
// (carrying the last iterate) when max_iters is hit first.
std::vector<double> personalized_pagerank(const DisambiguationGraph& graph,
                                          std::size_t source, double teleport,
                                          double tol, std::size_t max_iters);

// coherence(t) = sum over source nodes s of other mentions of
// PPR_s(t) * IC(concept(t)).
std::vector<double> coherence_scores(const DisambiguationGraph& graph,
                                     const KnowledgeBase& kb,
                                     const PprParams& params = {});

// Per mention: the node with the highest coherence; ties fall to the higher
// incoming candidate score, then the lower concept index. All-zero
// coherence degrades to an incoming-score vote.
std::vector<ScoredCandidate> select(const DisambiguationGraph& graph,
                                    const std::vector<double>& coherence);

// Line-oriented debug dump: NODE idx mention concept ic score / EDGE i j.
void dump_graph(const DisambiguationGraph& graph, const KnowledgeBase& kb,
                std::ostream& out);

}  // namespace xlinker
