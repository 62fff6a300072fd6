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

#include "xlinker/ppr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "xlinker/errors.hpp"

namespace xlinker {

DisambiguationGraph build_graph(
    const std::vector<std::vector<ScoredCandidate>>& candidate_lists,
    const KnowledgeBase& kb) {
  DisambiguationGraph g;
  for (std::uint32_t m = 0; m < candidate_lists.size(); ++m) {
    g.mention_groups.emplace_back();
    for (const ScoredCandidate& c : candidate_lists[m]) {
      g.mention_groups.back().push_back(std::uint32_t(g.nodes.size()));
      g.nodes.push_back({m, c.concept_index, c.score, c.source});
    }
  }

  g.adjacency.assign(g.nodes.size(), {});
  for (std::uint32_t i = 0; i < g.nodes.size(); ++i) {
    const auto& neigh = kb.neighbor_indexes(g.nodes[i].concept_index);
    for (std::uint32_t j = i + 1; j < g.nodes.size(); ++j) {
      if (g.nodes[i].mention == g.nodes[j].mention) continue;
      bool related =
          g.nodes[i].concept_index == g.nodes[j].concept_index ||
          std::binary_search(neigh.begin(), neigh.end(),
                             std::size_t(g.nodes[j].concept_index));
      if (!related) continue;
      g.adjacency[i].push_back(j);
      g.adjacency[j].push_back(i);
    }
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  return g;
}

std::vector<double> personalized_pagerank(const DisambiguationGraph& graph,
                                          std::size_t source, double teleport,
                                          double tol, std::size_t max_iters) {
  const std::size_t n = graph.nodes.size();
  if (n == 0) throw std::invalid_argument("empty disambiguation graph");
  if (source >= n) throw std::invalid_argument("source node out of range");

  std::vector<double> pi(n, 0.0), next(n);
  pi[source] = 1.0;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    next[source] = teleport;
    for (std::size_t u = 0; u < n; ++u) {
      if (pi[u] == 0.0) continue;
      const auto& adj = graph.adjacency[u];
      if (adj.empty()) {  // nowhere to walk: jump back to the source
        next[source] += (1.0 - teleport) * pi[u];
        continue;
      }
      double share = (1.0 - teleport) * pi[u] / double(adj.size());
      for (std::uint32_t v : adj) next[v] += share;
    }
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) delta += std::fabs(next[v] - pi[v]);
    pi.swap(next);
    if (delta <= tol) return pi;
  }
  throw ConvergenceError(
      "personalized pagerank did not reach tolerance " + std::to_string(tol) +
          " in " + std::to_string(max_iters) + " iterations",
      pi, max_iters);
}

std::vector<double> coherence_scores(const DisambiguationGraph& graph,
                                     const KnowledgeBase& kb,
                                     const PprParams& params) {
  const std::size_t n = graph.nodes.size();
  std::vector<double> coherence(n, 0.0);
  std::vector<double> ic(n);
  for (std::size_t t = 0; t < n; ++t)
    ic[t] = kb.information_content(std::size_t(graph.nodes[t].concept_index));

  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> pi = personalized_pagerank(
        graph, s, params.teleport, params.tol, params.max_iters);
    for (std::size_t t = 0; t < n; ++t) {
      if (graph.nodes[t].mention == graph.nodes[s].mention) continue;
      coherence[t] += pi[t] * ic[t];
    }
  }
  return coherence;
}

std::vector<ScoredCandidate> select(const DisambiguationGraph& graph,
                                    const std::vector<double>& coherence) {
  std::vector<ScoredCandidate> chosen;
  for (const auto& group : graph.mention_groups) {
    if (group.empty())
      throw std::invalid_argument("mention without candidate nodes");
    std::uint32_t best = group[0];
    for (std::size_t k = 1; k < group.size(); ++k) {
      std::uint32_t cur = group[k];
      const GraphNode& a = graph.nodes[cur];
      const GraphNode& b = graph.nodes[best];
      bool better;
      if (coherence[cur] != coherence[best]) {
        better = coherence[cur] > coherence[best];
      } else if (a.incoming_score != b.incoming_score) {
        better = a.incoming_score > b.incoming_score;
      } else {
        better = a.concept_index < b.concept_index;
      }
      if (better) best = cur;
    }
    const GraphNode& node = graph.nodes[best];
    chosen.push_back({node.concept_index, node.incoming_score, node.source,
                      std::string()});
  }
  return chosen;
}

void dump_graph(const DisambiguationGraph& graph, const KnowledgeBase& kb,
                std::ostream& out) {
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const GraphNode& n = graph.nodes[i];
    out << "NODE " << i << ' ' << n.mention << ' '
        << kb.id_of(n.concept_index) << ' '
        << kb.information_content(std::size_t(n.concept_index)) << ' '
        << n.incoming_score << '\n';
  }
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    for (std::uint32_t j : graph.adjacency[i]) {
      if (j > i) out << "EDGE " << i << ' ' << j << '\n';
    }
  }
}

}  // namespace xlinker
