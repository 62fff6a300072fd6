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

// Extreme multi-label ranking matcher: sparse TF-IDF vectorization, a
// balanced binary cluster tree over label embeddings, per-node linear
// models searched by beam, and an exact-lookup memorization map.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "xlinker/corpus.hpp"
#include "xlinker/sparse.hpp"
#include "xlinker/strmatch.hpp"

namespace xlinker {

// TF-IDF over word 1-2-grams plus character 3-5-grams of the lowercased
// text; idf = ln((N+1)/(df+1)) + 1. Transforms are L2-normalized or zero.
class Vectorizer {
 public:
  struct Term {
    char kind;  // 'u' word unigram, 'b' word bigram, '3'/'4'/'5' char grams
    std::string gram;
    double idf;
  };

  std::size_t dim() const { return vocab_.size(); }
  const std::vector<Term>& vocabulary() const { return vocab_; }

  SparseVec transform(const std::string& text) const;

  friend Vectorizer fit_vectorizer(const std::vector<std::string>& texts);
  friend Vectorizer load_vocab_file(const std::string& path);

 private:
  std::vector<Term> vocab_;  // sorted by (kind, gram)
  std::unordered_map<std::string, std::uint32_t> lookup_;  // kind + gram
};

Vectorizer fit_vectorizer(const std::vector<std::string>& texts);
Vectorizer load_vocab_file(const std::string& path);

// Distinct labels of a training set (ascending) with their aggregated,
// L2-normalized instance embeddings.
struct LabelSpace {
  std::vector<std::uint32_t> labels;
  std::vector<SparseVec> embeddings;
};

LabelSpace label_embeddings(const TrainingSet& train, const Vectorizer& vec);

struct ClusterNode {
  std::int32_t parent = -1;
  std::vector<std::uint32_t> children;  // empty for leaves
  std::vector<std::uint32_t> members;   // label positions, ascending
  SparseVec centroid;                   // L2-normalized member mean
};

// Recursive balanced spherical 2-means over label embeddings. Nodes are
// numbered in breadth-first creation order; node 0 is the root.
struct ClusterTree {
  std::uint32_t branching = 2;
  std::size_t max_leaf_size = 100;
  std::uint64_t seed = 42;
  std::size_t depth = 0;  // levels; a lone root counts 1
  std::vector<ClusterNode> nodes;
  std::vector<std::uint32_t> leaves;         // leaf node ids, ascending
  std::vector<std::uint32_t> leaf_of_label;  // label position -> leaf id
};

ClusterTree build_cluster_tree(const std::vector<SparseVec>& embeddings,
                               std::size_t max_leaf_size,
                               std::uint64_t seed = 42);

struct XmrModel {
  Vectorizer vectorizer;
  std::vector<std::uint32_t> labels;        // position -> concept index
  std::vector<std::uint64_t> label_priors;  // instances per position
  ClusterTree tree;
  // Row j of node_weights[n] scores child j (internal) or member j (leaf);
  // columns span the feature space plus a trailing bias column.
  std::vector<CsrMatrix> node_weights;
  // Lowercased training text -> owning concept indexes, ascending.
  std::map<std::string, std::vector<std::uint32_t>> exact_map;
};

// One-vs-rest L2-regularized logistic models at every tree node; the tree
// must have been built over this training set's label space.
XmrModel train(const TrainingSet& train_set, const Vectorizer& vec,
               const ClusterTree& tree);

// Beam search keeping the highest-scoring nodes per level; leaf candidates
// score path-product x sigmoid(ranker margin). A single-label exact_map hit
// is emitted first with score exactly 1.0.
std::vector<ScoredCandidate> predict(const std::string& mention_text,
                                     const XmrModel& model, std::size_t beam,
                                     std::size_t top_k);

// Model directory: manifest.json, labels.tsv, vocab.tsv, tree.json,
// centroids.bin, weights.bin, exact_map.tsv. Loading reproduces
// byte-identical predictions.
void save_model(const XmrModel& model, const std::string& dir);
XmrModel load_model(const std::string& dir);

}  // namespace xlinker
