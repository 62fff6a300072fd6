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

#include "xlinker/xmr.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "xlinker/logreg.hpp"
#include "xlinker/text.hpp"

namespace xlinker {

namespace {

constexpr double kLambda = 1.0;       // L2 regularization strength
constexpr double kSolverTol = 1e-4;   // gradient norm target
constexpr std::size_t kSolverIters = 300;
constexpr std::size_t kSplitIters = 20;
constexpr std::uint64_t kNodeSeedMix = 0x9E3779B97F4A7C15ULL;

template <typename Fn>
void for_each_term(const std::string& text, Fn fn) {
  std::string lowered = to_lower(text);
  std::vector<std::string> words = word_tokens(lowered);
  for (const auto& w : words) fn('u', w);
  for (std::size_t i = 0; i + 1 < words.size(); ++i)
    fn('b', words[i] + ' ' + words[i + 1]);
  std::string collapsed = normalize_spaces(lowered);
  for (std::size_t n = 3; n <= 5; ++n) {
    if (collapsed.size() < n) break;
    char kind = char('0' + n);
    for (std::size_t i = 0; i + n <= collapsed.size(); ++i)
      fn(kind, collapsed.substr(i, n));
  }
}

double sigmoid(double z) {
  double s;
  if (z >= 0) {
    s = 1.0 / (1.0 + std::exp(-z));
  } else {
    double e = std::exp(z);
    s = e / (1.0 + e);
  }
  return std::max(s, std::numeric_limits<double>::min());
}

// Dot of one CSR row against a sparse vector (both index-sorted).
double csr_row_dot(const CsrMatrix& m, std::size_t r, const SparseVec& x) {
  std::size_t a = m.row_offsets[r], a_end = m.row_offsets[r + 1];
  std::size_t b = 0;
  double s = 0.0;
  while (a < a_end && b < x.idx.size()) {
    if (m.col_idx[a] < x.idx[b]) {
      ++a;
    } else if (m.col_idx[a] > x.idx[b]) {
      ++b;
    } else {
      s += m.values[a] * x.val[b];
      ++a;
      ++b;
    }
  }
  return s;
}

}  // namespace

SparseVec Vectorizer::transform(const std::string& text) const {
  std::unordered_map<std::uint32_t, double> tf;
  std::string key;
  for_each_term(text, [&](char kind, const std::string& gram) {
    key.assign(1, kind);
    key += gram;
    auto it = lookup_.find(key);
    if (it != lookup_.end()) tf[it->second] += 1.0;
  });
  SparseVec v;
  v.idx.reserve(tf.size());
  for (const auto& [i, c] : tf) v.idx.push_back(i);
  std::sort(v.idx.begin(), v.idx.end());
  v.val.reserve(v.idx.size());
  for (std::uint32_t i : v.idx) v.val.push_back(tf[i] * vocab_[i].idf);
  l2_normalize(v);
  return v;
}

Vectorizer fit_vectorizer(const std::vector<std::string>& texts) {
  if (texts.empty())
    throw std::invalid_argument("cannot fit a vectorizer on an empty corpus");
  std::unordered_map<std::string, std::size_t> df;
  std::set<std::string> per_text;
  for (const auto& t : texts) {
    per_text.clear();
    for_each_term(t, [&](char kind, const std::string& gram) {
      std::string key(1, kind);
      key += gram;
      per_text.insert(std::move(key));
    });
    for (const auto& key : per_text) df[key] += 1;
  }

  Vectorizer vec;
  std::vector<std::string> keys;
  keys.reserve(df.size());
  for (const auto& [key, c] : df) keys.push_back(key);
  std::sort(keys.begin(), keys.end());  // (kind, gram) order

  double n = double(texts.size());
  vec.vocab_.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::string& key = keys[i];
    double idf = std::log((n + 1.0) / (double(df[key]) + 1.0)) + 1.0;
    vec.vocab_.push_back({key[0], key.substr(1), idf});
    vec.lookup_.emplace(key, std::uint32_t(i));
  }
  return vec;
}

LabelSpace label_embeddings(const TrainingSet& train, const Vectorizer& vec) {
  std::map<std::uint32_t, std::vector<const std::string*>> by_label;
  for (const auto& inst : train.instances)
    by_label[inst.label].push_back(&inst.text);

  LabelSpace space;
  space.labels.reserve(by_label.size());
  space.embeddings.reserve(by_label.size());
  SparseAccumulator acc(vec.dim());
  for (const auto& [label, texts] : by_label) {
    for (const std::string* t : texts) acc.add(vec.transform(*t));
    SparseVec z = acc.take();
    l2_normalize(z);
    space.labels.push_back(label);
    space.embeddings.push_back(std::move(z));
  }
  return space;
}

namespace {

// Size-balanced spherical 2-means split: points go to their nearer centroid
// in decreasing order of assignment margin, subject to a ceil(n/2) capacity
// per side.
void split_members(const std::vector<std::uint32_t>& members,
                   const std::vector<SparseVec>& emb, std::size_t dim,
                   std::uint64_t seed, std::uint32_t node_id,
                   std::vector<std::uint32_t>* left,
                   std::vector<std::uint32_t>* right) {
  const std::size_t n = members.size();
  std::mt19937_64 rng(seed ^ (kNodeSeedMix * (std::uint64_t(node_id) + 1)));

  SparseVec c0 = emb[members[rng() % n]];
  std::size_t far = 0;
  double far_dot = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double d = dot(c0, emb[members[j]]);
    if (d < far_dot) {
      far_dot = d;
      far = j;
    }
  }
  SparseVec c1 = emb[members[far]];

  std::vector<char> side(n, 0), prev;
  std::vector<double> margin(n);
  std::vector<std::uint32_t> order(n);
  SparseAccumulator acc(dim);
  const std::size_t capacity = (n + 1) / 2;

  for (std::size_t iter = 0; iter < kSplitIters; ++iter) {
    for (std::size_t j = 0; j < n; ++j)
      margin[j] = dot(emb[members[j]], c0) - dot(emb[members[j]], c1);
    for (std::size_t j = 0; j < n; ++j) order[j] = std::uint32_t(j);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                double ma = std::fabs(margin[a]), mb = std::fabs(margin[b]);
                if (ma != mb) return ma > mb;
                return a < b;
              });
    std::size_t counts[2] = {0, 0};
    for (std::uint32_t j : order) {
      int pref = margin[j] < 0 ? 1 : 0;
      if (counts[pref] >= capacity) pref = 1 - pref;
      side[j] = char(pref);
      ++counts[pref];
    }
    if (side == prev) break;
    prev = side;

    for (int s = 0; s < 2; ++s) {
      for (std::size_t j = 0; j < n; ++j)
        if (side[j] == s) acc.add(emb[members[j]]);
      SparseVec c = acc.take();
      l2_normalize(c);
      if (s == 0)
        c0 = std::move(c);
      else
        c1 = std::move(c);
    }
  }

  for (std::size_t j = 0; j < n; ++j)
    (side[j] == 0 ? left : right)->push_back(members[j]);
}

}  // namespace

ClusterTree build_cluster_tree(const std::vector<SparseVec>& embeddings,
                               std::size_t max_leaf_size, std::uint64_t seed) {
  if (embeddings.empty())
    throw std::invalid_argument("cannot cluster an empty label set");
  if (max_leaf_size == 0) max_leaf_size = 1;

  std::size_t dim = 0;
  for (const auto& e : embeddings)
    if (!e.idx.empty()) dim = std::max(dim, std::size_t(e.idx.back()) + 1);

  ClusterTree tree;
  tree.max_leaf_size = max_leaf_size;
  tree.seed = seed;

  auto centroid_of = [&](const std::vector<std::uint32_t>& members) {
    SparseAccumulator acc(dim);
    for (std::uint32_t m : members) acc.add(embeddings[m]);
    SparseVec c = acc.take();
    l2_normalize(c);
    return c;
  };

  ClusterNode root;
  root.members.resize(embeddings.size());
  for (std::size_t i = 0; i < embeddings.size(); ++i)
    root.members[i] = std::uint32_t(i);
  root.centroid = centroid_of(root.members);
  tree.nodes.push_back(std::move(root));

  std::vector<std::size_t> level{1};
  std::vector<std::uint32_t> queue{0};
  std::size_t head = 0;
  while (head < queue.size()) {
    std::uint32_t id = queue[head++];
    if (tree.nodes[id].members.size() <= max_leaf_size) continue;

    std::vector<std::uint32_t> left, right;
    split_members(tree.nodes[id].members, embeddings, dim, seed, id, &left,
                  &right);
    for (auto* part : {&left, &right}) {
      ClusterNode child;
      child.parent = std::int32_t(id);
      child.members = std::move(*part);
      child.centroid = centroid_of(child.members);
      std::uint32_t child_id = std::uint32_t(tree.nodes.size());
      tree.nodes[id].children.push_back(child_id);
      level.push_back(level[id] + 1);
      tree.nodes.push_back(std::move(child));
      queue.push_back(child_id);
    }
  }

  tree.depth = *std::max_element(level.begin(), level.end());
  tree.leaf_of_label.assign(embeddings.size(), 0);
  for (std::uint32_t id = 0; id < tree.nodes.size(); ++id) {
    if (!tree.nodes[id].children.empty()) continue;
    tree.leaves.push_back(id);
    for (std::uint32_t m : tree.nodes[id].members) tree.leaf_of_label[m] = id;
  }
  return tree;
}

XmrModel train(const TrainingSet& train_set, const Vectorizer& vec,
               const ClusterTree& tree) {
  XmrModel model;
  model.vectorizer = vec;
  model.tree = tree;

  std::set<std::uint32_t> distinct;
  for (const auto& inst : train_set.instances) distinct.insert(inst.label);
  model.labels.assign(distinct.begin(), distinct.end());
  if (model.labels.size() != tree.leaf_of_label.size())
    throw std::invalid_argument(
        "cluster tree was built over a different label space (" +
        std::to_string(tree.leaf_of_label.size()) + " labels, training set " +
        "has " + std::to_string(model.labels.size()) + ")");
  std::unordered_map<std::uint32_t, std::uint32_t> pos_of;
  for (std::uint32_t p = 0; p < model.labels.size(); ++p)
    pos_of[model.labels[p]] = p;
  model.label_priors.assign(model.labels.size(), 0);

  const std::uint32_t v_dim = std::uint32_t(vec.dim());
  std::vector<SparseVec> x;
  std::vector<std::uint32_t> inst_pos;
  x.reserve(train_set.instances.size());
  inst_pos.reserve(train_set.instances.size());
  for (const auto& inst : train_set.instances) {
    SparseVec xi = vec.transform(inst.text);
    xi.idx.push_back(v_dim);  // bias column
    xi.val.push_back(1.0);
    x.push_back(std::move(xi));
    std::uint32_t p = pos_of.at(inst.label);
    inst_pos.push_back(p);
    model.label_priors[p] += 1;
    model.exact_map[inst.text].push_back(inst.label);
  }
  for (auto& [text, ids] : model.exact_map) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }

  // Instances under each node, plus which child slot they fall into.
  std::vector<std::vector<std::uint32_t>> node_insts(tree.nodes.size());
  std::vector<std::vector<std::uint32_t>> node_slot(tree.nodes.size());
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    std::uint32_t cur = tree.leaf_of_label[inst_pos[i]];
    node_insts[cur].push_back(i);
    while (tree.nodes[cur].parent >= 0) {
      std::uint32_t parent = std::uint32_t(tree.nodes[cur].parent);
      const auto& kids = tree.nodes[parent].children;
      std::uint32_t slot = std::uint32_t(
          std::find(kids.begin(), kids.end(), cur) - kids.begin());
      node_insts[parent].push_back(i);
      node_slot[parent].push_back(slot);
      cur = parent;
    }
  }

  model.node_weights.resize(tree.nodes.size());
  for (std::uint32_t id = 0; id < tree.nodes.size(); ++id) {
    const ClusterNode& node = tree.nodes[id];
    const auto& insts = node_insts[id];

    // Features absent from this node's instances keep weight exactly zero
    // under a zero start, so the solve runs in the touched subspace.
    std::vector<std::uint32_t> feats;
    for (std::uint32_t i : insts)
      feats.insert(feats.end(), x[i].idx.begin(), x[i].idx.end());
    std::sort(feats.begin(), feats.end());
    feats.erase(std::unique(feats.begin(), feats.end()), feats.end());

    std::vector<SparseVec> compact(insts.size());
    for (std::size_t k = 0; k < insts.size(); ++k) {
      const SparseVec& xi = x[insts[k]];
      compact[k].idx.reserve(xi.idx.size());
      compact[k].val = xi.val;
      for (std::uint32_t gi : xi.idx) {
        std::uint32_t local = std::uint32_t(
            std::lower_bound(feats.begin(), feats.end(), gi) - feats.begin());
        compact[k].idx.push_back(local);
      }
    }

    bool internal = !node.children.empty();
    std::size_t rows = internal ? node.children.size() : node.members.size();
    CsrMatrix& weights = model.node_weights[id];
    weights.cols = v_dim + 1;

    std::vector<signed char> y(insts.size());
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < insts.size(); ++k) {
        bool positive = internal ? node_slot[id][k] == r
                                 : inst_pos[insts[k]] == node.members[r];
        y[k] = positive ? 1 : -1;
      }
      LogRegResult fit = fit_logistic(compact, y, feats.size(), kLambda,
                                      kSolverTol, kSolverIters);
      if (!fit.converged)
        std::cerr << "warning: solver stopped at gradient norm "
                  << fit.grad_norm << " on node " << id << " row " << r
                  << '\n';
      SparseVec w;
      for (std::size_t j = 0; j < feats.size(); ++j) {
        if (fit.weights[j] == 0.0) continue;
        w.idx.push_back(feats[j]);
        w.val.push_back(fit.weights[j]);
      }
      weights.append_row(w);
    }
  }
  return model;
}

std::vector<ScoredCandidate> predict(const std::string& mention_text,
                                     const XmrModel& model, std::size_t beam,
                                     std::size_t top_k) {
  if (beam == 0 || top_k == 0) return {};
  std::vector<ScoredCandidate> out;
  std::string lowered = to_lower(mention_text);

  bool have_exact = false;
  std::uint32_t exact_concept = 0;
  auto hit = model.exact_map.find(lowered);
  if (hit != model.exact_map.end() && hit->second.size() == 1) {
    have_exact = true;
    exact_concept = hit->second[0];
    out.push_back(
        {exact_concept, 1.0, CandidateSource::kExactLookup, lowered});
  }

  SparseVec x = model.vectorizer.transform(mention_text);
  if (x.empty()) return out;
  x.idx.push_back(std::uint32_t(model.vectorizer.dim()));
  x.val.push_back(1.0);

  struct BeamEntry {
    std::uint32_t node;
    double score;
  };
  std::vector<BeamEntry> frontier{{0, 1.0}};
  while (true) {
    bool any_internal = false;
    for (const auto& b : frontier)
      if (!model.tree.nodes[b.node].children.empty()) any_internal = true;
    if (!any_internal) break;

    std::vector<BeamEntry> next;
    for (const auto& b : frontier) {
      const ClusterNode& node = model.tree.nodes[b.node];
      if (node.children.empty()) {
        next.push_back(b);
        continue;
      }
      for (std::size_t j = 0; j < node.children.size(); ++j) {
        double edge = sigmoid(csr_row_dot(model.node_weights[b.node], j, x));
        next.push_back({node.children[j], b.score * edge});
      }
    }
    std::sort(next.begin(), next.end(),
              [](const BeamEntry& a, const BeamEntry& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.node < b.node;
              });
    if (next.size() > beam) next.resize(beam);
    frontier = std::move(next);
  }

  std::vector<ScoredCandidate> cands;
  for (const auto& b : frontier) {
    const ClusterNode& leaf = model.tree.nodes[b.node];
    for (std::size_t j = 0; j < leaf.members.size(); ++j) {
      double margin = sigmoid(csr_row_dot(model.node_weights[b.node], j, x));
      cands.push_back({model.labels[leaf.members[j]], b.score * margin,
                       CandidateSource::kXmr, lowered});
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const ScoredCandidate& a, const ScoredCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.concept_index < b.concept_index;
            });
  for (const auto& c : cands) {
    if (out.size() >= top_k) break;
    if (have_exact && c.concept_index == exact_concept) continue;
    out.push_back(c);
  }
  return out;
}

}  // namespace xlinker
