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

// Model directory persistence. All text files are byte-stable across runs;
// doubles are printed with 17 significant digits so reloads are exact.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "xlinker/errors.hpp"
#include "xlinker/xmr.hpp"

namespace xlinker {

namespace {

constexpr int kModelFormatVersion = 1;

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::trunc);
  if (!out)
    throw std::runtime_error("could not open " + p.string() + " for write");
  return out;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("could not open " + p.string());
  return in;
}

}  // namespace

Vectorizer load_vocab_file(const std::string& path) {
  std::ifstream in = open_in(path);
  Vectorizer vec;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t first = line.find('\t');
    std::size_t last = line.rfind('\t');
    if (first == std::string::npos || last == first)
      throw ParseError("vocab line " + std::to_string(line_no) +
                       ": expected kind<TAB>gram<TAB>idf");
    std::string kind = line.substr(0, first);
    std::string gram = line.substr(first + 1, last - first - 1);
    double idf = std::stod(line.substr(last + 1));
    if (kind.size() != 1)
      throw ParseError("vocab line " + std::to_string(line_no) +
                       ": bad kind '" + kind + "'");
    vec.lookup_.emplace(kind + gram, std::uint32_t(vec.vocab_.size()));
    vec.vocab_.push_back({kind[0], gram, idf});
  }
  return vec;
}

void save_model(const XmrModel& model, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);

  nlohmann::json manifest{
      {"format", "xlinker-xmr"},
      {"format_version", kModelFormatVersion},
      {"seed", model.tree.seed},
      {"branching", model.tree.branching},
      {"max_leaf_size", model.tree.max_leaf_size},
      {"depth", model.tree.depth},
      {"labels", model.labels.size()},
      {"features", model.vectorizer.dim()},
      {"nodes", model.tree.nodes.size()},
      {"lambda", 1.0},
  };
  open_out(base / "manifest.json") << manifest.dump(2) << '\n';

  {
    auto out = open_out(base / "labels.tsv");
    for (std::size_t p = 0; p < model.labels.size(); ++p)
      out << model.labels[p] << '\t' << model.label_priors[p] << '\n';
  }
  {
    auto out = open_out(base / "vocab.tsv");
    for (const auto& term : model.vectorizer.vocabulary())
      out << term.kind << '\t' << term.gram << '\t' << format_double(term.idf)
          << '\n';
  }
  {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : model.tree.nodes) {
      nodes.push_back({{"parent", node.parent},
                       {"children", node.children},
                       {"members", node.members}});
    }
    open_out(base / "tree.json")
        << nlohmann::json{{"nodes", nodes}}.dump() << '\n';
  }
  {
    CsrMatrix centroids;
    centroids.cols = model.vectorizer.dim();
    for (const auto& node : model.tree.nodes)
      centroids.append_row(node.centroid);
    write_csr(centroids, (base / "centroids.bin").string());
  }
  {
    CsrMatrix all;
    all.cols = model.vectorizer.dim() + 1;
    for (const auto& weights : model.node_weights)
      for (std::size_t r = 0; r < weights.rows; ++r)
        all.append_row(weights.row(r));
    write_csr(all, (base / "weights.bin").string());
  }
  {
    auto out = open_out(base / "exact_map.tsv");
    for (const auto& [text, ids] : model.exact_map) {
      out << text << '\t';
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ',';
        out << ids[i];
      }
      out << '\n';
    }
  }
}

namespace {

// Body of load_model; json exceptions are translated by the wrapper.
XmrModel load_model_impl(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path base(dir);

  nlohmann::json manifest;
  open_in(base / "manifest.json") >> manifest;
  if (manifest.value("format", "") != "xlinker-xmr")
    throw ParseError(dir + ": not a model directory (bad manifest format)");
  if (manifest.value("format_version", -1) != kModelFormatVersion)
    throw ParseError(dir + ": unsupported model format version");

  XmrModel model;
  model.vectorizer = load_vocab_file((base / "vocab.tsv").string());
  if (model.vectorizer.dim() != manifest.at("features").get<std::size_t>())
    throw IntegrityError(dir + ": vocab size disagrees with manifest");

  {
    auto in = open_in(base / "labels.tsv");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::size_t tab = line.find('\t');
      if (tab == std::string::npos)
        throw ParseError(dir + ": malformed labels.tsv line");
      model.labels.push_back(std::uint32_t(std::stoul(line.substr(0, tab))));
      model.label_priors.push_back(std::stoull(line.substr(tab + 1)));
    }
  }

  nlohmann::json tree_json;
  open_in(base / "tree.json") >> tree_json;
  ClusterTree& tree = model.tree;
  tree.seed = manifest.at("seed").get<std::uint64_t>();
  tree.branching = manifest.at("branching").get<std::uint32_t>();
  tree.max_leaf_size = manifest.at("max_leaf_size").get<std::size_t>();
  tree.depth = manifest.at("depth").get<std::size_t>();
  for (const auto& jn : tree_json.at("nodes")) {
    ClusterNode node;
    node.parent = jn.at("parent").get<std::int32_t>();
    node.children = jn.at("children").get<std::vector<std::uint32_t>>();
    node.members = jn.at("members").get<std::vector<std::uint32_t>>();
    tree.nodes.push_back(std::move(node));
  }
  tree.leaf_of_label.assign(model.labels.size(), 0);
  for (std::uint32_t id = 0; id < tree.nodes.size(); ++id) {
    if (!tree.nodes[id].children.empty()) continue;
    tree.leaves.push_back(id);
    for (std::uint32_t m : tree.nodes[id].members) {
      if (m >= tree.leaf_of_label.size())
        throw IntegrityError(dir + ": tree member out of label range");
      tree.leaf_of_label[m] = id;
    }
  }

  CsrMatrix centroids = read_csr((base / "centroids.bin").string());
  if (centroids.rows != tree.nodes.size())
    throw IntegrityError(dir + ": centroid count disagrees with tree");
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    tree.nodes[i].centroid = centroids.row(i);

  CsrMatrix all = read_csr((base / "weights.bin").string());
  std::size_t next_row = 0;
  model.node_weights.resize(tree.nodes.size());
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const ClusterNode& node = tree.nodes[i];
    std::size_t rows =
        node.children.empty() ? node.members.size() : node.children.size();
    CsrMatrix& m = model.node_weights[i];
    m.cols = all.cols;
    for (std::size_t r = 0; r < rows; ++r) {
      if (next_row >= all.rows)
        throw IntegrityError(dir + ": weights.bin has too few rows");
      m.append_row(all.row(next_row++));
    }
  }
  if (next_row != all.rows)
    throw IntegrityError(dir + ": weights.bin has extra rows");

  {
    auto in = open_in(base / "exact_map.tsv");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::size_t tab = line.rfind('\t');
      if (tab == std::string::npos)
        throw ParseError(dir + ": exact_map.tsv line " +
                         std::to_string(line_no) + " lacks a tab");
      std::string text = line.substr(0, tab);
      std::vector<std::uint32_t> ids;
      std::size_t pos = tab + 1;
      while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        if (comma > pos)
          ids.push_back(
              std::uint32_t(std::stoul(line.substr(pos, comma - pos))));
        pos = comma + 1;
      }
      model.exact_map.emplace(std::move(text), std::move(ids));
    }
  }
  return model;
}

}  // namespace

XmrModel load_model(const std::string& dir) {
  try {
    return load_model_impl(dir);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(dir + ": " + e.what());
  }
}

}  // namespace xlinker
