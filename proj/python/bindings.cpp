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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "xlinker/abbrev.hpp"
#include "xlinker/corpus.hpp"
#include "xlinker/errors.hpp"
#include "xlinker/eval.hpp"
#include "xlinker/kos.hpp"
#include "xlinker/pipeline.hpp"
#include "xlinker/ppr.hpp"
#include "xlinker/strmatch.hpp"
#include "xlinker/xmr.hpp"

namespace py = pybind11;
using namespace xlinker;

namespace {

XmrModel train_from_file(const std::string& train_path,
                         std::size_t max_leaf_size, std::uint64_t seed) {
  TrainingSet ts = read_training_file(train_path);
  std::vector<std::string> texts;
  texts.reserve(ts.instances.size());
  for (const auto& inst : ts.instances) texts.push_back(inst.text);
  Vectorizer vec = fit_vectorizer(texts);
  LabelSpace space = label_embeddings(ts, vec);
  ClusterTree tree = build_cluster_tree(space.embeddings, max_leaf_size, seed);
  return train(ts, vec, tree);
}

std::vector<std::tuple<std::string, double, std::string>> predict_ids(
    const XmrModel& model, const KnowledgeBase& kb, const std::string& text,
    std::size_t beam, std::size_t top_k) {
  std::vector<std::tuple<std::string, double, std::string>> out;
  for (const ScoredCandidate& c : predict(text, model, beam, top_k))
    out.emplace_back(kb.id_of(c.concept_index), c.score,
                     to_string(c.source));
  return out;
}

std::size_t link_file(const XmrModel& model, const KnowledgeBase& kb,
                      const std::string& input_path,
                      const std::string& output_path,
                      const PipelineConfig& cfg, std::size_t jobs) {
  NameIndex index = build_name_index(kb);
  std::vector<Document> docs = parse_pubtator_file(input_path);
  CorpusLinkResult result = link_corpus(docs, model, kb, index, cfg, jobs);
  std::ofstream out(output_path, std::ios::trunc);
  if (!out)
    throw std::runtime_error("could not open " + output_path + " for write");
  write_predictions(docs, result, out);
  std::size_t linked = 0;
  for (const auto& doc : result.per_document) linked += doc.size();
  return linked;
}

}  // namespace

PYBIND11_MODULE(_xlinker, m) {
  m.doc() = "biomedical entity linking: fuzzy matching, tree-based ranking, "
            "and graph coherence";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<IntegrityError>(m, "IntegrityError");
  py::register_exception<xlinker::LookupError>(m, "KosLookupError");

  py::class_<Concept>(m, "Concept")
      .def_readonly("id", &Concept::id)
      .def_readonly("canonical_name", &Concept::canonical_name)
      .def_readonly("synonyms", &Concept::synonyms)
      .def_readonly("parent_ids", &Concept::parent_ids)
      .def_readonly("alt_ids", &Concept::alt_ids);

  py::class_<KnowledgeBase>(m, "KnowledgeBase")
      .def("__len__", &KnowledgeBase::size)
      .def("index_of", &KnowledgeBase::index_of)
      .def("id_of", &KnowledgeBase::id_of)
      .def("contains", &KnowledgeBase::contains)
      .def("resolve", &KnowledgeBase::resolve)
      .def("concept", &KnowledgeBase::concept_at,
           py::return_value_policy::reference_internal)
      .def("children_count", &KnowledgeBase::children_count)
      .def("information_content",
           py::overload_cast<std::size_t>(
               &KnowledgeBase::information_content, py::const_));

  m.def("load_kos", &load_kos, py::arg("path"),
        "Load and validate a CTD-style TSV vocabulary.");

  m.def("edit_distance", &edit_distance, py::arg("a"), py::arg("b"));
  m.def("similarity", &similarity, py::arg("a"), py::arg("b"),
        "Normalized Levenshtein similarity in [0, 1].");

  m.def(
      "detect_abbreviations",
      [](const std::string& text) {
        std::map<std::string, std::string> out;
        for (const auto& [sf, lf] : detect_abbreviations(text).pairs)
          out[sf] = lf;
        return out;
      },
      py::arg("text"),
      "Short form to long form pairs found in parenthetical definitions.");
  m.def(
      "expand",
      [](const std::string& mention, const std::string& text) {
        return expand_mention(mention, detect_abbreviations(text));
      },
      py::arg("mention"), py::arg("text"),
      "Expand a mention using abbreviations defined in the text.");

  py::class_<NameIndex>(m, "NameIndex")
      .def("__len__", &NameIndex::size)
      .def("exact", &NameIndex::exact, py::arg("lowercased"))
      .def(
          "match",
          [](const NameIndex& idx, const KnowledgeBase& kb,
             const std::string& text, std::size_t top_n) {
            std::vector<std::tuple<std::string, double, std::string>> out;
            for (const ScoredCandidate& c : idx.match(text, top_n))
              out.emplace_back(kb.id_of(c.concept_index), c.score,
                               c.matched_surface);
            return out;
          },
          py::arg("kb"), py::arg("text"), py::arg("top_n"),
          "Top-n (concept id, similarity, matched surface) triples.");

  m.def("build_name_index", &build_name_index, py::arg("kb"));

  py::class_<XmrModel>(m, "Model")
      .def_property_readonly(
          "num_labels",
          [](const XmrModel& m_) { return m_.labels.size(); })
      .def_property_readonly(
          "num_features",
          [](const XmrModel& m_) { return m_.vectorizer.dim(); });

  m.def("train", &train_from_file, py::arg("train_path"),
        py::arg("max_leaf_size") = 100, py::arg("seed") = 42,
        "Train a ranking model from a `label<TAB>text` file.");
  m.def("save_model", &save_model, py::arg("model"), py::arg("dir"));
  m.def("load_model", &load_model, py::arg("dir"));
  m.def("predict", &predict_ids, py::arg("model"), py::arg("kb"),
        py::arg("text"), py::arg("beam") = 10, py::arg("top_k") = 5,
        "Ranked (concept id, score, source) triples for a mention string.");

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("threshold", &PipelineConfig::threshold)
      .def_readwrite("beam", &PipelineConfig::beam)
      .def_readwrite("top_k", &PipelineConfig::top_k)
      .def_readwrite("string_top_n", &PipelineConfig::string_top_n)
      .def_readwrite("entity_type", &PipelineConfig::entity_type);

  m.def("link_file", &link_file, py::arg("model"), py::arg("kb"),
        py::arg("input_path"), py::arg("output_path"),
        py::arg("config") = PipelineConfig{}, py::arg("jobs") = 1,
        "Link a PubTator file and write predictions; returns mention count.");
}
