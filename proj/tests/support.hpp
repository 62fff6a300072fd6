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

// Shared test fixtures: scratch directories, vocabulary builders, and the
// two-mention disambiguation scenario used by several suites.

#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "xlinker/corpus.hpp"
#include "xlinker/kos.hpp"
#include "xlinker/xmr.hpp"

namespace xlinker::testing {

// Self-cleaning scratch directory, unique per instance within the process.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("xlinker_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

// One CTD-style TSV row; empty fields stay empty.
struct KosRow {
  std::string name;
  std::string id;
  std::string alt_ids;
  std::string definition;
  std::string parent_ids;
  std::string tree_numbers;
  std::string parent_tree_numbers;
  std::string synonyms;
};

inline std::string kos_tsv_text(const std::vector<KosRow>& rows) {
  std::ostringstream out;
  out << "# DiseaseName\tDiseaseID\tAltDiseaseIDs\tDefinition\tParentIDs\t"
         "TreeNumbers\tParentTreeNumbers\tSynonyms\n";
  for (const KosRow& r : rows)
    out << r.name << '\t' << r.id << '\t' << r.alt_ids << '\t' << r.definition
        << '\t' << r.parent_ids << '\t' << r.tree_numbers << '\t'
        << r.parent_tree_numbers << '\t' << r.synonyms << '\n';
  return out.str();
}

inline std::string write_text(const std::string& path,
                              const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  out << text;
  return path;
}

inline std::string write_kos_tsv(const TempDir& dir,
                                 const std::vector<KosRow>& rows,
                                 const std::string& name = "kos.tsv") {
  return write_text(dir.file(name), kos_tsv_text(rows));
}

inline KnowledgeBase load_fixture_kb(const TempDir& dir,
                                     const std::vector<KosRow>& rows) {
  return load_kos(write_kos_tsv(dir, rows));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Vocabulary fragment around vasculitis: a dense concept family sharing
// most character n-grams plus unrelated inflammation fillers. Trained with
// max_leaf_size 1 and seed 42, the matcher scores the out-of-vocabulary
// query "vasculitic" below the 0.1 routing threshold while every exact
// training string still short-circuits to 1.0.
inline std::vector<KosRow> vasculitis_fragment_rows() {
  std::vector<KosRow> rows = {
      {"Vasculitis", "MESH:D014657", "", "Inflammation of blood vessels.",
       "MESH:D002318", "C14.907.940", "C14.907", "Angiitis|Vasculitides"},
      {"Cardiovascular Diseases", "MESH:D002318", "", "", "MESH:ROOT", "C14",
       "C14", ""},
      {"Systemic Vasculitis", "MESH:D056647", "", "", "MESH:D014657",
       "C14.907.940.897", "C14.907.940", "Vasculitis, Systemic"},
      {"Vasculitis, Central Nervous System", "MESH:D020293", "", "",
       "MESH:D014657", "C14.907.940.907", "C14.907.940",
       "Central Nervous System Vasculitis|CNS Vasculitis"},
      {"Retinal Vasculitis", "MESH:D031300", "", "", "MESH:D014657",
       "C14.907.940.777", "C14.907.940", ""},
      {"Lupus Vasculitis, Central Nervous System", "MESH:D020945", "", "",
       "MESH:D020293", "C14.907.940.907.500", "C14.907.940.907",
       "Lupus Cerebritis"},
      {"Vasculitis, Leukocytoclastic, Cutaneous", "MESH:D018366", "", "",
       "MESH:D014657", "C14.907.940.910", "C14.907.940",
       "Hypersensitivity Angiitis"},
      {"Behcet Syndrome", "MESH:D001528", "OMIM:109650", "", "MESH:D014657",
       "C14.907.940.100", "C14.907.940", "Behcet Disease|Behcet's Syndrome"},
      {"Neuritis", "MESH:D009443", "", "", "MESH:ROOT", "C10.668.829.350",
       "C10", "Neuritides"},
      {"Arthritis", "MESH:D001168", "", "", "MESH:ROOT", "C05.550.114", "C05",
       "Polyarthritis"},
      {"Dermatitis", "MESH:D003872", "", "", "MESH:ROOT", "C17.800.174",
       "C17", ""},
      {"Nephritis", "MESH:D009393", "", "", "MESH:ROOT", "C12.777.419.570",
       "C12", ""},
      {"Myocarditis", "MESH:D009205", "", "", "MESH:D002318",
       "C14.280.238.625", "C14.280", ""},
      {"Root", "MESH:ROOT", "", "", "", "", "", ""},
  };
  auto add = [&](const char* name, const char* id, const char* parent,
                 const char* syns) {
    rows.push_back({name, id, "", "", parent, "", "", syns});
  };
  add("Anti-Neutrophil Cytoplasmic Antibody-Associated Vasculitis",
      "MESH:D056648", "MESH:D014657", "ANCA-Associated Vasculitis");
  add("Giant Cell Arteritis", "MESH:D013700", "MESH:D014657",
      "Temporal Arteritis");
  add("Polyarteritis Nodosa", "MESH:D010488", "MESH:D014657",
      "Periarteritis Nodosa");
  add("Microscopic Polyangiitis", "MESH:D055953", "MESH:D056648", "");
  add("Granulomatosis with Polyangiitis", "MESH:D014890", "MESH:D056648",
      "Wegener Granulomatosis");
  add("Churg-Strauss Syndrome", "MESH:D015267", "MESH:D056648",
      "Allergic Granulomatous Angiitis|Eosinophilic Granulomatosis with "
      "Polyangiitis");
  add("IgA Vasculitis", "MESH:D011695", "MESH:D014657",
      "Purpura, Schoenlein-Henoch|Henoch-Schoenlein Purpura");
  add("Takayasu Arteritis", "MESH:D013625", "MESH:D014657",
      "Aortic Arch Syndromes|Pulseless Disease");
  add("Thromboangiitis Obliterans", "MESH:D013919", "MESH:D014657",
      "Buerger Disease");
  add("Mucocutaneous Lymph Node Syndrome", "MESH:D009080", "MESH:D014657",
      "Kawasaki Disease|Kawasaki Syndrome");
  add("Hepatitis", "MESH:D006505", "MESH:ROOT", "Liver Inflammation");
  add("Gastritis", "MESH:D005756", "MESH:ROOT", "");
  add("Colitis", "MESH:D003092", "MESH:ROOT", "Colitides");
  add("Pancreatitis", "MESH:D010195", "MESH:ROOT", "");
  add("Bronchitis", "MESH:D001991", "MESH:ROOT", "");
  add("Sinusitis", "MESH:D012852", "MESH:ROOT", "");
  add("Meningitis", "MESH:D008581", "MESH:ROOT", "Pachymeningitis");
  add("Encephalitis", "MESH:D004660", "MESH:ROOT", "Brain Inflammation");
  add("Cystitis", "MESH:D003556", "MESH:ROOT", "");
  add("Thyroiditis", "MESH:D013966", "MESH:ROOT", "");
  add("Uveitis", "MESH:D014605", "MESH:ROOT", "");
  add("Osteomyelitis", "MESH:D010019", "MESH:ROOT", "");
  add("Appendicitis", "MESH:D001064", "MESH:ROOT", "");
  add("Conjunctivitis", "MESH:D003231", "MESH:ROOT", "Pink Eye");
  add("Pericarditis", "MESH:D010493", "MESH:D002318", "");
  add("Endocarditis", "MESH:D004696", "MESH:D002318", "");
  add("Pharyngitis", "MESH:D010612", "MESH:ROOT", "Sore Throat");
  add("Tonsillitis", "MESH:D014069", "MESH:ROOT", "");
  add("Laryngitis", "MESH:D007827", "MESH:ROOT", "");
  add("Otitis Media", "MESH:D010033", "MESH:ROOT", "");
  add("Spondylitis", "MESH:D013166", "MESH:ROOT", "");
  add("Cellulitis", "MESH:D002481", "MESH:ROOT", "");
  add("Folliculitis", "MESH:D005499", "MESH:ROOT", "");
  add("Stomatitis", "MESH:D013280", "MESH:ROOT", "");
  add("Esophagitis", "MESH:D004941", "MESH:ROOT", "");
  add("Mastoiditis", "MESH:D008417", "MESH:ROOT", "");
  return rows;
}

// Model trained on the fragment's own names and synonyms with the settings
// the two-mention scenario was frozen against.
inline XmrModel train_fragment_model(const KnowledgeBase& kb) {
  TrainingSet ts = kos_training_instances(kb);
  std::vector<std::string> texts;
  texts.reserve(ts.instances.size());
  for (const auto& inst : ts.instances) texts.push_back(inst.text);
  Vectorizer vec = fit_vectorizer(texts);
  LabelSpace space = label_embeddings(ts, vec);
  ClusterTree tree = build_cluster_tree(space.embeddings, 1, 42);
  return train(ts, vec, tree);
}

// PubTator document behind the two-mention scenario: a misspelled family
// member and an exact vocabulary name in one abstract.
inline std::string two_mention_pubtator() {
  return "900|t|Case report of vasculitic neuropathy.\n"
         "900|a|Biopsy confirmed vasculitis of small vessels.\n"
         "900\t15\t25\tvasculitic\tDisease\tD014657\n"
         "900\t55\t65\tvasculitis\tDisease\tD014657\n\n";
}

}  // namespace xlinker::testing
