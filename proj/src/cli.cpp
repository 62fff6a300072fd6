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

#include "xlinker/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"
#include "xlinker/corpus.hpp"
#include "xlinker/errors.hpp"
#include "xlinker/eval.hpp"
#include "xlinker/kos.hpp"
#include "xlinker/pipeline.hpp"
#include "xlinker/strmatch.hpp"
#include "xlinker/xmr.hpp"

namespace xlinker {

namespace {

namespace fs = std::filesystem;

// Accepts either a build-kb output directory or a bare TSV file.
KnowledgeBase load_kb_path(const std::string& path) {
  if (fs::is_directory(path)) return load_kos((fs::path(path) / "kos.tsv").string());
  return load_kos(path);
}

std::unordered_set<std::string> read_doc_id_file(const std::string& path) {
  std::unordered_set<std::string> ids;
  std::ifstream in(path);
  if (!in) throw ParseError("could not open document id file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.insert(line);
  }
  return ids;
}

void merge_canonical(TrainingSet* into, const TrainingSet& other) {
  into->instances.insert(into->instances.end(), other.instances.begin(),
                         other.instances.end());
  std::sort(into->instances.begin(), into->instances.end(),
            [](const TrainingInstance& a, const TrainingInstance& b) {
              if (a.label != b.label) return a.label < b.label;
              return a.text < b.text;
            });
  into->instances.erase(
      std::unique(into->instances.begin(), into->instances.end(),
                  [](const TrainingInstance& a, const TrainingInstance& b) {
                    return a.label == b.label && a.text == b.text;
                  }),
      into->instances.end());
}

void check_labels_in_kb(const TrainingSet& ts, const KnowledgeBase& kb) {
  for (const auto& inst : ts.instances) {
    if (inst.label >= kb.size())
      throw IntegrityError("training label " + std::to_string(inst.label) +
                           " is outside the knowledge base (size " +
                           std::to_string(kb.size()) + ")");
  }
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("XLINKER_SEED")) {
    std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw std::runtime_error("XLINKER_SEED must be a nonnegative integer");
    return std::stoull(s);
  }
  return flag_seed;
}

int cmd_build_kb(const std::string& kos_path, const std::string& out_dir) {
  KnowledgeBase kb = load_kos(kos_path);
  fs::create_directories(out_dir);
  write_ctd_tsv(kb, (fs::path(out_dir) / "kos.tsv").string());
  nlohmann::json manifest{{"format", "xlinker-kb"},
                          {"format_version", 1},
                          {"concepts", kb.size()}};
  std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::trunc);
  mf << manifest.dump(2) << '\n';
  if (!mf) throw std::runtime_error("could not write manifest in " + out_dir);
  std::cout << "validated " << kb.size() << " concepts -> " << out_dir
            << '\n';
  return 0;
}

struct GenTrainArgs {
  std::string annotations, kb, exclude_docs, out;
  std::optional<std::size_t> cap;
  bool kos_only = false;
};

int cmd_gen_train(const GenTrainArgs& a) {
  KnowledgeBase kb = load_kb_path(a.kb);
  TrainingSet ts = kos_training_instances(kb);
  if (!a.kos_only) {
    if (a.annotations.empty())
      throw std::runtime_error("--annotations is required unless --kos-only");
    std::unordered_set<std::string> excluded;
    if (!a.exclude_docs.empty()) excluded = read_doc_id_file(a.exclude_docs);
    std::vector<Document> docs = parse_pubtator_file(a.annotations);
    TrainingSet corpus_ts = generate_training_set(
        annotations_from_documents(docs), kb, excluded, a.cap);
    ts.provenance = Provenance::kKosPlusPubtator;
    merge_canonical(&ts, corpus_ts);
  }
  write_training_file(ts, a.out);
  std::cout << "wrote " << ts.instances.size() << " training instances -> "
            << a.out << '\n';
  return 0;
}

struct TrainArgs {
  std::string train, kb, out;
  std::uint64_t seed = 42;
  std::size_t max_leaf = 100;
};

int cmd_train(const TrainArgs& a) {
  KnowledgeBase kb = load_kb_path(a.kb);
  TrainingSet ts = read_training_file(a.train);
  if (ts.instances.empty())
    throw std::runtime_error("training file is empty: " + a.train);
  check_labels_in_kb(ts, kb);

  std::uint64_t seed = effective_seed(a.seed);
  std::vector<std::string> texts;
  texts.reserve(ts.instances.size());
  for (const auto& inst : ts.instances) texts.push_back(inst.text);
  Vectorizer vec = fit_vectorizer(texts);
  LabelSpace space = label_embeddings(ts, vec);
  ClusterTree tree = build_cluster_tree(space.embeddings, a.max_leaf, seed);
  XmrModel model = train(ts, vec, tree);
  save_model(model, a.out);
  std::cout << "trained " << model.labels.size() << " labels, "
            << vec.dim() << " features, " << tree.nodes.size()
            << " tree nodes (depth " << tree.depth << ", seed " << seed
            << ") -> " << a.out << '\n';
  return 0;
}

struct LinkArgs {
  std::string model, kb, input, out, report, type;
  PipelineConfig cfg;
  std::size_t jobs = 1;
};

int cmd_link(const LinkArgs& a) {
  KnowledgeBase kb = load_kb_path(a.kb);
  XmrModel model = load_model(a.model);
  for (std::uint32_t label : model.labels) {
    if (label >= kb.size())
      throw IntegrityError(
          "model was trained against a larger knowledge base (label " +
          std::to_string(label) + ", kb size " + std::to_string(kb.size()) +
          ")");
  }
  NameIndex index = build_name_index(kb);
  std::vector<Document> docs = parse_pubtator_file(a.input);

  PipelineConfig cfg = a.cfg;
  cfg.entity_type = a.type;
  CorpusLinkResult result = link_corpus(docs, model, kb, index, cfg, a.jobs);
  for (const auto& err : result.errors)
    std::cerr << "warning: " << err << '\n';

  std::ofstream out(a.out, std::ios::trunc);
  if (!out) throw std::runtime_error("could not open " + a.out + " for write");
  write_predictions(docs, result, out);
  if (!out) throw std::runtime_error("write failed: " + a.out);

  if (!a.report.empty()) {
    std::ofstream rep(a.report, std::ios::trunc);
    if (!rep)
      throw std::runtime_error("could not open " + a.report + " for write");
    write_link_report(result, rep);
  }

  std::size_t linked = 0;
  for (const auto& doc : result.per_document) linked += doc.size();
  std::cout << "linked " << linked << " mentions across " << docs.size()
            << " documents -> " << a.out << '\n';
  return 0;
}

struct EvalArgs {
  std::string pred, gold, kb, report, name;
  std::string ks = "1,5";
};

int cmd_evaluate(const EvalArgs& a) {
  std::vector<std::size_t> ks;
  std::size_t pos = 0;
  while (pos <= a.ks.size()) {
    std::size_t comma = a.ks.find(',', pos);
    if (comma == std::string::npos) comma = a.ks.size();
    if (comma > pos) {
      std::string part = a.ks.substr(pos, comma - pos);
      if (part.find_first_not_of("0123456789") != std::string::npos ||
          part == "0")
        throw std::runtime_error("--k expects positive integers, got " + part);
      ks.push_back(std::stoull(part));
    }
    pos = comma + 1;
  }
  if (ks.empty()) throw std::runtime_error("--k must list at least one k");

  EvalReport report;
  report.dataset = a.name.empty() ? fs::path(a.gold).filename().string()
                                  : a.name;

  std::vector<Document> gold_docs;
  if (!a.kb.empty()) {
    KnowledgeBase kb = load_kb_path(a.kb);
    EvalDataset ds = load_eval_dataset(a.gold, kb);
    gold_docs = std::move(ds.documents);
    report.nil_removed = ds.nil_removed;
    report.obsolete_removed = ds.obsolete_removed;
  } else {
    gold_docs = parse_pubtator_file(a.gold);
    for (auto& d : gold_docs) {
      std::vector<Mention> kept;
      for (auto& m : d.mentions) {
        if (is_nil(m)) {
          ++report.nil_removed;
          continue;
        }
        kept.push_back(std::move(m));
      }
      d.mentions = std::move(kept);
    }
  }

  auto preds = read_predictions(a.pred);
  std::vector<std::vector<std::string>> pred_rows, gold_rows;
  std::vector<MentionKey> keys;
  for (const auto& d : gold_docs) {
    for (const auto& m : d.mentions) {
      MentionKey key{m.doc_id, m.start, m.end, m.text};
      auto it = preds.find(key);
      pred_rows.push_back(it == preds.end() ? std::vector<std::string>{}
                                            : it->second);
      gold_rows.push_back(m.gold_ids);
      keys.push_back(std::move(key));
    }
  }

  report.evaluated = gold_rows.size();
  for (std::size_t k : ks)
    report.accuracy_at[k] = top_k_accuracy(pred_rows, gold_rows, k);

  if (!a.report.empty()) {
    auto branches = read_report_branches(a.report);
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      auto it = branches.find(keys[i]);
      std::string branch = it == branches.end() ? "unlinked" : it->second;
      bool hit = !pred_rows[i].empty() &&
                 std::find(gold_rows[i].begin(), gold_rows[i].end(),
                           pred_rows[i][0]) != gold_rows[i].end();
      auto& [n, correct] = tally[branch];
      ++n;
      if (hit) ++correct;
    }
    for (const auto& [branch, counts] : tally) {
      BranchStats stats;
      stats.mentions = counts.first;
      stats.top1 = counts.first == 0
                       ? 0.0
                       : double(counts.second) / double(counts.first);
      report.per_branch[branch] = stats;
    }
  }

  write_eval_report(report, std::cout);
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"xlinker: biomedical entity linking over CTD-style "
               "vocabularies"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_config("--config", "", "line-oriented `key = value` file");

  std::string kos_path, out_dir;
  CLI::App* build_kb = app.add_subcommand(
      "build-kb", "validate a KOS TSV and package it as a kb directory");
  build_kb->add_option("--kos", kos_path, "CTD-style TSV vocabulary")
      ->required();
  build_kb->add_option("--out", out_dir, "output kb directory")->required();

  GenTrainArgs gen;
  std::size_t gen_cap = 0;
  CLI::App* gen_train = app.add_subcommand(
      "gen-train", "generate a training set from annotations and the KOS");
  gen_train->add_option("--annotations", gen.annotations,
                        "PubTator file with annotations");
  gen_train->add_option("--kb", gen.kb, "kb directory or TSV")->required();
  gen_train->add_option("--exclude-docs", gen.exclude_docs,
                        "file of document ids to drop");
  gen_train->add_option("--cap", gen_cap,
                        "max instances per label from the corpus (0 = all)");
  gen_train->add_option("--out", gen.out, "output training TSV")->required();
  gen_train->add_flag("--kos-only", gen.kos_only,
                      "emit only KOS names and synonyms");

  TrainArgs tr;
  CLI::App* train_cmd =
      app.add_subcommand("train", "train the ranking model");
  train_cmd->add_option("--train", tr.train, "training TSV")->required();
  train_cmd->add_option("--kb", tr.kb, "kb directory or TSV")->required();
  train_cmd->add_option("--out", tr.out, "output model directory")
      ->required();
  train_cmd->add_option("--seed", tr.seed,
                        "clustering seed (XLINKER_SEED overrides)");
  train_cmd->add_option("--max-leaf", tr.max_leaf,
                        "max labels per cluster tree leaf");

  LinkArgs ln;
  CLI::App* link_cmd =
      app.add_subcommand("link", "link the mentions of a PubTator corpus");
  link_cmd->add_option("--model", ln.model, "model directory")->required();
  link_cmd->add_option("--kb", ln.kb, "kb directory or TSV")->required();
  link_cmd->add_option("--input", ln.input, "PubTator input")->required();
  link_cmd->add_option("--out", ln.out, "predictions output file")
      ->required();
  link_cmd->add_option("--report", ln.report, "per-mention report TSV");
  link_cmd->add_option("--threshold", ln.cfg.threshold,
                       "minimum accepted matcher score");
  link_cmd->add_option("--beam", ln.cfg.beam, "beam width");
  link_cmd->add_option("--top-k", ln.cfg.top_k, "ranked candidates kept");
  link_cmd->add_option("--string-top-n", ln.cfg.string_top_n,
                       "string matcher candidates");
  link_cmd->add_option("--teleport", ln.cfg.ppr.teleport,
                       "random walk restart probability");
  link_cmd->add_option("--tol", ln.cfg.ppr.tol, "walk convergence tolerance");
  link_cmd->add_option("--max-iters", ln.cfg.ppr.max_iters,
                       "walk iteration ceiling");
  link_cmd->add_option("--type", ln.type,
                       "only link mentions of this entity type");
  link_cmd->add_option("--jobs", ln.jobs, "worker threads over documents");

  EvalArgs ev;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "score a predictions file against gold annotations");
  eval_cmd->add_option("--pred", ev.pred, "predictions file from link")
      ->required();
  eval_cmd->add_option("--gold", ev.gold, "gold PubTator file")->required();
  eval_cmd->add_option("--k", ev.ks, "comma-separated accuracy depths");
  eval_cmd->add_option("--kb", ev.kb,
                       "kb directory or TSV, enables obsolete-id filtering");
  eval_cmd->add_option("--report", ev.report,
                       "link report TSV for per-branch breakdown");
  eval_cmd->add_option("--name", ev.name, "dataset label in the output");

  for (CLI::App* sub : app.get_subcommands({})) {
    sub->configurable(true);
    // Lets `--config` (and nothing else; every verb option is declared)
    // appear after the verb and still reach the top-level app.
    sub->fallthrough(true);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build_kb->parsed()) return cmd_build_kb(kos_path, out_dir);
    if (gen_train->parsed()) {
      if (gen_train->count("--cap") && gen_cap > 0) gen.cap = gen_cap;
      return cmd_gen_train(gen);
    }
    if (train_cmd->parsed()) return cmd_train(tr);
    if (link_cmd->parsed()) return cmd_link(ln);
    if (eval_cmd->parsed()) return cmd_evaluate(ev);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace xlinker
