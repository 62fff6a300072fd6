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

#include "xlinker/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <ostream>
#include <thread>

#include "xlinker/abbrev.hpp"

namespace xlinker {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::kExact:
      return "exact";
    case Branch::kPecos:
      return "pecos";
    case Branch::kLowScore:
      return "low-score";
    case Branch::kNil:
      return "nil";
  }
  return "unknown";
}

namespace {

struct RoutedCandidate {
  ScoredCandidate sc;
  Branch added_by;
};

// Candidate routing for one mention. A perfect string or matcher score is
// kept on its own; a matcher score at or above the threshold stands alone;
// anything lower adds both generators' top candidates.
std::vector<RoutedCandidate> route(
    const std::vector<ScoredCandidate>& string_matches,
    const std::vector<ScoredCandidate>& pecos_matches, double threshold) {
  std::vector<RoutedCandidate> c;
  // Duplicate concepts keep their higher-scored entry.
  auto add_candidate = [&](const ScoredCandidate& sc, Branch b) {
    for (auto& existing : c) {
      if (existing.sc.concept_index == sc.concept_index) {
        if (sc.score > existing.sc.score) existing = {sc, b};
        return;
      }
    }
    c.push_back({sc, b});
  };

  if (!string_matches.empty() && string_matches[0].score == 1.0)
    add_candidate(string_matches[0], Branch::kExact);
  if (!pecos_matches.empty() && pecos_matches[0].score == 1.0) {
    add_candidate(pecos_matches[0], Branch::kExact);
  } else if (!pecos_matches.empty() &&
             pecos_matches[0].score >= threshold) {
    add_candidate(pecos_matches[0], Branch::kPecos);
  } else {
    if (!pecos_matches.empty())
      add_candidate(pecos_matches[0], Branch::kLowScore);
    if (!string_matches.empty())
      add_candidate(string_matches[0], Branch::kLowScore);
  }
  return c;
}

}  // namespace

std::vector<LinkedMention> link_document(const Document& doc,
                                         const XmrModel& model,
                                         const KnowledgeBase& kb,
                                         const NameIndex& index,
                                         const PipelineConfig& cfg) {
  std::string full_text = doc.title;
  if (!doc.abstract_text.empty()) {
    full_text += ' ';
    full_text += doc.abstract_text;
  }
  AbbreviationMap abbr = detect_abbreviations(full_text);

  std::vector<LinkedMention> out;
  std::vector<std::size_t> linked_at;  // index into out, per graph mention
  std::vector<std::vector<RoutedCandidate>> routed;
  std::vector<std::vector<ScoredCandidate>> candidate_lists;
  std::vector<std::vector<ScoredCandidate>> pecos_all, string_all;

  for (const Mention& m : doc.mentions) {
    if (!cfg.entity_type.empty() && m.entity_type != cfg.entity_type)
      continue;
    LinkedMention lm;
    lm.mention = m;
    lm.expanded_text = expand_mention(m.text, abbr);

    std::vector<ScoredCandidate> string_matches =
        index.match(lm.expanded_text, cfg.string_top_n);
    std::vector<ScoredCandidate> pecos_matches =
        predict(lm.expanded_text, model, cfg.beam, cfg.top_k);
    std::vector<RoutedCandidate> c =
        route(string_matches, pecos_matches, cfg.threshold);

    if (c.empty()) {
      lm.trace = Branch::kNil;
      out.push_back(std::move(lm));
      continue;
    }
    linked_at.push_back(out.size());
    out.push_back(std::move(lm));
    candidate_lists.emplace_back();
    for (const auto& rc : c) candidate_lists.back().push_back(rc.sc);
    routed.push_back(std::move(c));
    pecos_all.push_back(std::move(pecos_matches));
    string_all.push_back(std::move(string_matches));
  }

  if (candidate_lists.empty()) return out;

  DisambiguationGraph graph = build_graph(candidate_lists, kb);
  std::vector<double> coherence = coherence_scores(graph, kb, cfg.ppr);
  std::vector<ScoredCandidate> chosen = select(graph, coherence);

  for (std::size_t g = 0; g < chosen.size(); ++g) {
    LinkedMention& lm = out[linked_at[g]];
    const ScoredCandidate& pick = chosen[g];

    for (const auto& rc : routed[g]) {
      if (rc.sc.concept_index == pick.concept_index) {
        lm.trace = rc.added_by;
        break;
      }
    }

    // Ranked output: the selected candidate, the remaining graph
    // candidates by coherence, then the generators' tails.
    std::vector<std::uint32_t> emitted;
    auto emit = [&](std::uint32_t concept_idx, double score) {
      if (lm.prediction.size() >= cfg.top_k) return;
      if (std::find(emitted.begin(), emitted.end(), concept_idx) != emitted.end())
        return;
      emitted.push_back(concept_idx);
      lm.prediction.emplace_back(kb.id_of(concept_idx), score);
    };
    emit(pick.concept_index, pick.score);

    const auto& group = graph.mention_groups[g];
    std::vector<std::uint32_t> rest(group.begin(), group.end());
    std::sort(rest.begin(), rest.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (coherence[a] != coherence[b]) return coherence[a] > coherence[b];
      const GraphNode& na = graph.nodes[a];
      const GraphNode& nb = graph.nodes[b];
      if (na.incoming_score != nb.incoming_score)
        return na.incoming_score > nb.incoming_score;
      return na.concept_index < nb.concept_index;
    });
    for (std::uint32_t n : rest)
      emit(graph.nodes[n].concept_index, graph.nodes[n].incoming_score);
    for (const auto& sc : pecos_all[g]) emit(sc.concept_index, sc.score);
    for (const auto& sc : string_all[g]) emit(sc.concept_index, sc.score);
  }
  return out;
}

CorpusLinkResult link_corpus(const std::vector<Document>& docs,
                             const XmrModel& model, const KnowledgeBase& kb,
                             const NameIndex& index, const PipelineConfig& cfg,
                             std::size_t jobs) {
  CorpusLinkResult result;
  result.per_document.resize(docs.size());
  std::vector<std::pair<std::size_t, std::string>> errors;
  std::mutex errors_mu;
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) break;
      try {
        result.per_document[i] = link_document(docs[i], model, kb, index, cfg);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(errors_mu);
        errors.emplace_back(i, docs[i].doc_id + std::string(": ") + e.what());
      }
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::sort(errors.begin(), errors.end());
  for (auto& [i, msg] : errors) result.errors.push_back(std::move(msg));
  return result;
}

void write_predictions(const std::vector<Document>& docs,
                       const CorpusLinkResult& result, std::ostream& out) {
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const Document& doc = docs[d];
    if (d) out << '\n';
    out << doc.doc_id << "|t|" << doc.title << '\n';
    out << doc.doc_id << "|a|" << doc.abstract_text << '\n';

    const auto& linked = result.per_document[d];
    std::size_t cursor = 0;
    for (const Mention& m : doc.mentions) {
      const LinkedMention* lm = nullptr;
      if (cursor < linked.size() && linked[cursor].mention.start == m.start &&
          linked[cursor].mention.end == m.end &&
          linked[cursor].mention.text == m.text &&
          linked[cursor].mention.entity_type == m.entity_type &&
          linked[cursor].mention.raw_id == m.raw_id)
        lm = &linked[cursor++];

      out << m.doc_id << '\t' << m.start << '\t' << m.end << '\t' << m.text
          << '\t' << m.entity_type << '\t' << m.raw_id << '\t';
      if (!lm || lm->prediction.empty()) {
        out << '-';
      } else {
        for (std::size_t i = 0; i < lm->prediction.size(); ++i) {
          if (i) out << ',';
          out << lm->prediction[i].first;
        }
      }
      out << '\n';
    }
  }
}

void write_link_report(const CorpusLinkResult& result, std::ostream& out) {
  for (const auto& doc : result.per_document) {
    for (const LinkedMention& lm : doc) {
      out << lm.mention.doc_id << '\t' << lm.mention.start << '\t'
          << lm.mention.end << '\t' << lm.mention.text << '\t'
          << lm.expanded_text << '\t' << to_string(lm.trace) << '\t';
      if (lm.prediction.empty()) {
        out << '-';
      } else {
        for (std::size_t i = 0; i < lm.prediction.size(); ++i) {
          if (i) out << ',';
          out << lm.prediction[i].first << ':' << lm.prediction[i].second;
        }
      }
      out << '\n';
    }
  }
}

}  // namespace xlinker
