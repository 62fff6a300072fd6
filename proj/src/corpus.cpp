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

#include "xlinker/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "xlinker/errors.hpp"
#include "xlinker/text.hpp"

namespace xlinker {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

std::size_t parse_offset(const std::string& s, std::size_t line_no) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("line " + std::to_string(line_no) +
                     ": non-numeric offset '" + s + "'");
  return std::stoull(s);
}

}  // namespace

bool is_nil(const Mention& m) {
  if (m.gold_ids.empty()) return true;
  for (const auto& id : m.gold_ids) {
    if (id == "-1" || id == "-") return true;
  }
  return false;
}

std::vector<Document> parse_pubtator(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_map<std::string, std::size_t> doc_index;
  std::vector<std::size_t> mention_lines;  // parallels all mentions, in order

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::size_t t_sep = line.find("|t|");
    std::size_t a_sep = line.find("|a|");
    std::size_t tab = line.find('\t');
    bool is_title = t_sep != std::string::npos &&
                    (tab == std::string::npos || t_sep < tab);
    bool is_abstract = a_sep != std::string::npos &&
                       (tab == std::string::npos || a_sep < tab);
    if (is_title && is_abstract) {  // keep whichever separator comes first
      if (t_sep < a_sep)
        is_abstract = false;
      else
        is_title = false;
    }

    if (is_title) {
      std::string doc_id = line.substr(0, t_sep);
      if (doc_id.empty())
        throw ParseError("line " + std::to_string(line_no) +
                         ": empty document id in title line");
      auto [it, inserted] = doc_index.emplace(doc_id, docs.size());
      if (inserted) {
        Document d;
        d.doc_id = doc_id;
        docs.push_back(std::move(d));
      }
      docs[it->second].title = line.substr(t_sep + 3);
      continue;
    }
    if (is_abstract) {
      std::string doc_id = line.substr(0, a_sep);
      auto it = doc_index.find(doc_id);
      if (it == doc_index.end())
        throw ParseError("line " + std::to_string(line_no) +
                         ": abstract for unseen document id " + doc_id);
      docs[it->second].abstract_text = line.substr(a_sep + 3);
      continue;
    }

    std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 6)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 6 tab-separated annotation columns, "
                       "found " +
                       std::to_string(fields.size()));
    auto it = doc_index.find(fields[0]);
    if (it == doc_index.end())
      throw ParseError("line " + std::to_string(line_no) +
                       ": annotation for unseen document id " + fields[0]);

    Mention m;
    m.doc_id = fields[0];
    m.start = parse_offset(fields[1], line_no);
    m.end = parse_offset(fields[2], line_no);
    m.text = fields[3];
    m.entity_type = fields[4];
    m.raw_id = fields[5];
    std::size_t pos = 0;
    while (pos <= m.raw_id.size() && !m.raw_id.empty()) {
      std::size_t bar = m.raw_id.find('|', pos);
      if (bar == std::string::npos) bar = m.raw_id.size();
      if (bar > pos)
        m.gold_ids.push_back(strip_id_prefix(m.raw_id.substr(pos, bar - pos)));
      pos = bar + 1;
    }
    if (m.text.empty())
      throw ParseError("line " + std::to_string(line_no) +
                       ": empty mention text");
    if (m.start >= m.end)
      throw ParseError("line " + std::to_string(line_no) + ": span start " +
                       std::to_string(m.start) + " not before end " +
                       std::to_string(m.end));
    docs[it->second].mentions.push_back(std::move(m));
    mention_lines.push_back(line_no);
  }

  // Spans must fit the document text (title, one separator, abstract).
  std::size_t seen = 0;
  for (const auto& d : docs) {
    std::size_t bound = d.title.size();
    if (!d.abstract_text.empty()) bound += 1 + d.abstract_text.size();
    for (const auto& m : d.mentions) {
      std::size_t at_line = mention_lines[seen++];
      if (m.end > bound)
        throw ParseError("line " + std::to_string(at_line) + ": span end " +
                         std::to_string(m.end) +
                         " exceeds document length " + std::to_string(bound) +
                         " of " + d.doc_id);
    }
  }
  return docs;
}

std::vector<Document> parse_pubtator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("could not open PubTator file: " + path);
  return parse_pubtator(in);
}

void write_pubtator(const std::vector<Document>& docs, std::ostream& out) {
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Document& d = docs[i];
    if (i) out << '\n';
    out << d.doc_id << "|t|" << d.title << '\n';
    out << d.doc_id << "|a|" << d.abstract_text << '\n';
    for (const auto& m : d.mentions) {
      out << m.doc_id << '\t' << m.start << '\t' << m.end << '\t' << m.text
          << '\t' << m.entity_type << '\t' << m.raw_id << '\n';
    }
  }
}

std::vector<Annotation> annotations_from_documents(
    const std::vector<Document>& docs) {
  std::vector<Annotation> out;
  for (const auto& d : docs) {
    for (const auto& m : d.mentions) {
      for (const auto& id : m.gold_ids) {
        if (id == "-1" || id == "-") continue;
        out.push_back({m.doc_id, m.text, id});
      }
    }
  }
  return out;
}

TrainingSet generate_training_set(
    const std::vector<Annotation>& annotations, const KnowledgeBase& kb,
    const std::unordered_set<std::string>& excluded_docs,
    std::optional<std::size_t> cap) {
  // Steps 1-3: filter excluded documents, lowercase, count raw occurrences
  // of each (id, text) pair.
  std::map<std::pair<std::string, std::string>, std::size_t> freq;
  for (const auto& a : annotations) {
    if (excluded_docs.count(a.doc_id)) continue;
    freq[{a.id, to_lower(a.text)}] += 1;
  }

  // Step 4: alternate ids fold into their owning concept, obsolete ids are
  // dropped; frequencies of merged pairs add up.
  std::map<std::pair<std::uint32_t, std::string>, std::size_t> by_label;
  for (const auto& [key, count] : freq) {
    std::optional<std::size_t> idx = kb.resolve(key.first);
    if (!idx) continue;
    by_label[{std::uint32_t(*idx), key.second}] += count;
  }

  // Step 5: per label keep the cap most frequent texts.
  struct Row {
    std::string text;
    std::size_t count;
  };
  std::map<std::uint32_t, std::vector<Row>> per_label;
  for (const auto& [key, count] : by_label)
    per_label[key.first].push_back({key.second, count});

  TrainingSet ts;
  ts.cap = cap;
  for (auto& [label, rows] : per_label) {
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (a.count != b.count) return a.count > b.count;
      return a.text < b.text;
    });
    std::size_t keep = cap ? std::min(*cap, rows.size()) : rows.size();
    for (std::size_t i = 0; i < keep; ++i)
      ts.instances.push_back({label, rows[i].text});
  }
  std::sort(ts.instances.begin(), ts.instances.end(),
            [](const TrainingInstance& a, const TrainingInstance& b) {
              if (a.label != b.label) return a.label < b.label;
              return a.text < b.text;
            });
  if (ts.instances.empty())
    std::cerr << "warning: training set is empty after filtering\n";
  return ts;
}

TrainingSet kos_training_instances(const KnowledgeBase& kb) {
  TrainingSet ts;
  ts.provenance = Provenance::kKosOnly;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    const Concept& c = kb.concept_at(i);
    std::vector<std::string> texts;
    texts.push_back(to_lower(c.canonical_name));
    for (const auto& syn : c.synonyms) texts.push_back(to_lower(syn));
    std::sort(texts.begin(), texts.end());
    texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
    for (auto& t : texts) ts.instances.push_back({std::uint32_t(i), std::move(t)});
  }
  return ts;
}

EvalDataset load_eval_dataset(const std::string& path,
                              const KnowledgeBase& kb) {
  EvalDataset ds;
  ds.documents = parse_pubtator_file(path);
  for (auto& d : ds.documents) {
    std::vector<Mention> kept;
    for (auto& m : d.mentions) {
      if (is_nil(m)) {
        ++ds.nil_removed;
        continue;
      }
      bool resolvable = false;
      for (const auto& id : m.gold_ids) {
        if (kb.resolve(id)) {
          resolvable = true;
          break;
        }
      }
      if (!resolvable) {
        ++ds.obsolete_removed;
        continue;
      }
      kept.push_back(std::move(m));
    }
    d.mentions = std::move(kept);
  }
  return ds;
}

void write_training_file(const TrainingSet& ts, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("could not open " + path + " for write");
  for (const auto& inst : ts.instances)
    out << inst.label << '\t' << inst.text << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

TrainingSet read_training_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("could not open training file: " + path);
  TrainingSet ts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected label<TAB>text");
    std::string label = line.substr(0, tab);
    if (label.empty() ||
        label.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-numeric label '" + label + "'");
    ts.instances.push_back(
        {std::uint32_t(std::stoul(label)), line.substr(tab + 1)});
  }
  return ts;
}

}  // namespace xlinker
