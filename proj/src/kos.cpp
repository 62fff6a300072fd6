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

#include "xlinker/kos.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "xlinker/errors.hpp"
#include "xlinker/text.hpp"

namespace xlinker {

namespace {

std::vector<std::string> split_pipe(const std::string& field) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= field.size()) {
    std::size_t bar = field.find('|', pos);
    if (bar == std::string::npos) bar = field.size();
    if (bar > pos) out.push_back(field.substr(pos, bar - pos));
    pos = bar + 1;
  }
  return out;
}

// Rejects cycles in the parent relation (the hierarchy must be a DAG).
void check_acyclic(const std::vector<Concept>& concepts,
                   const std::unordered_map<std::string, std::size_t>& index) {
  enum class Mark : char { kWhite, kGray, kBlack };
  std::vector<Mark> mark(concepts.size(), Mark::kWhite);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (node, next edge)
  for (std::size_t root = 0; root < concepts.size(); ++root) {
    if (mark[root] != Mark::kWhite) continue;
    stack.emplace_back(root, 0);
    mark[root] = Mark::kGray;
    while (!stack.empty()) {
      auto& [node, edge] = stack.back();
      if (edge < concepts[node].parent_ids.size()) {
        std::size_t parent = index.at(concepts[node].parent_ids[edge]);
        ++edge;
        if (mark[parent] == Mark::kGray)
          throw IntegrityError("cycle in parent hierarchy involving id " +
                               concepts[parent].id);
        if (mark[parent] == Mark::kWhite) {
          mark[parent] = Mark::kGray;
          stack.emplace_back(parent, 0);
        }
      } else {
        mark[node] = Mark::kBlack;
        stack.pop_back();
      }
    }
  }
}

}  // namespace

std::string strip_id_prefix(const std::string& id) {
  for (const char* prefix : {"MESH:", "OMIM:"}) {
    if (id.rfind(prefix, 0) == 0) return id.substr(std::string(prefix).size());
  }
  return id;
}

std::size_t KnowledgeBase::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw LookupError("unknown KOS identifier: " + id);
  return it->second;
}

const std::string& KnowledgeBase::id_of(std::size_t index) const {
  return concepts_[index].id;
}

bool KnowledgeBase::contains(const std::string& id) const {
  return index_.count(id) > 0;
}

std::optional<std::size_t> KnowledgeBase::resolve(const std::string& id) const {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  auto alt = alt_index_.find(id);
  if (alt != alt_index_.end()) return alt->second;
  return std::nullopt;
}

double KnowledgeBase::information_content(std::size_t index) const {
  double p = double(children_count_[index] + 1) / double(size());
  return -std::log(p);
}

double KnowledgeBase::information_content(const std::string& id) const {
  return information_content(index_of(id));
}

std::vector<std::string> KnowledgeBase::neighbors(const std::string& id) const {
  std::vector<std::string> out;
  for (std::size_t n : adjacency_[index_of(id)]) out.push_back(id_of(n));
  return out;
}

KnowledgeBase load_kos(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("could not open KOS file: " + path);

  KnowledgeBase kb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

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
    if (fields.size() < 8)
      throw ParseError("line " + std::to_string(line_no) + ": expected >= 8 " +
                       "tab-separated columns, found " +
                       std::to_string(fields.size()));

    Concept c;
    c.canonical_name = fields[0];
    c.id = strip_id_prefix(fields[1]);
    if (c.id.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty ID field");
    if (c.canonical_name.empty())
      throw ParseError("line " + std::to_string(line_no) +
                       ": empty Name field");
    for (const auto& alt : split_pipe(fields[2]))
      c.alt_ids.push_back(strip_id_prefix(alt));
    for (const auto& parent : split_pipe(fields[4])) {
      std::string p = strip_id_prefix(parent);
      if (std::find(c.parent_ids.begin(), c.parent_ids.end(), p) ==
          c.parent_ids.end())
        c.parent_ids.push_back(p);
    }
    std::set<std::string> seen_lower;
    for (const auto& syn : split_pipe(fields[7])) {
      if (seen_lower.insert(to_lower(syn)).second) c.synonyms.push_back(syn);
    }

    if (kb.index_.count(c.id))
      throw IntegrityError("duplicate concept id: " + c.id);
    kb.index_.emplace(c.id, kb.concepts_.size());
    kb.concepts_.push_back(std::move(c));
  }

  // Dangling parents: collect them all before failing.
  std::vector<std::string> dangling;
  for (const auto& c : kb.concepts_) {
    for (const auto& p : c.parent_ids) {
      if (!kb.index_.count(p)) dangling.push_back(c.id + "->" + p);
    }
  }
  if (!dangling.empty()) {
    std::ostringstream msg;
    msg << "dangling parent ids:";
    for (const auto& d : dangling) msg << ' ' << d;
    throw IntegrityError(msg.str());
  }

  check_acyclic(kb.concepts_, kb.index_);

  for (const auto& c : kb.concepts_) {
    std::size_t owner = kb.index_.at(c.id);
    for (const auto& alt : c.alt_ids) {
      if (kb.index_.count(alt)) continue;  // a live concept owns this id
      auto [it, inserted] = kb.alt_index_.emplace(alt, owner);
      if (!inserted && it->second != owner)
        throw IntegrityError("alternate id " + alt +
                             " claimed by multiple concepts: " +
                             kb.concepts_[it->second].id + " and " + c.id);
    }
  }

  kb.children_count_.assign(kb.size(), 0);
  kb.adjacency_.assign(kb.size(), {});
  for (std::size_t child = 0; child < kb.size(); ++child) {
    for (const auto& p : kb.concepts_[child].parent_ids) {
      std::size_t parent = kb.index_.at(p);
      ++kb.children_count_[parent];
      kb.adjacency_[child].push_back(parent);
      kb.adjacency_[parent].push_back(child);
    }
  }
  for (auto& adj : kb.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return kb;
}

void write_ctd_tsv(const KnowledgeBase& kb, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("could not open " + path + " for write");
  out << "# Name\tID\tAltIDs\tDefinition\tParentIDs\tTreeNumbers\t"
         "ParentTreeNumbers\tSynonyms\n";
  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += '|';
      s += parts[i];
    }
    return s;
  };
  for (const auto& c : kb.concepts()) {
    out << c.canonical_name << '\t' << c.id << '\t' << join(c.alt_ids) << '\t'
        << '\t' << join(c.parent_ids) << '\t' << '\t' << '\t'
        << join(c.synonyms) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace xlinker
