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

#include "xlinker/eval.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "xlinker/errors.hpp"

namespace xlinker {

double top_k_accuracy(const std::vector<std::vector<std::string>>& predictions,
                      const std::vector<std::vector<std::string>>& gold,
                      std::size_t k) {
  if (predictions.size() != gold.size())
    throw std::invalid_argument(
        "predictions and gold have different lengths: " +
        std::to_string(predictions.size()) + " vs " +
        std::to_string(gold.size()));
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (predictions.empty()) return 0.0;

  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& preds = predictions[i];
    std::size_t depth = std::min(k, preds.size());
    bool hit = false;
    for (std::size_t r = 0; r < depth && !hit; ++r) {
      hit = std::find(gold[i].begin(), gold[i].end(), preds[r]) !=
            gold[i].end();
    }
    if (hit) ++hits;
  }
  return double(hits) / double(predictions.size());
}

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

bool numeric(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace

std::map<MentionKey, std::vector<std::string>> read_predictions(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("could not open predictions file: " + path);

  std::map<MentionKey, std::vector<std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.find("|t|") != std::string::npos ||
        line.find("|a|") != std::string::npos) {
      std::size_t tab = line.find('\t');
      std::size_t sep = std::min(line.find("|t|"), line.find("|a|"));
      if (tab == std::string::npos || sep < tab) continue;  // text line
    }
    std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 7)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 7 columns in a predictions file, found " +
                       std::to_string(fields.size()));
    if (!numeric(fields[1]) || !numeric(fields[2]))
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-numeric span offsets");
    MentionKey key{fields[0], std::stoull(fields[1]), std::stoull(fields[2]),
                   fields[3]};
    std::vector<std::string> ids;
    if (fields[6] != "-" && !fields[6].empty()) {
      std::size_t pos = 0;
      while (pos <= fields[6].size()) {
        std::size_t comma = fields[6].find(',', pos);
        if (comma == std::string::npos) comma = fields[6].size();
        if (comma > pos) ids.push_back(fields[6].substr(pos, comma - pos));
        pos = comma + 1;
      }
    }
    out[key] = std::move(ids);
  }
  return out;
}

std::map<MentionKey, std::string> read_report_branches(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("could not open report file: " + path);

  std::map<MentionKey, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 7)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 7 columns in a link report, found " +
                       std::to_string(fields.size()));
    if (!numeric(fields[1]) || !numeric(fields[2]))
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-numeric span offsets");
    out[{fields[0], std::stoull(fields[1]), std::stoull(fields[2]),
         fields[3]}] = fields[5];
  }
  return out;
}

void write_eval_report(const EvalReport& report, std::ostream& out) {
  out << "metric\t" << report.dataset << '\n';
  out << "mentions\t" << report.evaluated << '\n';
  for (const auto& [k, acc] : report.accuracy_at)
    out << "top-" << k << '\t' << acc << '\n';
  out << "nil_removed\t" << report.nil_removed << '\n';
  out << "obsolete_removed\t" << report.obsolete_removed << '\n';
  for (const auto& [branch, stats] : report.per_branch) {
    out << "branch." << branch << ".mentions\t" << stats.mentions << '\n';
    out << "branch." << branch << ".top-1\t" << stats.top1 << '\n';
  }
}

}  // namespace xlinker
