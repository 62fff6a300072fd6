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

// Top-k accuracy against gold annotations.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace xlinker {

// Mean over mentions of 1{any gold id within the top k predictions}.
// Mentions with empty predictions count zero. Gold sets use ANY-match
// (composite annotations score on any of their ids).
double top_k_accuracy(const std::vector<std::vector<std::string>>& predictions,
                      const std::vector<std::vector<std::string>>& gold,
                      std::size_t k);

// Mentions keyed by position and surface, for aligning prediction files
// with gold files.
using MentionKey = std::tuple<std::string, std::size_t, std::size_t,
                              std::string>;  // doc, start, end, text

// Ranked predicted ids per annotated mention, read from a PubTator file
// whose annotation lines carry a seventh comma-separated id column.
std::map<MentionKey, std::vector<std::string>> read_predictions(
    const std::string& path);

// Per-mention branch names from a link report, for breakdowns.
std::map<MentionKey, std::string> read_report_branches(
    const std::string& path);

struct BranchStats {
  std::size_t mentions = 0;
  double top1 = 0.0;
};

struct EvalReport {
  std::string dataset;
  std::size_t evaluated = 0;
  std::map<std::size_t, double> accuracy_at;  // k -> accuracy
  std::size_t nil_removed = 0;
  std::size_t obsolete_removed = 0;
  std::map<std::string, BranchStats> per_branch;
};

// Tab-separated table: one metric per row, one dataset column.
void write_eval_report(const EvalReport& report, std::ostream& out);

}  // namespace xlinker
