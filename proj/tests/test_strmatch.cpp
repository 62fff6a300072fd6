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

#include "xlinker/strmatch.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "xlinker/text.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace xlinker;
using testing::KosRow;
using testing::TempDir;

namespace {

std::string random_string(std::mt19937_64& rng, std::size_t max_len,
                          int alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> ch(0, alphabet - 1);
  std::string s(len(rng), 'a');
  for (char& c : s) c = char('a' + ch(rng));
  return s;
}

// Reference scorer: full scan of the index, no pruning.
std::vector<ScoredCandidate> brute_match(const NameIndex& index,
                                         const std::string& query_raw,
                                         std::size_t top_n) {
  std::string query = to_lower(query_raw);
  std::map<std::uint32_t, std::pair<double, std::string>> best;
  for (const auto& e : index.entries()) {
    double s = similarity(query, e.name);
    auto it = best.find(e.concept_index);
    if (it == best.end() || s > it->second.first ||
        (s == it->second.first && e.name < it->second.second))
      best[e.concept_index] = {s, e.name};
  }
  std::vector<ScoredCandidate> out;
  for (const auto& [idx, sc] : best)
    out.push_back({idx, sc.first, CandidateSource::kStringMatch, sc.second});
  std::sort(out.begin(), out.end(),
            [](const ScoredCandidate& a, const ScoredCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.concept_index < b.concept_index;
            });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

}  // namespace

TEST_SUITE("strmatch") {

TEST_CASE("edit distance on the classic anchors") {
  CHECK(edit_distance("kitten", "sitting") == 3);
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("abc", "") == 3);
  CHECK(edit_distance("", "") == 0);
  CHECK(edit_distance("same", "same") == 0);
  CHECK(edit_distance("flaw", "lawn") == 2);
}

TEST_CASE("edit distance is a metric on random strings") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    std::string a = random_string(rng, 8, 4);
    std::string b = random_string(rng, 8, 4);
    std::string c = random_string(rng, 8, 4);
    std::size_t ab = edit_distance(a, b);
    CHECK(ab == edit_distance(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(ab <= edit_distance(a, c) + edit_distance(c, b));
  }
}

TEST_CASE("similarity anchors") {
  CHECK(similarity("vasculitic", "vasculitis") == 0.9);
  CHECK(similarity("same", "same") == 1.0);
  CHECK(similarity("", "") == 1.0);
  CHECK(similarity("", "abc") == 0.0);
  CHECK(similarity("ab", "cd") == 0.0);
}

TEST_CASE("similarity equals one exactly when strings are equal") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    std::string a = random_string(rng, 8, 4);
    std::string b = random_string(rng, 8, 4);
    if (a == b)
      CHECK(similarity(a, b) == 1.0);
    else
      CHECK(similarity(a, b) < 1.0);
  }
}

TEST_CASE("index holds one entry per surface and concept pair") {
  TempDir dir("idx");
  std::vector<KosRow> rows = {
      {"Alpha", "MESH:A1", "", "", "", "", "", "one|two"},
      {"Beta", "MESH:B1", "", "", "", "", "", "two"},
      {"Gamma", "MESH:C1", "", "", "", "", "", "Gamma|GAMMA"},
  };
  KnowledgeBase kb = testing::load_fixture_kb(dir, rows);
  NameIndex index = build_name_index(kb);
  // alpha, one, two(A1), beta, two(B1), gamma.
  CHECK(index.size() == 6);

  auto owners = index.exact("two");
  std::vector<std::uint32_t> expected = {
      std::uint32_t(kb.index_of("A1")), std::uint32_t(kb.index_of("B1"))};
  std::sort(expected.begin(), expected.end());
  CHECK(owners == expected);
  CHECK(index.exact("nothing").empty());
}

TEST_CASE("match ranks exact hits first and breaks ties by concept") {
  TempDir dir("match");
  std::vector<KosRow> rows = {
      {"Vasculitis", "MESH:D014657", "", "", "", "", "", ""},
      {"Cold", "MESH:A1", "", "", "", "", "", "shared name"},
      {"Chill", "MESH:B1", "", "", "", "", "", "shared name"},
  };
  KnowledgeBase kb = testing::load_fixture_kb(dir, rows);
  NameIndex index = build_name_index(kb);

  auto top = index.match("Vasculitis", 3);
  REQUIRE(!top.empty());
  CHECK(top[0].score == 1.0);
  CHECK(top[0].concept_index == kb.index_of("D014657"));

  auto close = index.match("vasculitic", 1);
  REQUIRE(close.size() == 1);
  CHECK(close[0].score == 0.9);
  CHECK(close[0].concept_index == kb.index_of("D014657"));
  CHECK(close[0].matched_surface == "vasculitis");

  auto tied = index.match("shared name", 3);
  REQUIRE(tied.size() >= 2);
  CHECK(tied[0].score == 1.0);
  CHECK(tied[1].score == 1.0);
  CHECK(tied[0].concept_index < tied[1].concept_index);
}

TEST_CASE("match with zero slots returns nothing") {
  TempDir dir("zero");
  KnowledgeBase kb = testing::load_fixture_kb(
      dir, {{"Alpha", "MESH:A1", "", "", "", "", "", ""}});
  NameIndex index = build_name_index(kb);
  CHECK(index.match("alpha", 0).empty());
}

TEST_CASE("pruned search equals the exhaustive scan") {
  TempDir dir("prune");
  std::mt19937_64 rng(2024);
  std::vector<KosRow> rows;
  for (int i = 0; i < 120; ++i) {
    std::string syns = random_string(rng, 12, 6);
    for (int s = 0; s < 3; ++s) syns += "|" + random_string(rng, 12, 6);
    rows.push_back({random_string(rng, 12, 6) + std::to_string(i),
                    "MESH:Q" + std::to_string(i), "", "", "", "", "", syns});
  }
  KnowledgeBase kb = testing::load_fixture_kb(dir, rows);
  NameIndex index = build_name_index(kb);

  for (int trial = 0; trial < 60; ++trial) {
    std::string query = random_string(rng, 14, 6);
    for (std::size_t top_n : {1, 3, 10}) {
      auto fast = index.match(query, top_n);
      auto slow = brute_match(index, query, top_n);
      REQUIRE(fast.size() == slow.size());
      for (std::size_t i = 0; i < fast.size(); ++i) {
        CHECK(fast[i].concept_index == slow[i].concept_index);
        CHECK(fast[i].score == slow[i].score);
        CHECK(fast[i].matched_surface == slow[i].matched_surface);
      }
    }
  }
}

}  // TEST_SUITE
