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

#include "xlinker/abbrev.hpp"

#include <algorithm>
#include <cctype>

#include "xlinker/text.hpp"

namespace xlinker {

namespace {

bool valid_short_form(const std::string& sf) {
  if (sf.size() < 2 || sf.size() > 10) return false;
  if (!std::isalnum(static_cast<unsigned char>(sf[0]))) return false;
  bool has_letter = false;
  std::size_t words = 1;
  for (std::size_t i = 0; i < sf.size(); ++i) {
    if (std::isalpha(static_cast<unsigned char>(sf[i]))) has_letter = true;
    if (sf[i] == ' ' && i > 0 && sf[i - 1] != ' ') ++words;
  }
  return has_letter && words <= 2;
}

char lower(char c) { return char(std::tolower(static_cast<unsigned char>(c))); }

// Right-to-left alignment of the short form inside the candidate region;
// returns the start of the long form, or npos when alignment fails. The
// first short-form character must sit at the start of a word.
std::size_t align_long_form(const std::string& region, const std::string& sf) {
  std::ptrdiff_t l = std::ptrdiff_t(region.size()) - 1;
  for (std::ptrdiff_t s = std::ptrdiff_t(sf.size()) - 1; s >= 0; --s) {
    char c = lower(sf[std::size_t(s)]);
    if (!std::isalnum(static_cast<unsigned char>(c))) continue;
    while (l >= 0 &&
           (lower(region[std::size_t(l)]) != c ||
            (s == 0 && l > 0 &&
             std::isalnum(static_cast<unsigned char>(region[std::size_t(l) - 1])))))
      --l;
    if (l < 0) return std::string::npos;
    --l;
  }
  return std::size_t(l + 1);
}

}  // namespace

AbbreviationMap detect_abbreviations(const std::string& text) {
  AbbreviationMap map;
  std::size_t open = text.find('(');
  while (open != std::string::npos) {
    std::size_t close = text.find(')', open + 1);
    if (close == std::string::npos) break;

    std::string sf = text.substr(open + 1, close - open - 1);
    while (!sf.empty() && sf.back() == ' ') sf.pop_back();
    while (!sf.empty() && sf.front() == ' ') sf.erase(sf.begin());

    if (valid_short_form(sf)) {
      // Window of whole words immediately before the parenthesis.
      std::size_t max_words = std::min(sf.size() + 5, 2 * sf.size());
      std::size_t region_end = open;
      while (region_end > 0 &&
             std::isspace(static_cast<unsigned char>(text[region_end - 1])))
        --region_end;
      std::size_t region_start = region_end;
      std::size_t words = 0;
      while (region_start > 0 && words < max_words) {
        std::size_t word_end = region_start;
        while (word_end > 0 &&
               std::isspace(static_cast<unsigned char>(text[word_end - 1])))
          --word_end;
        if (word_end == 0) break;
        std::size_t word_start = word_end;
        while (word_start > 0 &&
               !std::isspace(static_cast<unsigned char>(text[word_start - 1])))
          --word_start;
        region_start = word_start;
        ++words;
      }
      std::string region = text.substr(region_start, region_end - region_start);
      std::size_t at = align_long_form(region, sf);
      if (at != std::string::npos) {
        std::string lf = region.substr(at);
        if (!lf.empty() && to_lower(lf) != to_lower(sf))
          map.pairs.emplace(sf, lf);  // first detection wins
      }
    }
    open = text.find('(', close + 1);
  }
  return map;
}

std::string expand_mention(const std::string& mention_text,
                           const AbbreviationMap& map) {
  auto it = map.pairs.find(mention_text);
  if (it != map.pairs.end()) return it->second;
  std::string lowered = to_lower(mention_text);
  for (const auto& [sf, lf] : map.pairs) {
    if (to_lower(sf) == lowered) return lf;
  }
  return mention_text;
}

}  // namespace xlinker
