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

// Rule-based detection of (short form, long form) abbreviation pairs and
// whole-mention expansion.

#pragma once

#include <map>
#include <string>

namespace xlinker {

// Short form -> long form, scoped to a single document.
struct AbbreviationMap {
  std::map<std::string, std::string> pairs;
};

// Finds "long form (SF)" patterns. A short form qualifies when it has 2-10
// characters over at most 2 words, contains a letter and starts with an
// alphanumeric. The long form is searched right to left inside a window of
// min(|SF|+5, 2*|SF|) words before the parenthesis; every short-form
// character must appear in order, and the first one must begin a word.
AbbreviationMap detect_abbreviations(const std::string& text);

// Whole-mention expansion: case-sensitive lookup, then a case-insensitive
// fallback; unknown mentions pass through unchanged.
std::string expand_mention(const std::string& mention_text,
                           const AbbreviationMap& map);

}  // namespace xlinker
