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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xlinker {

// Malformed input file; messages carry the offending line number.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally inconsistent knowledge base (dangling parents, cycles,
// duplicate ids).
class IntegrityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Identifier not present in the queried container.
class LookupError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to reach its tolerance; keeps the last iterate so
// callers can inspect how far it got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, std::vector<double> last_iterate,
                   std::size_t iterations)
      : std::runtime_error(msg),
        last_iterate_(std::move(last_iterate)),
        iterations_(iterations) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  std::size_t iterations() const { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  std::size_t iterations_;
};

}  // namespace xlinker
