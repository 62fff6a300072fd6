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
#include <cstdint>
#include <string>
#include <vector>

namespace xlinker {

// Sparse double vector with strictly ascending indexes.
struct SparseVec {
  std::vector<std::uint32_t> idx;
  std::vector<double> val;

  std::size_t nnz() const { return idx.size(); }
  bool empty() const { return idx.empty(); }
  void clear() {
    idx.clear();
    val.clear();
  }
};

double dot(const SparseVec& a, const SparseVec& b);
double l2_norm(const SparseVec& a);
// Scales in place; removes nothing (zero scale keeps the pattern).
void scale(SparseVec& a, double s);
// L2-normalizes in place; a zero vector is left untouched.
void l2_normalize(SparseVec& a);

// Dense accumulator for summing many sparse vectors without rehashing.
// Extraction sorts the touched indexes, so the result pattern does not
// depend on insertion order (values are summed in add() order).
class SparseAccumulator {
 public:
  explicit SparseAccumulator(std::size_t dim) : dense_(dim, 0.0) {}

  void add(const SparseVec& v, double weight = 1.0);
  SparseVec take();  // extracts the current sum and resets

 private:
  std::vector<double> dense_;
  std::vector<std::uint32_t> touched_;
};

// Compressed sparse row matrix; the on-disk format below is the model
// persistence contract (little-endian, magic-tagged).
struct CsrMatrix {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<std::uint64_t> row_offsets{0};
  std::vector<std::uint32_t> col_idx;
  std::vector<double> values;

  void append_row(const SparseVec& v);
  SparseVec row(std::size_t r) const;
};

void write_csr(const CsrMatrix& m, const std::string& path);
CsrMatrix read_csr(const std::string& path);

}  // namespace xlinker
