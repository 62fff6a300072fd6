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

#include "xlinker/sparse.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "xlinker/errors.hpp"

using namespace xlinker;

TEST_SUITE("sparse") {

TEST_CASE("dot handles disjoint, overlapping and empty patterns") {
  SparseVec a{{0, 2, 5}, {1.0, 2.0, 3.0}};
  SparseVec b{{1, 3, 4}, {9.0, 9.0, 9.0}};
  CHECK(dot(a, b) == 0.0);

  SparseVec c{{2, 5, 7}, {10.0, 0.5, 4.0}};
  CHECK(dot(a, c) == doctest::Approx(2.0 * 10.0 + 3.0 * 0.5).epsilon(1e-15));
  CHECK(dot(a, a) == doctest::Approx(1.0 + 4.0 + 9.0).epsilon(1e-15));

  SparseVec empty;
  CHECK(dot(a, empty) == 0.0);
}

TEST_CASE("l2_normalize produces unit norm and leaves zero vectors alone") {
  SparseVec a{{1, 4}, {3.0, 4.0}};
  CHECK(l2_norm(a) == doctest::Approx(5.0));
  l2_normalize(a);
  CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.val[0] == doctest::Approx(0.6));

  SparseVec zero;
  l2_normalize(zero);
  CHECK(zero.empty());
}

TEST_CASE("accumulator sums vectors independent of insertion order") {
  SparseAccumulator acc(10);
  acc.add(SparseVec{{7, 9}, {1.0, 2.0}});
  acc.add(SparseVec{{0, 7}, {5.0, 1.0}}, 2.0);
  SparseVec sum = acc.take();
  REQUIRE(sum.nnz() == 3);
  CHECK(sum.idx == std::vector<std::uint32_t>{0, 7, 9});
  CHECK(sum.val[0] == 10.0);
  CHECK(sum.val[1] == 3.0);
  CHECK(sum.val[2] == 2.0);

  // take() resets the accumulator for reuse.
  acc.add(SparseVec{{3}, {1.0}});
  SparseVec again = acc.take();
  CHECK(again.idx == std::vector<std::uint32_t>{3});
}

TEST_CASE("csr rows round-trip through append_row and row") {
  CsrMatrix m;
  m.cols = 6;
  m.append_row(SparseVec{{0, 5}, {1.5, -2.0}});
  m.append_row(SparseVec{});
  m.append_row(SparseVec{{2}, {7.0}});
  REQUIRE(m.rows == 3);
  CHECK(m.row(0).idx == std::vector<std::uint32_t>{0, 5});
  CHECK(m.row(1).empty());
  CHECK(m.row(2).val == std::vector<double>{7.0});
}

TEST_CASE("csr files survive a write and read cycle exactly") {
  testing::TempDir dir("csr");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-5.0, 5.0);

  CsrMatrix m;
  m.cols = 40;
  for (int r = 0; r < 25; ++r) {
    SparseVec v;
    for (std::uint32_t i = 0; i < 40; ++i)
      if (rng() % 4 == 0) {
        v.idx.push_back(i);
        v.val.push_back(value(rng));
      }
    m.append_row(v);
  }

  const std::string path = dir.file("m.bin");
  write_csr(m, path);
  CsrMatrix back = read_csr(path);
  CHECK(back.rows == m.rows);
  CHECK(back.cols == m.cols);
  CHECK(back.row_offsets == m.row_offsets);
  CHECK(back.col_idx == m.col_idx);
  CHECK(back.values == m.values);
}

TEST_CASE("csr reader rejects files with a wrong magic header") {
  testing::TempDir dir("csrbad");
  const std::string path =
      testing::write_text(dir.file("bad.bin"), "not a matrix");
  CHECK_THROWS_AS(read_csr(path), ParseError);
}

}  // TEST_SUITE
