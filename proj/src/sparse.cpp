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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "xlinker/errors.hpp"

namespace xlinker {

double dot(const SparseVec& a, const SparseVec& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.idx.size() && j < b.idx.size()) {
    if (a.idx[i] == b.idx[j]) {
      sum += a.val[i] * b.val[j];
      ++i;
      ++j;
    } else if (a.idx[i] < b.idx[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double l2_norm(const SparseVec& a) {
  double sq = 0.0;
  for (double v : a.val) sq += v * v;
  return std::sqrt(sq);
}

void scale(SparseVec& a, double s) {
  for (double& v : a.val) v *= s;
}

void l2_normalize(SparseVec& a) {
  double n = l2_norm(a);
  if (n > 0.0) scale(a, 1.0 / n);
}

void SparseAccumulator::add(const SparseVec& v, double weight) {
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    std::uint32_t i = v.idx[k];
    if (dense_[i] == 0.0) touched_.push_back(i);
    dense_[i] += weight * v.val[k];
  }
}

SparseVec SparseAccumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  touched_.erase(std::unique(touched_.begin(), touched_.end()),
                 touched_.end());
  SparseVec out;
  out.idx.reserve(touched_.size());
  out.val.reserve(touched_.size());
  for (std::uint32_t i : touched_) {
    if (dense_[i] != 0.0) {
      out.idx.push_back(i);
      out.val.push_back(dense_[i]);
    }
    dense_[i] = 0.0;
  }
  touched_.clear();
  return out;
}

void CsrMatrix::append_row(const SparseVec& v) {
  col_idx.insert(col_idx.end(), v.idx.begin(), v.idx.end());
  values.insert(values.end(), v.val.begin(), v.val.end());
  row_offsets.push_back(col_idx.size());
  ++rows;
}

SparseVec CsrMatrix::row(std::size_t r) const {
  SparseVec out;
  std::uint64_t begin = row_offsets[r], end = row_offsets[r + 1];
  out.idx.assign(col_idx.begin() + begin, col_idx.begin() + end);
  out.val.assign(values.begin() + begin, values.begin() + end);
  return out;
}

namespace {

constexpr char kMagic[4] = {'X', 'L', 'S', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& buf, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  put_u64(buf, bits);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint32_t u32() {
    unsigned char b[4];
    read(b, 4);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
           std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
  }

  std::uint64_t u64() {
    std::uint64_t lo = u32(), hi = u32();
    return lo | (hi << 32);
  }

  double f64() {
    std::uint64_t bits = u64();
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
  }

  void read(void* dst, std::size_t n) {
    if (!in_.read(static_cast<char*>(dst), std::streamsize(n)))
      throw ParseError("truncated sparse matrix file");
  }

 private:
  std::istream& in_;
};

}  // namespace

void write_csr(const CsrMatrix& m, const std::string& path) {
  std::string buf;
  buf.append(kMagic, 4);
  put_u32(buf, kVersion);
  put_u64(buf, m.rows);
  put_u64(buf, m.cols);
  put_u64(buf, m.col_idx.size());
  for (std::uint64_t o : m.row_offsets) put_u64(buf, o);
  for (std::uint32_t c : m.col_idx) put_u32(buf, c);
  for (double v : m.values) put_f64(buf, v);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("could not open " + path + " for write");
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

CsrMatrix read_csr(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("could not open " + path);
  char magic[4];
  Reader r(in);
  r.read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("bad magic in " + path);
  std::uint32_t version = r.u32();
  if (version != kVersion)
    throw ParseError("unsupported sparse matrix version in " + path);

  CsrMatrix m;
  m.rows = r.u64();
  m.cols = r.u64();
  std::uint64_t nnz = r.u64();
  m.row_offsets.resize(m.rows + 1);
  for (auto& o : m.row_offsets) o = r.u64();
  if (m.row_offsets.front() != 0 || m.row_offsets.back() != nnz)
    throw ParseError("inconsistent row offsets in " + path);
  m.col_idx.resize(nnz);
  for (auto& c : m.col_idx) c = r.u32();
  m.values.resize(nnz);
  for (auto& v : m.values) v = r.f64();
  return m;
}

}  // namespace xlinker
