// Copyright 2026 The tsft Authors
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

#include "tsft/graph.hpp"

#include <algorithm>

#include "tsft/error.hpp"

namespace tsft {

BoolMatrix BoolMatrix::Identity(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.Set(i, i, true);
  return m;
}

BoolMatrix BoolMatrix::AllOnes(std::size_t n) {
  BoolMatrix m(n);
  std::fill(m.cells_.begin(), m.cells_.end(), 1);
  return m;
}

BoolMatrix BoolMatrix::FromRows(const std::vector<std::vector<int>>& rows) {
  BoolMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "matrix row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "matrix entries must be 0 or 1");
      }
      m.Set(i, j, rows[i][j] == 1);
    }
  }
  return m;
}

bool BoolMatrix::RowEmpty(std::size_t i) const {
  for (std::size_t j = 0; j < n_; ++j) {
    if ((*this)(i, j)) return false;
  }
  return true;
}

bool BoolMatrix::ColumnEmpty(std::size_t j) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, j)) return false;
  }
  return true;
}

bool BoolMatrix::IsAllOnes() const {
  return std::all_of(cells_.begin(), cells_.end(),
                     [](std::uint8_t c) { return c != 0; });
}

bool BoolMatrix::IsIrreducible() const {
  if (n_ == 0) return false;
  // Every vertex reaches every vertex by a path of length >= 1.
  for (std::size_t s = 0; s < n_; ++s) {
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> stack;
    for (std::size_t j = 0; j < n_; ++j) {
      if ((*this)(s, j) && !seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n_; ++j) {
        if ((*this)(v, j) && !seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

bool BoolMatrix::IsPrimitive() const {
  if (!IsIrreducible()) return false;
  // Wielandt: a primitive matrix has A^k > 0 for k = (n-1)^2 + 1.
  std::size_t bound = (n_ - 1) * (n_ - 1) + 1;
  BoolMatrix power = *this;
  for (std::size_t k = 1; k < bound; ++k) power = power * *this;
  return power.IsAllOnes();
}

BoolMatrix BoolMatrix::Padded(std::size_t n) const {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m.Set(i, j, (*this)(i, j));
  }
  return m;
}

BoolMatrix BoolMatrix::Restricted(const std::vector<Symbol>& keep) const {
  BoolMatrix m(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      m.Set(i, j, (*this)(keep[i], keep[j]));
    }
  }
  return m;
}

std::vector<std::vector<int>> BoolMatrix::Rows() const {
  std::vector<std::vector<int>> rows(n_, std::vector<int>(n_, 0));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j) ? 1 : 0;
  }
  return rows;
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t m = 0; m < a.n_; ++m) {
      if (!a(i, m)) continue;
      for (std::size_t j = 0; j < a.n_; ++j) {
        if (b(m, j)) c.Set(i, j, true);
      }
    }
  }
  return c;
}

VertexTsft::VertexTsft(std::vector<BoolMatrix> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a vertex tree-shift needs at least one direction");
  }
  if (matrices_.size() > kMaxArity) {
    throw Error(ErrorCode::kInvalidArgument,
                "arity above " + std::to_string(kMaxArity) + " is unsupported");
  }
  n_ = matrices_.front().size();
  for (const BoolMatrix& m : matrices_) {
    if (m.size() != n_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "adjacency matrices differ in size; use VertexTsft::Padded");
    }
  }
  native_sizes_.assign(matrices_.size(), n_);
}

VertexTsft VertexTsft::Padded(std::vector<BoolMatrix> matrices) {
  std::size_t n = 0;
  std::vector<std::size_t> native;
  for (const BoolMatrix& m : matrices) {
    n = std::max(n, m.size());
    native.push_back(m.size());
  }
  for (BoolMatrix& m : matrices) {
    if (m.size() != n) m = m.Padded(n);
  }
  VertexTsft out(std::move(matrices));
  out.native_sizes_ = std::move(native);
  return out;
}

bool VertexTsft::size_mismatch() const noexcept {
  return std::any_of(native_sizes_.begin(), native_sizes_.end(),
                     [&](std::size_t s) { return s != n_; });
}

std::vector<Symbol> VertexTsft::Successors(Symbol from, Direction k) const {
  std::vector<Symbol> out;
  for (std::size_t j = 0; j < n_; ++j) {
    if (matrices_[k](from, j)) out.push_back(static_cast<Symbol>(j));
  }
  return out;
}

namespace {

Restriction Restrict(const VertexTsft& tsft, const std::vector<bool>& alive) {
  Restriction r;
  for (std::size_t v = 0; v < tsft.size(); ++v) {
    (alive[v] ? r.kept : r.removed).push_back(static_cast<Symbol>(v));
  }
  if (r.kept.empty()) return r;
  std::vector<BoolMatrix> ms;
  for (const BoolMatrix& m : tsft.matrices()) ms.push_back(m.Restricted(r.kept));
  r.tsft = VertexTsft(std::move(ms));
  return r;
}

Restriction Prune(const VertexTsft& tsft, bool require_incoming) {
  const std::size_t n = tsft.size();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      bool keep = true;
      for (const BoolMatrix& m : tsft.matrices()) {
        bool out = false;
        for (std::size_t u = 0; u < n && !out; ++u) out = alive[u] && m(v, u);
        if (!out) {
          keep = false;
          break;
        }
      }
      if (keep && require_incoming) {
        bool in = false;
        for (const BoolMatrix& m : tsft.matrices()) {
          for (std::size_t u = 0; u < n && !in; ++u) in = alive[u] && m(u, v);
        }
        keep = in;
      }
      if (!keep) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  return Restrict(tsft, alive);
}

}  // namespace

Restriction Essentialize(const VertexTsft& tsft) { return Prune(tsft, true); }

Restriction LiveCore(const VertexTsft& tsft) { return Prune(tsft, false); }

CountMatrix WordMatrix(const VertexTsft& tsft, const Word& x) {
  const std::size_t n = tsft.size();
  CountMatrix acc(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) acc[i][i] = 1;
  for (Direction k : x.letters()) {
    if (k >= tsft.arity()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "word " + x.ToString() + " uses a direction >= arity");
    }
    const BoolMatrix& a = tsft.matrix(k);
    CountMatrix next(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < n; ++m) {
        if (acc[i][m] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (a(m, j)) next[i][j] += acc[i][m];
        }
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<bool> StepSet(const VertexTsft& tsft, const std::vector<bool>& from,
                          Direction k) {
  std::vector<bool> out(tsft.size(), false);
  const BoolMatrix& a = tsft.matrix(k);
  for (std::size_t r = 0; r < tsft.size(); ++r) {
    if (!from[r]) continue;
    for (std::size_t m = 0; m < tsft.size(); ++m) {
      if (a(r, m)) out[m] = true;
    }
  }
  return out;
}

std::vector<LabeledEdge> LabeledGraph(const VertexTsft& tsft) {
  std::vector<LabeledEdge> edges;
  for (std::size_t i = 0; i < tsft.size(); ++i) {
    for (std::size_t j = 0; j < tsft.size(); ++j) {
      for (unsigned k = 0; k < tsft.arity(); ++k) {
        if (tsft.matrix(static_cast<Direction>(k))(i, j)) {
          edges.push_back({static_cast<Symbol>(i), static_cast<Symbol>(j),
                           static_cast<Direction>(k)});
        }
      }
    }
  }
  return edges;
}

std::size_t SymbolicMatrix::WordCount() const {
  std::size_t total = 0;
  for (const Entry& e : entries_) total += e.size();
  return total;
}

SymbolicMatrix operator+(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  SymbolicMatrix c = a;
  for (std::size_t i = 0; i < c.entries_.size(); ++i) {
    c.entries_[i].insert(b.entries_[i].begin(), b.entries_[i].end());
  }
  return c;
}

SymbolicMatrix SymbolicAdjacency(const VertexTsft& tsft) {
  SymbolicMatrix s(tsft.size());
  for (const LabeledEdge& e : LabeledGraph(tsft)) {
    s.at(e.source, e.target).insert(Word({e.label}));
  }
  return s;
}

SymbolicMatrix Multiply(const SymbolicMatrix& a, const SymbolicMatrix& b,
                        std::size_t word_budget) {
  const std::size_t n = a.size();
  SymbolicMatrix c(n);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& out = c.at(i, j);
      for (std::size_t m = 0; m < n; ++m) {
        for (const Word& u : a.at(i, m)) {
          for (const Word& v : b.at(m, j)) out.insert(u + v);
        }
      }
      total += out.size();
      if (total > word_budget) {
        throw Error(ErrorCode::kLimitExceeded,
                    "symbolic product exceeds the word budget of " +
                        std::to_string(word_budget));
      }
    }
  }
  return c;
}

SymbolicMatrix SymbolicPower(const SymbolicMatrix& s, unsigned k,
                             std::size_t word_budget) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "symbolic power needs k >= 1");
  }
  SymbolicMatrix acc = s;
  for (unsigned p = 1; p < k; ++p) acc = Multiply(acc, s, word_budget);
  return acc;
}

SymbolicMatrix SymbolicPowerSum(const SymbolicMatrix& s, unsigned k,
                                std::size_t word_budget) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "symbolic power needs k >= 1");
  }
  SymbolicMatrix power = s;
  SymbolicMatrix sum = s;
  for (unsigned p = 1; p < k; ++p) {
    power = Multiply(power, s, word_budget);
    sum = sum + power;
  }
  return sum;
}

std::optional<CompletePrefixSet> EntryContainsCps(
    const SymbolicMatrix::Entry& entry, unsigned arity) {
  std::size_t max_len = 0;
  for (const Word& w : entry) max_len = std::max(max_len, w.size());
  return ExtractCps([&](const Word& w) { return entry.count(w) > 0; }, arity,
                    max_len);
}

}  // namespace tsft
