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

// Vertex tree-shifts: a tree t over {0..n-1} belongs to the shift iff
// A_k(t_x, t_xk) = 1 for every node x and direction k. The labeled-graph view
// merges the d graphs and labels each edge with its direction; the symbolic
// adjacency matrix collects those labels as sets of words.

#ifndef TSFT_GRAPH_HPP_
#define TSFT_GRAPH_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "tsft/words.hpp"

namespace tsft {

using Symbol = std::uint32_t;
using BigInt = mpz_class;

// Square 0-1 matrix, row = source, column = target.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  static BoolMatrix Identity(std::size_t n);
  static BoolMatrix AllOnes(std::size_t n);
  // Throws Error(kInvalidArgument) unless rows are square and 0/1.
  static BoolMatrix FromRows(const std::vector<std::vector<int>>& rows);

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const {
    return cells_[i * n_ + j] != 0;
  }
  void Set(std::size_t i, std::size_t j, bool v) { cells_[i * n_ + j] = v; }

  bool RowEmpty(std::size_t i) const;
  bool ColumnEmpty(std::size_t j) const;
  bool IsAllOnes() const;
  // Classical notions, used by the commuting shortcut and the d = 1 tests.
  bool IsIrreducible() const;
  bool IsPrimitive() const;

  // Copy enlarged to n x n with zero padding.
  BoolMatrix Padded(std::size_t n) const;
  BoolMatrix Restricted(const std::vector<Symbol>& keep) const;

  std::vector<std::vector<int>> Rows() const;

  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
};

class VertexTsft {
 public:
  VertexTsft() = default;
  // All matrices must already share one size; see Padded() otherwise.
  explicit VertexTsft(std::vector<BoolMatrix> matrices);

  // Pads smaller matrices with zero rows/columns up to the largest size and
  // remembers the original sizes so the size-mismatch rule can fire.
  static VertexTsft Padded(std::vector<BoolMatrix> matrices);

  std::size_t size() const noexcept { return n_; }
  unsigned arity() const noexcept {
    return static_cast<unsigned>(matrices_.size());
  }
  const BoolMatrix& matrix(Direction k) const { return matrices_[k]; }
  const std::vector<BoolMatrix>& matrices() const noexcept { return matrices_; }
  const std::vector<std::size_t>& native_sizes() const noexcept {
    return native_sizes_;
  }
  bool size_mismatch() const noexcept;
  bool empty() const noexcept { return n_ == 0; }

  bool Edge(Symbol from, Direction k, Symbol to) const {
    return matrices_[k](from, to);
  }
  std::vector<Symbol> Successors(Symbol from, Direction k) const;

  friend bool operator==(const VertexTsft&, const VertexTsft&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<BoolMatrix> matrices_;
  std::vector<std::size_t> native_sizes_;
};

struct Restriction {
  VertexTsft tsft;
  std::vector<Symbol> kept;     // kept[new index] = original symbol
  std::vector<Symbol> removed;  // original symbols, ascending
};

// Repeatedly removes vertices lacking an outgoing edge in some direction or
// lacking any incoming edge, until the graph is essential (possibly empty).
Restriction Essentialize(const VertexTsft& tsft);

// Removes only vertices that cannot label any infinite tree (no successor in
// some direction, iterated). The result's alphabet is exactly B_1(X).
Restriction LiveCore(const VertexTsft& tsft);

using CountMatrix = std::vector<std::vector<BigInt>>;

// A_x(i, j) = number of labeled paths from i to j reading x_1 ... x_l, i.e.
// A_{x_1} A_{x_2} ... A_{x_l}. A_eps is the identity.
CountMatrix WordMatrix(const VertexTsft& tsft, const Word& x);

// Reachable-set transition used by the deciders: {m : A_k(r, m) = 1, r in R}.
std::vector<bool> StepSet(const VertexTsft& tsft, const std::vector<bool>& from,
                          Direction k);

struct LabeledEdge {
  Symbol source;
  Symbol target;
  Direction label;
  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

// Edges sorted by (source, target, label).
std::vector<LabeledEdge> LabeledGraph(const VertexTsft& tsft);

// Matrix over the idempotent semiring of finite word languages: sum is union,
// product is pairwise concatenation. Multiplicities are not tracked.
class SymbolicMatrix {
 public:
  using Entry = std::set<Word>;

  SymbolicMatrix() = default;
  explicit SymbolicMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Entry& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Entry& at(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::size_t WordCount() const;

  friend SymbolicMatrix operator+(const SymbolicMatrix& a,
                                  const SymbolicMatrix& b);
  friend bool operator==(const SymbolicMatrix&, const SymbolicMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Entry> entries_;
};

inline constexpr std::size_t kDefaultWordBudget = 1u << 22;

// S(i, j) = { k : A_k(i, j) = 1 }.
SymbolicMatrix SymbolicAdjacency(const VertexTsft& tsft);

// Throws Error(kLimitExceeded) once an intermediate product would hold more
// than `word_budget` words in total.
SymbolicMatrix Multiply(const SymbolicMatrix& a, const SymbolicMatrix& b,
                        std::size_t word_budget = kDefaultWordBudget);
SymbolicMatrix SymbolicPower(const SymbolicMatrix& s, unsigned k,
                             std::size_t word_budget = kDefaultWordBudget);
// S + S^2 + ... + S^k.
SymbolicMatrix SymbolicPowerSum(const SymbolicMatrix& s, unsigned k,
                                std::size_t word_budget = kDefaultWordBudget);

// A CPS made of words of `entry`, if one exists.
std::optional<CompletePrefixSet> EntryContainsCps(
    const SymbolicMatrix::Entry& entry, unsigned arity);

}  // namespace tsft

#endif  // TSFT_GRAPH_HPP_
