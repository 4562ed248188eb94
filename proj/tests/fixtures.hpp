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

// Shared instances and generators for the test binaries.

#ifndef TSFT_TESTS_FIXTURES_HPP_
#define TSFT_TESTS_FIXTURES_HPP_

#include <initializer_list>
#include <random>
#include <vector>

#include "tsft/graph.hpp"
#include "tsft/words.hpp"

namespace tsft::testing {

inline VertexTsft Make(std::initializer_list<std::vector<std::vector<int>>> ms) {
  std::vector<BoolMatrix> out;
  for (const auto& m : ms) out.push_back(BoolMatrix::FromRows(m));
  return VertexTsft(std::move(out));
}

// Mixing, two distinct matrices.
inline VertexTsft Ex43() { return Make({{{1, 1}, {1, 1}}, {{1, 1}, {1, 0}}}); }
// Irreducible, labeled graph of two vertices.
inline VertexTsft Ex49() { return Make({{{1, 1}, {1, 0}}, {{0, 1}, {1, 1}}}); }
// Even-sum shift over its 2-blocks.
inline VertexTsft Ex413() {
  return Make({{{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}},
               {{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 0, 0}}});
}
inline VertexTsft IdentityPair() {
  return Make({{{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}});
}
inline VertexTsft FullShift(std::size_t n, unsigned d = 2) {
  return VertexTsft(std::vector<BoolMatrix>(d, BoolMatrix::AllOnes(n)));
}

// Alive core {0, 1, 3} passes the per-word matrix criterion for (0, 3) while
// every tree rooted at 0 has a branch avoiding 3.
inline VertexTsft MatrixCriterionGap() {
  return Make({{{1, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {1, 1, 0, 0}},
               {{0, 1, 0, 1}, {1, 1, 0, 0}, {0, 0, 0, 0}, {1, 1, 0, 1}}});
}

inline std::vector<Word> Words(std::initializer_list<const char*> list) {
  std::vector<Word> out;
  for (const char* s : list) out.push_back(Word::Parse(s));
  return out;
}

inline CompletePrefixSet Cps(std::initializer_list<const char*> list,
                             unsigned d = 2) {
  return CompletePrefixSet::FromWords(Words(list), d);
}

inline BoolMatrix RandomMatrix(std::mt19937& rng, std::size_t n,
                               unsigned density_pct) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.Set(i, j, rng() % 100 < density_pct);
  }
  return m;
}

inline VertexTsft RandomTsft(std::mt19937& rng, std::size_t n, unsigned d,
                             unsigned density_pct) {
  std::vector<BoolMatrix> ms;
  for (unsigned k = 0; k < d; ++k) ms.push_back(RandomMatrix(rng, n, density_pct));
  return VertexTsft(std::move(ms));
}

inline bool IsEssential(const VertexTsft& t) {
  for (std::size_t v = 0; v < t.size(); ++v) {
    bool incoming = false;
    for (unsigned k = 0; k < t.arity(); ++k) {
      if (t.matrix(static_cast<Direction>(k)).RowEmpty(v)) return false;
      incoming = incoming || !t.matrix(static_cast<Direction>(k)).ColumnEmpty(v);
    }
    if (!incoming) return false;
  }
  return t.size() > 0;
}

// Every d-tuple of n x n 0-1 matrices, enumerated by a counter.
inline VertexTsft TsftFromCode(std::uint64_t code, std::size_t n, unsigned d) {
  std::vector<BoolMatrix> ms;
  for (unsigned k = 0; k < d; ++k) {
    BoolMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m.Set(i, j, code & 1);
        code >>= 1;
      }
    }
    ms.push_back(m);
  }
  return VertexTsft(std::move(ms));
}

}  // namespace tsft::testing

#endif  // TSFT_TESTS_FIXTURES_HPP_
