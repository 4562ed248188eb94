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

// Irreducibility and mixing of vertex tree-shifts.
//
// Both deciders run a least fixpoint over a finite powerset-style automaton
// read along words:
//
//   irreducible, pair (i, j):  states R subset of symbols, R -k-> {m : A_k(r,m)},
//                              start {i}, good iff j in R;
//   mixing:                    states B = [A_x > 0], B -k-> B*A_k,
//                              start I, good iff B is all ones.
//
// C is the least set containing the good states and every state all of whose
// successors are in C. The criterion holds iff every successor of the start
// state lies in C (the empty word is never part of a witness). Unwinding the
// fixpoint shallow-first yields a complete prefix set of good words; failing
// pairs yield a zero-cycle, i.e. a word returning to an earlier state while
// never reaching j.
//
// The matrix criterion only asks that each word of the CPS individually has
// A_x(i, j) > 0. Whether one tree realizes all of them at once is a separate,
// stronger question; reports carry that check as well (see TreeConnectivity).

#ifndef TSFT_DECIDERS_HPP_
#define TSFT_DECIDERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsft/blocks.hpp"
#include "tsft/graph.hpp"
#include "tsft/words.hpp"

namespace tsft {

enum class Verdict { kYes, kNo, kEmptyShift };

const char* VerdictName(Verdict v);

struct DecideOptions {
  std::size_t max_states = 1u << 20;
  // Achievable-type closure for the tree-level mixing check; nullopt result
  // once exceeded.
  std::size_t tree_type_cap = 256;
};

struct ZeroCycleWitness {
  Symbol from = 0;
  Symbol to = 0;
  Word word;
  // V_word equals the state after the first loop_start letters.
  std::size_t loop_start = 1;
  // trace[p] = V of the prefix of length p + 1.
  std::vector<std::vector<Symbol>> trace;

  // V_w = V_{w_1} and w_k = w_1.
  bool cycle_form() const {
    return loop_start == 1 && !word.empty() && word.back() == word[0];
  }
};

// Refutes a connecting tree for (from, to): from is in `trap`, and every trap
// member a has a direction escape[a] whose successors all lie in trap \ {to},
// so every tree rooted at `from` has an infinite branch avoiding `to`.
struct TrapWitness {
  Symbol from = 0;
  Symbol to = 0;
  std::vector<Symbol> trap;
  std::vector<Direction> escape;  // parallel to trap
};

struct PairWitness {
  Symbol from = 0;
  Symbol to = 0;
  std::optional<CompletePrefixSet> cps;
  std::optional<ZeroCycleWitness> cycle;
};

struct IrreducibilityReport {
  Verdict verdict = Verdict::kNo;
  std::string reason;
  std::vector<Symbol> alphabet;  // live symbols, original numbering
  std::vector<Symbol> removed;   // symbols that label no infinite tree
  bool size_mismatch = false;
  std::vector<PairWitness> pairs;  // row-major over alphabet
  std::optional<ZeroCycleWitness> counterexample;
  std::uint64_t depth_bound = 0;  // n 2^(n-1)
  std::size_t max_witness_length = 0;
  std::size_t states_explored = 0;
  // Exact connecting-tree check; traps list the pairs where it fails.
  bool tree_realizable = false;
  std::vector<TrapWitness> traps;
};

struct MixingReport {
  Verdict verdict = Verdict::kNo;
  std::string reason;
  std::vector<Symbol> alphabet;
  std::vector<Symbol> removed;
  bool size_mismatch = false;
  std::optional<CompletePrefixSet> witness;
  std::optional<std::size_t> uniform_depth;  // |P|; P refines to Sigma^k
  std::uint64_t depth_bound = 0;             // n^3 2^(2(n-1))
  std::size_t states_explored = 0;
  // One CPS and, for every pair, a tree realizing it. nullopt: cap hit.
  std::optional<bool> tree_mixing;
};

std::uint64_t IrreducibilityDepthBound(std::size_t n);
std::uint64_t MixingDepthBound(std::size_t n);

IrreducibilityReport DecideIrreducible(const VertexTsft& tsft,
                                       const DecideOptions& options = {});
MixingReport DecideMixing(const VertexTsft& tsft,
                          const DecideOptions& options = {});

// Sufficient condition for n = d = 2: both matrices irreducible and
// commuting. Returns true or nullopt, never false.
std::optional<bool> Commuting2x2Shortcut(const VertexTsft& tsft);

// Works on the matrices as given (no trimming). nullopt: the pair satisfies
// the matrix criterion.
std::optional<ZeroCycleWitness> FindZeroCycle(
    const VertexTsft& tsft, Symbol from, Symbol to,
    std::size_t max_states = 1u << 20);

// Exact symbol-level fixpoint for connecting trees: rank[j][a] is the least
// depth of a finite tree rooted at a whose leaves form a CPS (words of length
// >= 1) all labeled j, or nullopt.
class TreeConnectivity {
 public:
  explicit TreeConnectivity(const VertexTsft& tsft);

  bool Connected(Symbol from, Symbol to) const {
    return rank_[to][from].has_value();
  }
  std::optional<std::size_t> Rank(Symbol from, Symbol to) const {
    return rank_[to][from];
  }
  bool AllConnected() const;
  // Root labeled `from`, leaves (a CPS) labeled `to`. Children labeled `to`
  // become leaves at once; otherwise the lowest-rank, then smallest, child.
  std::optional<Pattern> ConnectingTree(Symbol from, Symbol to) const;
  std::optional<TrapWitness> Trap(Symbol from, Symbol to) const;

 private:
  const VertexTsft* tsft_;
  std::vector<std::vector<std::optional<std::size_t>>> rank_;  // [to][from]
};

struct BruteForceResult {
  bool all_connected = true;
  std::size_t pairs_checked = 0;
  // First pair (u, v) with no connecting tree within the depth cap.
  std::optional<std::pair<Block, Block>> failure;
};

inline constexpr std::size_t kMaxOracleDepth = 24;

// Definition-level oracle at bounded depth: for every ordered pair of allowed
// blocks (u, v) of the given height, search explicitly for a finite tree with
// u at the root and v at every word of a CPS P, n <= |x| <= depth_cap. Symbols
// and blocks are those of the live core (original numbering). A true result is
// authoritative; false means "not within depth_cap". Throws kLimitExceeded
// when the block count exceeds block_cap or depth_cap > kMaxOracleDepth.
BruteForceResult BruteForceIrreducible(const VertexTsft& tsft,
                                       std::size_t height,
                                       std::size_t depth_cap,
                                       std::size_t block_cap = 4096);

// Validators. Each returns nullopt when the evidence checks out, otherwise a
// description of the first failing check.
std::optional<std::string> CheckPairCps(const VertexTsft& tsft, Symbol from,
                                        Symbol to, const CompletePrefixSet& p);
std::optional<std::string> CheckMixingCps(const VertexTsft& tsft,
                                          const CompletePrefixSet& p);
std::optional<std::string> CheckZeroCycle(const VertexTsft& tsft,
                                          const ZeroCycleWitness& w);
std::optional<std::string> CheckTrap(const VertexTsft& tsft,
                                     const TrapWitness& t);
// Root `from`, every edge allowed, leaves a CPS of words of length >= 1
// labeled `to`.
std::optional<std::string> CheckConnectingTree(const VertexTsft& tsft,
                                               Symbol from, Symbol to,
                                               const Pattern& tree);

}  // namespace tsft

#endif  // TSFT_DECIDERS_HPP_
