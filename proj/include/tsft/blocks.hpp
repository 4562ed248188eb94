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

#ifndef TSFT_BLOCKS_HPP_
#define TSFT_BLOCKS_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsft/graph.hpp"
#include "tsft/words.hpp"

namespace tsft {

// Heap index of node x in breadth-first order: eps -> 0, xk -> d*idx(x)+1+k.
std::size_t NodeIndex(const Word& x, unsigned arity);
// Number of nodes of Sigma_{height-1}.
std::size_t NodeCount(unsigned arity, std::size_t height);

// A labeling of every node of length < height. Text form is nested
// parentheses, "1(0(1,1),1(0,1))"; leaves carry no parentheses.
class Block {
 public:
  Block() = default;
  // `labels` in breadth-first (heap) order; size must be NodeCount().
  Block(unsigned arity, std::size_t height, std::vector<Symbol> labels);

  static Block Constant(unsigned arity, std::size_t height, Symbol s);
  // Throws ParseError; every leaf must sit at the same depth.
  static Block Parse(std::string_view text, unsigned arity);

  unsigned arity() const noexcept { return arity_; }
  std::size_t height() const noexcept { return height_; }
  const std::vector<Symbol>& labels() const noexcept { return labels_; }
  Symbol root() const { return labels_.front(); }
  Symbol at(const Word& x) const;
  Symbol MaxLabel() const;

  // sigma_k u, of height - 1.
  Block Child(Direction k) const;
  // The block of height h rooted at x; requires |x| + h <= height.
  Block SubBlock(const Word& x, std::size_t h) const;
  Block Truncated(std::size_t h) const { return SubBlock(Word(), h); }

  std::string ToString() const;

  friend bool operator==(const Block&, const Block&) = default;
  // Root label first, then labels in lexicographic node order (preorder).
  friend std::strong_ordering operator<=>(const Block& a, const Block& b);

 private:
  std::vector<Symbol> PreorderLabels() const;

  unsigned arity_ = 2;
  std::size_t height_ = 0;
  std::vector<Symbol> labels_;
};

// A labeling of a finite prefix-closed set of nodes. Absent children are
// written '-' in text form: "1(0,-)".
class Pattern {
 public:
  explicit Pattern(unsigned arity = 2) : arity_(arity) {}
  static Pattern FromBlock(const Block& block);
  static Pattern Parse(std::string_view text, unsigned arity);

  unsigned arity() const noexcept { return arity_; }
  const std::map<Word, Symbol>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool Contains(const Word& x) const { return labels_.count(x) > 0; }
  std::optional<Symbol> Get(const Word& x) const;

  // Adds or overwrites a node; its parent must already be present.
  void Set(const Word& x, Symbol s);
  // Writes `block` rooted at x. Existing labels must agree (throws otherwise).
  void Place(const Word& x, const Block& block);

  // Length of the longest node word.
  std::size_t depth() const;
  // Nodes with no child in the support, lexicographic order.
  std::vector<Word> Leaves() const;
  bool IsPrefixClosed() const;
  // True if every node has either no children or all `arity` children.
  bool IsFull() const;
  bool ContainsBlockAt(const Block& block, const Word& x) const;
  std::optional<Word> FindBlock(const Block& block) const;

  std::string ToString() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  unsigned arity_;
  std::map<Word, Symbol> labels_;
};

// A tree-shift of finite type given by forbidden blocks. Forbidden blocks of
// different heights are padded to the maximum height (every extension of a
// forbidden block is forbidden).
class ForbiddenTsft {
 public:
  ForbiddenTsft(std::size_t alphabet_size, unsigned arity,
                std::vector<Block> forbidden,
                std::size_t padding_cap = 1u << 20);

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  unsigned arity() const noexcept { return arity_; }
  // k + 1 for a k-height shift; 0 when nothing is forbidden.
  std::size_t forbidden_height() const noexcept { return height_; }
  const std::vector<Block>& forbidden() const noexcept { return forbidden_; }
  bool IsForbidden(const Block& window) const;

  friend bool operator==(const ForbiddenTsft&, const ForbiddenTsft&) = default;

 private:
  std::size_t alphabet_size_;
  unsigned arity_;
  std::size_t height_ = 0;
  std::vector<Block> forbidden_;  // sorted, unique
};

// True iff no forbidden block occurs rooted at any node of `block`. Throws
// Error(kHeightMismatch) when the block is shorter than the forbidden height.
bool BlockIsAllowed(const Block& block, const ForbiddenTsft& tsft);
// Every label in range and every parent/child pair an edge.
bool BlockIsAllowed(const Block& block, const VertexTsft& tsft);

// All blocks of the given height over the forbidden shift's alphabet that
// contain no forbidden window, in Block order. Throws kLimitExceeded past cap.
std::vector<Block> LocallyAllowedBlocks(const ForbiddenTsft& tsft,
                                        std::size_t height,
                                        std::size_t cap = 1u << 20);

struct BlockCounts {
  std::vector<BigInt> per_root;  // N_m(a)
  BigInt total;                  // |B_m|
  std::optional<std::vector<Block>> blocks;
  bool listing_refused = false;
};

// N_1(a) = 1, N_m(a) = prod_k sum_{b : A_k(a,b)} N_{m-1}(b). Counts blocks of
// the given vertex shift as presented; callers wanting B_m(X) pass the live
// core. An explicit list is produced when 0 < total <= list_cap.
BlockCounts EnumerateBlocks(const VertexTsft& tsft, std::size_t height,
                            std::size_t list_cap = 0);

struct HigherBlockShift {
  std::vector<Block> alphabet;  // symbol i of `shift` is alphabet[i]
  ForbiddenTsft shift;          // forbidden 2-blocks over the new alphabet
  std::size_t block_height;     // m
  bool markov;                  // false when m is below the forbidden height - 1
};

// X^[m]: alphabet = allowed m-blocks, forbidden = 2-blocks whose children do
// not overlap-consistently with the parent (plus, when m equals the forbidden
// height - 1, consistent 2-blocks whose assembled (m+1)-block is forbidden).
HigherBlockShift HigherBlockTsft(const ForbiddenTsft& tsft, std::size_t m,
                                 std::size_t cap = 1u << 21);

struct VertexPresentation {
  VertexTsft tsft;
  std::vector<Block> alphabet;  // vertex i is alphabet[i]
  std::size_t block_height;
};

// Vertex shift conjugate to `tsft`: vertices are the allowed blocks of the
// forbidden height and A_k(a, b) = 1 iff the top of b equals sigma_k a.
VertexPresentation ToVertexTsft(const ForbiddenTsft& tsft,
                                std::size_t cap = 1u << 20);

// phi_m on a finite block: the result has height height(t) - m + 1 and its
// label at x is the index in `alphabet` of the m-block of t rooted at x.
// Throws kInvalidArgument if some m-block is missing from the alphabet.
Block HigherBlockImage(const Block& t, std::size_t m,
                       const std::vector<Block>& alphabet);
// The one-block projection Psi(u) = u_eps applied node by node.
Block ProjectRoots(const Block& image, const std::vector<Block>& alphabet);
// Rebuilds the original block of height height(image) + m - 1.
Block InverseHigherBlock(const Block& image, const std::vector<Block>& alphabet);

struct TreeDistance {
  std::optional<std::size_t> disagreement_depth;  // none: equal
  double value() const;
};

// d(t, t') = 2^-n with n the minimal length of a disagreeing node.
TreeDistance Distance(const Block& a, const Block& b);

}  // namespace tsft

#endif  // TSFT_BLOCKS_HPP_
