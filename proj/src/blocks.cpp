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

#include "tsft/blocks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include "tsft/error.hpp"

namespace tsft {

std::size_t NodeIndex(const Word& x, unsigned arity) {
  std::size_t idx = 0;
  for (Direction k : x.letters()) idx = idx * arity + 1 + k;
  return idx;
}

std::size_t NodeCount(unsigned arity, std::size_t height) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (std::size_t l = 0; l < height; ++l) {
    total += level;
    level *= arity;
  }
  return total;
}

namespace {

// src[i] = index in a block of the node at position i of a sub-block of
// height h rooted at `root_index`.
std::vector<std::size_t> SubIndices(std::size_t root_index, unsigned arity,
                                    std::size_t h) {
  std::vector<std::size_t> src(NodeCount(arity, h));
  if (src.empty()) return src;
  src[0] = root_index;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (unsigned k = 0; k < arity; ++k) {
      std::size_t c = i * arity + 1 + k;
      if (c < src.size()) src[c] = src[i] * arity + 1 + k;
    }
  }
  return src;
}

// Block of height h+1 with the given root and children of height h.
Block Assemble(Symbol root, const std::vector<const Block*>& children) {
  const unsigned d = static_cast<unsigned>(children.size());
  const std::size_t h = children.front()->height();
  std::vector<Symbol> labels(NodeCount(d, h + 1));
  labels[0] = root;
  for (unsigned k = 0; k < d; ++k) {
    std::vector<std::size_t> dst = SubIndices(1 + k, d, h);
    const auto& src = children[k]->labels();
    for (std::size_t j = 0; j < dst.size(); ++j) labels[dst[j]] = src[j];
  }
  return Block(d, h + 1, std::move(labels));
}

// Cartesian product over directions of per-direction candidate lists.
template <typename Fn>
void ForEachChoice(const std::vector<const std::vector<Block>*>& options,
                   Fn&& fn) {
  const std::size_t d = options.size();
  for (const auto* o : options) {
    if (o->empty()) return;
  }
  std::vector<std::size_t> pick(d, 0);
  std::vector<const Block*> chosen(d);
  while (true) {
    for (std::size_t k = 0; k < d; ++k) chosen[k] = &(*options[k])[pick[k]];
    fn(chosen);
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++pick[k] < options[k]->size()) break;
      pick[k] = 0;
      if (k == 0) return;
    }
  }
}

class TreeTextParser {
 public:
  TreeTextParser(std::string_view text, unsigned arity)
      : text_(text), arity_(arity) {}

  Pattern Run() {
    Pattern p(arity_);
    Node(Word(), p);
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    return p;
  }

 private:
  void Node(const Word& at, Pattern& p) {
    SkipSpace();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      Fail("expected a symbol");
    }
    unsigned long value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (value > 0xFFFFFFFFul) Fail("symbol out of range");
      ++pos_;
    }
    p.Set(at, static_cast<Symbol>(value));
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != '(') return;
    ++pos_;
    for (unsigned k = 0; k < arity_; ++k) {
      if (k > 0) Expect(',');
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] == '-') {
        ++pos_;
        continue;
      }
      Node(at.Child(static_cast<Direction>(k)), p);
    }
    Expect(')');
  }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      Fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError(what + " in tree '" + std::string(text_) + "'", 0,
                     static_cast<int>(pos_) + 1);
  }

  std::string_view text_;
  unsigned arity_;
  std::size_t pos_ = 0;
};

}  // namespace

Block::Block(unsigned arity, std::size_t height, std::vector<Symbol> labels)
    : arity_(arity), height_(height), labels_(std::move(labels)) {
  if (arity == 0 || arity > kMaxArity) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported arity");
  }
  if (height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "a block has height >= 1");
  }
  if (labels_.size() != NodeCount(arity, height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "block of height " + std::to_string(height) + " needs " +
                    std::to_string(NodeCount(arity, height)) + " labels");
  }
}

Block Block::Constant(unsigned arity, std::size_t height, Symbol s) {
  return Block(arity, height, std::vector<Symbol>(NodeCount(arity, height), s));
}

Block Block::Parse(std::string_view text, unsigned arity) {
  Pattern p = TreeTextParser(text, arity).Run();
  const std::size_t height = p.depth() + 1;
  if (p.size() != NodeCount(arity, height)) {
    throw ParseError("'" + std::string(text) +
                         "' is not a block: leaves must all be at depth " +
                         std::to_string(height - 1),
                     0, 0);
  }
  std::vector<Symbol> labels(p.size());
  for (const auto& [x, s] : p.labels()) labels[NodeIndex(x, arity)] = s;
  return Block(arity, height, std::move(labels));
}

Symbol Block::at(const Word& x) const {
  if (x.size() >= height_) {
    throw Error(ErrorCode::kInvalidArgument,
                "node " + x.ToString() + " outside block of height " +
                    std::to_string(height_));
  }
  return labels_[NodeIndex(x, arity_)];
}

Symbol Block::MaxLabel() const {
  return *std::max_element(labels_.begin(), labels_.end());
}

Block Block::Child(Direction k) const {
  return SubBlock(Word({k}), height_ - 1);
}

Block Block::SubBlock(const Word& x, std::size_t h) const {
  if (h == 0 || x.size() + h > height_) {
    throw Error(ErrorCode::kInvalidArgument,
                "sub-block of height " + std::to_string(h) + " at '" +
                    x.ToString() + "' does not fit in height " +
                    std::to_string(height_));
  }
  std::vector<std::size_t> src = SubIndices(NodeIndex(x, arity_), arity_, h);
  std::vector<Symbol> labels(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) labels[i] = labels_[src[i]];
  return Block(arity_, h, std::move(labels));
}

std::vector<Symbol> Block::PreorderLabels() const {
  std::vector<Symbol> out;
  out.reserve(labels_.size());
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t idx,
                                                           std::size_t depth) {
    out.push_back(labels_[idx]);
    if (depth + 1 >= height_) return;
    for (unsigned k = 0; k < arity_; ++k) walk(idx * arity_ + 1 + k, depth + 1);
  };
  walk(0, 0);
  return out;
}

std::strong_ordering operator<=>(const Block& a, const Block& b) {
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  if (auto c = a.height_ <=> b.height_; c != 0) return c;
  return a.PreorderLabels() <=> b.PreorderLabels();
}

std::string Block::ToString() const {
  return Pattern::FromBlock(*this).ToString();
}

Pattern Pattern::FromBlock(const Block& block) {
  Pattern p(block.arity());
  p.Place(Word(), block);
  return p;
}

Pattern Pattern::Parse(std::string_view text, unsigned arity) {
  return TreeTextParser(text, arity).Run();
}

std::optional<Symbol> Pattern::Get(const Word& x) const {
  auto it = labels_.find(x);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

void Pattern::Set(const Word& x, Symbol s) {
  if (!x.empty() && !Contains(x.Prefix(x.size() - 1))) {
    throw Error(ErrorCode::kInvalidArgument,
                "pattern node " + x.ToString() + " has no parent");
  }
  if (x.MinArity() > arity_) {
    throw Error(ErrorCode::kInvalidArgument,
                "pattern node " + x.ToString() + " exceeds the arity");
  }
  labels_[x] = s;
}

void Pattern::Place(const Word& x, const Block& block) {
  if (!x.empty() && !Contains(x.Prefix(x.size() - 1)) && !Contains(x)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot place a block below missing node " + x.ToString());
  }
  std::function<void(const Word&, std::size_t)> walk = [&](const Word& y,
                                                            std::size_t idx) {
    Word at = x + y;
    Symbol s = block.labels()[idx];
    auto existing = Get(at);
    if (existing && *existing != s) {
      throw Error(ErrorCode::kInvalidArgument,
                  "block placement disagrees with label at " + at.ToString());
    }
    labels_[at] = s;
    if (y.size() + 1 >= block.height()) return;
    for (unsigned k = 0; k < arity_; ++k) {
      walk(y.Child(static_cast<Direction>(k)), idx * arity_ + 1 + k);
    }
  };
  walk(Word(), 0);
}

std::size_t Pattern::depth() const {
  std::size_t m = 0;
  for (const auto& [x, s] : labels_) m = std::max(m, x.size());
  return m;
}

std::vector<Word> Pattern::Leaves() const {
  std::vector<Word> out;
  for (const auto& [x, s] : labels_) {
    bool leaf = true;
    for (unsigned k = 0; k < arity_ && leaf; ++k) {
      leaf = !Contains(x.Child(static_cast<Direction>(k)));
    }
    if (leaf) out.push_back(x);
  }
  return out;
}

bool Pattern::IsPrefixClosed() const {
  for (const auto& [x, s] : labels_) {
    if (!x.empty() && !Contains(x.Prefix(x.size() - 1))) return false;
  }
  return true;
}

bool Pattern::IsFull() const {
  for (const auto& [x, s] : labels_) {
    unsigned present = 0;
    for (unsigned k = 0; k < arity_; ++k) {
      present += Contains(x.Child(static_cast<Direction>(k))) ? 1 : 0;
    }
    if (present != 0 && present != arity_) return false;
  }
  return true;
}

bool Pattern::ContainsBlockAt(const Block& block, const Word& x) const {
  std::function<bool(const Word&, std::size_t)> walk = [&](const Word& y,
                                                           std::size_t idx) {
    auto s = Get(x + y);
    if (!s || *s != block.labels()[idx]) return false;
    if (y.size() + 1 >= block.height()) return true;
    for (unsigned k = 0; k < arity_; ++k) {
      if (!walk(y.Child(static_cast<Direction>(k)), idx * arity_ + 1 + k)) {
        return false;
      }
    }
    return true;
  };
  return walk(Word(), 0);
}

std::optional<Word> Pattern::FindBlock(const Block& block) const {
  for (const auto& [x, s] : labels_) {
    if (s == block.root() && ContainsBlockAt(block, x)) return x;
  }
  return std::nullopt;
}

std::string Pattern::ToString() const {
  std::string out;
  std::function<void(const Word&)> walk = [&](const Word& x) {
    out += std::to_string(labels_.at(x));
    bool any = false;
    for (unsigned k = 0; k < arity_; ++k) {
      any = any || Contains(x.Child(static_cast<Direction>(k)));
    }
    if (!any) return;
    out.push_back('(');
    for (unsigned k = 0; k < arity_; ++k) {
      if (k) out.push_back(',');
      Word c = x.Child(static_cast<Direction>(k));
      if (Contains(c)) {
        walk(c);
      } else {
        out.push_back('-');
      }
    }
    out.push_back(')');
  };
  if (!labels_.empty()) walk(Word());
  return out;
}

ForbiddenTsft::ForbiddenTsft(std::size_t alphabet_size, unsigned arity,
                             std::vector<Block> forbidden,
                             std::size_t padding_cap)
    : alphabet_size_(alphabet_size), arity_(arity) {
  if (alphabet_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "alphabet must be nonempty");
  }
  if (arity == 0 || arity > kMaxArity) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported arity");
  }
  for (const Block& b : forbidden) {
    if (b.arity() != arity) {
      throw Error(ErrorCode::kInvalidArgument,
                  "forbidden block " + b.ToString() + " has the wrong arity");
    }
    if (b.MaxLabel() >= alphabet_size) {
      throw Error(ErrorCode::kInvalidArgument,
                  "forbidden block " + b.ToString() +
                      " uses a symbol outside the alphabet");
    }
    height_ = std::max(height_, b.height());
  }
  // Pad every block to the common height by enumerating its extensions.
  for (const Block& b : forbidden) {
    if (b.height() == height_) {
      forbidden_.push_back(b);
      continue;
    }
    const std::size_t total = NodeCount(arity, height_);
    const std::size_t fixed = b.labels().size();
    double extensions =
        std::pow(static_cast<double>(alphabet_size),
                 static_cast<double>(total - fixed));
    if (extensions + static_cast<double>(forbidden_.size()) >
        static_cast<double>(padding_cap)) {
      throw Error(ErrorCode::kLimitExceeded,
                  "padding forbidden blocks to a common height exceeds cap");
    }
    // Nodes of a shorter block keep their heap indices in the taller one.
    std::vector<Symbol> labels(total, 0);
    std::copy(b.labels().begin(), b.labels().end(), labels.begin());
    while (true) {
      forbidden_.emplace_back(arity, height_, labels);
      std::size_t i = fixed;
      while (i < total && ++labels[i] == alphabet_size) labels[i++] = 0;
      if (i == total) break;
    }
  }
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()),
                   forbidden_.end());
}

bool ForbiddenTsft::IsForbidden(const Block& window) const {
  return std::binary_search(forbidden_.begin(), forbidden_.end(), window);
}

bool BlockIsAllowed(const Block& block, const ForbiddenTsft& tsft) {
  if (block.arity() != tsft.arity()) {
    throw Error(ErrorCode::kInvalidArgument, "block arity does not match");
  }
  if (block.MaxLabel() >= tsft.alphabet_size()) return false;
  const std::size_t h = tsft.forbidden_height();
  if (h == 0) return true;
  if (block.height() < h) {
    throw Error(ErrorCode::kHeightMismatch,
                "block of height " + std::to_string(block.height()) +
                    " is shorter than the forbidden height " +
                    std::to_string(h));
  }
  for (std::size_t depth = 0; depth + h <= block.height(); ++depth) {
    for (const Word& x : AllWords(block.arity(), depth)) {
      if (tsft.IsForbidden(block.SubBlock(x, h))) return false;
    }
  }
  return true;
}

bool BlockIsAllowed(const Block& block, const VertexTsft& tsft) {
  if (block.arity() != tsft.arity()) return false;
  if (block.MaxLabel() >= tsft.size()) return false;
  const unsigned d = block.arity();
  const std::size_t interior = NodeCount(d, block.height() - 1);
  for (std::size_t i = 0; i < interior; ++i) {
    for (unsigned k = 0; k < d; ++k) {
      if (!tsft.Edge(block.labels()[i], static_cast<Direction>(k),
                     block.labels()[i * d + 1 + k])) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Block> LocallyAllowedBlocks(const ForbiddenTsft& tsft,
                                        std::size_t height, std::size_t cap) {
  if (height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "block height must be >= 1");
  }
  const unsigned d = tsft.arity();
  const std::size_t q = tsft.alphabet_size();
  const std::size_t fh = tsft.forbidden_height();
  // by_root[a] = allowed blocks of the current height with root a.
  std::vector<std::vector<Block>> by_root(q);
  for (Symbol a = 0; a < q; ++a) {
    Block b = Block::Constant(d, 1, a);
    if (!(fh == 1 && tsft.IsForbidden(b))) by_root[a].push_back(std::move(b));
  }
  std::vector<Block> level;
  for (std::size_t h = 2; h <= height; ++h) {
    level.clear();
    for (const auto& v : by_root) level.insert(level.end(), v.begin(), v.end());
    std::vector<std::vector<Block>> next(q);
    std::size_t produced = 0;
    std::vector<const std::vector<Block>*> options(d, &level);
    for (Symbol a = 0; a < q; ++a) {
      if (by_root[a].empty()) continue;
      double combos = std::pow(static_cast<double>(level.size()), d);
      if (combos > static_cast<double>(cap) * 16) {
        throw Error(ErrorCode::kLimitExceeded,
                    "block enumeration exceeds cap at height " +
                        std::to_string(h));
      }
      ForEachChoice(options, [&](const std::vector<const Block*>& kids) {
        Block b = Assemble(a, kids);
        if (fh != 0 && h >= fh && tsft.IsForbidden(b.Truncated(fh))) return;
        // Windows rooted below the root lie inside the children.
        if (++produced > cap) {
          throw Error(ErrorCode::kLimitExceeded,
                      "more than " + std::to_string(cap) + " allowed blocks");
        }
        next[a].push_back(std::move(b));
      });
    }
    by_root = std::move(next);
  }
  std::vector<Block> out;
  for (auto& v : by_root) {
    std::move(v.begin(), v.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end());
  return out;
}

BlockCounts EnumerateBlocks(const VertexTsft& tsft, std::size_t height,
                            std::size_t list_cap) {
  if (height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "block height must be >= 1");
  }
  const std::size_t n = tsft.size();
  const unsigned d = tsft.arity();
  BlockCounts out;
  out.per_root.assign(n, 1);
  for (std::size_t m = 2; m <= height; ++m) {
    std::vector<BigInt> next(n);
    for (std::size_t a = 0; a < n; ++a) {
      BigInt prod = 1;
      for (unsigned k = 0; k < d; ++k) {
        BigInt sum = 0;
        for (std::size_t b = 0; b < n; ++b) {
          if (tsft.Edge(static_cast<Symbol>(a), static_cast<Direction>(k),
                        static_cast<Symbol>(b))) {
            sum += out.per_root[b];
          }
        }
        prod *= sum;
      }
      next[a] = prod;
    }
    out.per_root = std::move(next);
  }
  out.total = 0;
  for (const BigInt& c : out.per_root) out.total += c;

  if (list_cap == 0) return out;
  if (out.total > list_cap) {
    out.listing_refused = true;
    return out;
  }
  std::vector<std::vector<Block>> by_root(n);
  for (Symbol a = 0; a < n; ++a) by_root[a].push_back(Block::Constant(d, 1, a));
  for (std::size_t m = 2; m <= height; ++m) {
    std::vector<std::vector<Block>> next(n);
    for (Symbol a = 0; a < n; ++a) {
      std::vector<std::vector<Block>> per_dir(d);
      for (unsigned k = 0; k < d; ++k) {
        for (Symbol b : tsft.Successors(a, static_cast<Direction>(k))) {
          per_dir[k].insert(per_dir[k].end(), by_root[b].begin(),
                            by_root[b].end());
        }
      }
      std::vector<const std::vector<Block>*> options;
      for (const auto& v : per_dir) options.push_back(&v);
      ForEachChoice(options, [&](const std::vector<const Block*>& kids) {
        next[a].push_back(Assemble(a, kids));
      });
    }
    by_root = std::move(next);
  }
  std::vector<Block> all;
  for (auto& v : by_root) std::move(v.begin(), v.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end());
  out.blocks = std::move(all);
  return out;
}

namespace {

bool OverlapConsistent(const Block& parent, const Block& child, Direction k) {
  if (parent.height() == 1) return true;
  return child.Truncated(parent.height() - 1) == parent.Child(k);
}

}  // namespace

HigherBlockShift HigherBlockTsft(const ForbiddenTsft& tsft, std::size_t m,
                                 std::size_t cap) {
  if (m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "higher block height must be >= 1");
  }
  std::vector<Block> alphabet = LocallyAllowedBlocks(tsft, m, cap);
  if (alphabet.empty()) {
    throw Error(ErrorCode::kEmptyShift, "no allowed blocks of height " +
                                            std::to_string(m));
  }
  const unsigned d = tsft.arity();
  const std::size_t fh = tsft.forbidden_height();
  const std::size_t q = alphabet.size();
  double tuples = std::pow(static_cast<double>(q), d + 1);
  if (tuples > static_cast<double>(cap)) {
    throw Error(ErrorCode::kLimitExceeded,
                "higher block presentation has too many 2-blocks to list");
  }
  const bool check_assembled = fh != 0 && m + 1 == fh;
  std::vector<Block> forbidden;
  std::vector<Symbol> labels(1 + d, 0);
  while (true) {
    bool bad = false;
    for (unsigned k = 0; k < d && !bad; ++k) {
      bad = !OverlapConsistent(alphabet[labels[0]], alphabet[labels[1 + k]],
                               static_cast<Direction>(k));
    }
    if (!bad && check_assembled) {
      std::vector<const Block*> kids;
      for (unsigned k = 0; k < d; ++k) kids.push_back(&alphabet[labels[1 + k]]);
      bad = tsft.IsForbidden(Assemble(alphabet[labels[0]].root(), kids));
    }
    if (bad) forbidden.emplace_back(d, 2, labels);
    std::size_t i = 0;
    while (i < labels.size() && ++labels[i] == q) labels[i++] = 0;
    if (i == labels.size()) break;
  }
  return HigherBlockShift{std::move(alphabet),
                          ForbiddenTsft(q, d, std::move(forbidden)), m,
                          fh == 0 || m + 1 >= fh};
}

VertexPresentation ToVertexTsft(const ForbiddenTsft& tsft, std::size_t cap) {
  const std::size_t m = std::max<std::size_t>(tsft.forbidden_height(), 1);
  std::vector<Block> alphabet = LocallyAllowedBlocks(tsft, m, cap);
  if (alphabet.empty()) {
    throw Error(ErrorCode::kEmptyShift, "every block is forbidden");
  }
  const unsigned d = tsft.arity();
  const std::size_t q = alphabet.size();
  std::vector<BoolMatrix> ms(d, BoolMatrix(q));
  if (m == 1) {
    for (auto& a : ms) a = BoolMatrix::AllOnes(q);
  } else {
    std::map<Block, std::vector<Symbol>> by_top;
    for (Symbol b = 0; b < q; ++b) {
      by_top[alphabet[b].Truncated(m - 1)].push_back(b);
    }
    for (Symbol a = 0; a < q; ++a) {
      for (unsigned k = 0; k < d; ++k) {
        auto it = by_top.find(alphabet[a].Child(static_cast<Direction>(k)));
        if (it == by_top.end()) continue;
        for (Symbol b : it->second) ms[k].Set(a, b, true);
      }
    }
  }
  return VertexPresentation{VertexTsft(std::move(ms)), std::move(alphabet), m};
}

Block HigherBlockImage(const Block& t, std::size_t m,
                       const std::vector<Block>& alphabet) {
  if (m == 0 || t.height() < m) {
    throw Error(ErrorCode::kInvalidArgument,
                "block too short for the higher block code");
  }
  std::map<Block, Symbol> index;
  for (Symbol i = 0; i < alphabet.size(); ++i) index.emplace(alphabet[i], i);
  const std::size_t h = t.height() - m + 1;
  const unsigned d = t.arity();
  std::vector<Symbol> labels(NodeCount(d, h));
  for (std::size_t depth = 0; depth < h; ++depth) {
    for (const Word& x : AllWords(d, depth)) {
      auto it = index.find(t.SubBlock(x, m));
      if (it == index.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "m-block at " + x.ToString() + " is not in the alphabet");
      }
      labels[NodeIndex(x, d)] = it->second;
    }
  }
  return Block(d, h, std::move(labels));
}

Block ProjectRoots(const Block& image, const std::vector<Block>& alphabet) {
  std::vector<Symbol> labels;
  labels.reserve(image.labels().size());
  for (Symbol s : image.labels()) labels.push_back(alphabet.at(s).root());
  return Block(image.arity(), image.height(), std::move(labels));
}

Block InverseHigherBlock(const Block& image,
                         const std::vector<Block>& alphabet) {
  const std::size_t m = alphabet.at(0).height();
  const std::size_t h = image.height() + m - 1;
  const unsigned d = image.arity();
  std::vector<Symbol> labels(NodeCount(d, h));
  for (std::size_t depth = 0; depth < h; ++depth) {
    for (const Word& y : AllWords(d, depth)) {
      std::size_t cut = std::min(y.size(), image.height() - 1);
      const Block& local = alphabet.at(image.at(y.Prefix(cut)));
      labels[NodeIndex(y, d)] = local.at(y.Suffix(cut));
    }
  }
  return Block(d, h, std::move(labels));
}

double TreeDistance::value() const {
  if (!disagreement_depth) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(*disagreement_depth));
}

TreeDistance Distance(const Block& a, const Block& b) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorCode::kInvalidArgument, "blocks differ in arity");
  }
  const std::size_t h = std::min(a.height(), b.height());
  const unsigned d = a.arity();
  std::size_t idx = 0;
  std::size_t level = 1;
  // Heap order visits nodes by nondecreasing length.
  for (std::size_t depth = 0; depth < h; ++depth) {
    for (std::size_t i = 0; i < level; ++i, ++idx) {
      if (a.labels()[idx] != b.labels()[idx]) return TreeDistance{depth};
    }
    level *= d;
  }
  return TreeDistance{};
}

}  // namespace tsft
