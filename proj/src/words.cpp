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

#include "tsft/words.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "tsft/error.hpp"

namespace tsft {

Word Word::Parse(std::string_view digits) {
  std::vector<Direction> letters;
  letters.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    char c = digits[i];
    if (c < '0' || c > '9') {
      throw ParseError("expected a direction digit in word '" +
                           std::string(digits) + "'",
                       0, static_cast<int>(i) + 1);
    }
    letters.push_back(static_cast<Direction>(c - '0'));
  }
  return Word(std::move(letters));
}

Word Word::Child(Direction k) const {
  std::vector<Direction> letters = letters_;
  letters.push_back(k);
  return Word(std::move(letters));
}

Word Word::Prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return Word(std::vector<Direction>(letters_.begin(), letters_.begin() + n));
}

Word Word::Suffix(std::size_t from) const {
  from = std::min(from, letters_.size());
  return Word(std::vector<Direction>(letters_.begin() + from, letters_.end()));
}

bool Word::IsPrefixOf(const Word& other) const noexcept {
  return size() <= other.size() &&
         std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

unsigned Word::MinArity() const noexcept {
  unsigned m = 0;
  for (Direction k : letters_) m = std::max(m, static_cast<unsigned>(k) + 1);
  return m;
}

std::string Word::ToString() const {
  std::string s;
  s.reserve(letters_.size());
  for (Direction k : letters_) s.push_back(static_cast<char>('0' + k));
  return s;
}

Word operator+(const Word& a, const Word& b) {
  std::vector<Direction> letters = a.letters_;
  letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(letters));
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull ^ w.size();
  for (Direction k : w.letters()) h = (h ^ k) * 1099511628211ull;
  return h;
}

std::vector<Word> AllWords(unsigned arity, std::size_t length) {
  std::vector<Word> out{Word()};
  for (std::size_t l = 0; l < length; ++l) {
    std::vector<Word> next;
    next.reserve(out.size() * arity);
    for (const Word& w : out) {
      for (unsigned k = 0; k < arity; ++k) {
        next.push_back(w.Child(static_cast<Direction>(k)));
      }
    }
    out = std::move(next);
  }
  return out;
}

bool IsPrefixSet(std::span<const Word> words) {
  std::vector<Word> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  // In lexicographic order a word's extensions follow it directly, so only
  // neighbours need to be compared.
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].IsPrefixOf(sorted[i])) return false;
  }
  return true;
}

namespace {

// Prefix trie used to check completeness in O(total length).
struct TrieNode {
  bool terminal = false;
  std::map<Direction, std::unique_ptr<TrieNode>> children;
};

bool TrieIsFull(const TrieNode& node, unsigned arity) {
  if (node.terminal) return node.children.empty();
  if (node.children.size() != arity) return false;
  for (const auto& [k, child] : node.children) {
    if (k >= arity || !TrieIsFull(*child, arity)) return false;
  }
  return true;
}

}  // namespace

bool IsCompletePrefixSet(std::span<const Word> words, unsigned arity) {
  if (words.empty() || arity == 0) return false;
  TrieNode root;
  for (const Word& w : words) {
    TrieNode* node = &root;
    for (Direction k : w.letters()) {
      if (k >= arity) return false;
      auto& slot = node->children[k];
      if (!slot) slot = std::make_unique<TrieNode>();
      node = slot.get();
    }
    node->terminal = true;
  }
  // A terminal node with children means one word prefixes another.
  return TrieIsFull(root, arity);
}

CompletePrefixSet CompletePrefixSet::FromWords(std::vector<Word> words,
                                               unsigned arity) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  if (!IsCompletePrefixSet(words, arity)) {
    throw Error(ErrorCode::kInvalidArgument,
                "{" + FormatWordList(words) + "} is not a complete prefix set "
                "for arity " + std::to_string(arity));
  }
  return CompletePrefixSet(std::move(words), arity);
}

std::size_t CompletePrefixSet::length() const noexcept {
  std::size_t m = 0;
  for (const Word& w : words_) m = std::max(m, w.size());
  return m;
}

bool CompletePrefixSet::uniform() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [&](const Word& w) {
    return w.size() == words_.front().size();
  });
}

CompletePrefixSet CompletePrefixSet::RefineToDepth(std::size_t depth) const {
  if (depth < length()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot refine a CPS of length " + std::to_string(length()) +
                    " to depth " + std::to_string(depth));
  }
  std::vector<Word> out;
  for (const Word& w : words_) {
    for (const Word& tail : AllWords(arity_, depth - w.size())) {
      out.push_back(w + tail);
    }
  }
  std::sort(out.begin(), out.end());
  return CompletePrefixSet(std::move(out), arity_);
}

std::vector<Word> CompletePrefixSet::Prefixed(const Word& prefix) const {
  std::vector<Word> out;
  out.reserve(words_.size());
  for (const Word& w : words_) out.push_back(prefix + w);
  return out;
}

std::string CompletePrefixSet::ToString() const {
  return "{" + FormatWordList(words_) + "}";
}

namespace {

bool Cover(const WordPredicate& good, unsigned arity, std::size_t max_len,
           const Word& x, std::vector<Word>& frontier) {
  if (good(x)) {
    frontier.push_back(x);
    return true;
  }
  if (x.size() >= max_len) return false;
  std::size_t mark = frontier.size();
  for (unsigned k = 0; k < arity; ++k) {
    if (!Cover(good, arity, max_len, x.Child(static_cast<Direction>(k)),
               frontier)) {
      frontier.resize(mark);
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<CompletePrefixSet> ExtractCps(const WordPredicate& good,
                                            unsigned arity,
                                            std::size_t max_len) {
  if (arity == 0) return std::nullopt;
  std::vector<Word> frontier;
  if (!Cover(good, arity, max_len, Word(), frontier)) return std::nullopt;
  return CompletePrefixSet::FromWords(std::move(frontier), arity);
}

std::string FormatWordList(std::span<const Word> words) {
  std::vector<std::string> parts;
  parts.reserve(words.size());
  for (const Word& w : words) parts.push_back(w.ToString());
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(',');
    out += parts[i];
  }
  return out;
}

std::vector<Word> ParseWordList(std::string_view text) {
  std::vector<Word> out;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '{')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '}')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view token = trim(text.substr(start, comma - start));
    if (token == "eps" || token == "\xCE\xB5") token = {};
    out.push_back(Word::Parse(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace tsft
