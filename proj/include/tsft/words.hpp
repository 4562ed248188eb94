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

// Words over the direction alphabet {0, ..., d-1}, prefix sets and complete
// prefix sets (CPS). A CPS is the leaf set of a finite d-ary tree in which
// every internal node has all d children; it is the shape every decision in
// this library is certified with.

#ifndef TSFT_WORDS_HPP_
#define TSFT_WORDS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsft {

using Direction = std::uint8_t;

// Directions serialize as single decimal digits.
inline constexpr unsigned kMaxArity = 10;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Direction> letters) : letters_(std::move(letters)) {}

  // "010" -> 0,1,0; "" -> epsilon. Throws ParseError on non-digits.
  static Word Parse(std::string_view digits);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Direction operator[](std::size_t i) const { return letters_[i]; }
  Direction back() const { return letters_.back(); }
  std::span<const Direction> letters() const noexcept { return letters_; }

  Word Child(Direction k) const;
  Word Prefix(std::size_t n) const;
  Word Suffix(std::size_t from) const;
  bool IsPrefixOf(const Word& other) const noexcept;
  bool IsProperPrefixOf(const Word& other) const noexcept {
    return size() < other.size() && IsPrefixOf(other);
  }
  // Largest letter + 1, or 0 for epsilon.
  unsigned MinArity() const noexcept;

  std::string ToString() const;

  friend Word operator+(const Word& a, const Word& b);
  // Lexicographic with a proper prefix first: "" < "0" < "00" < "01" < "1".
  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Direction> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Sigma^length in lexicographic order.
std::vector<Word> AllWords(unsigned arity, std::size_t length);

// Antichain check under the prefix order. {eps} is a prefix set; eps together
// with anything else is not.
bool IsPrefixSet(std::span<const Word> words);

// Prefix set whose words cover every word of length max|x|. Empty input is
// never complete.
bool IsCompletePrefixSet(std::span<const Word> words, unsigned arity);

class CompletePrefixSet {
 public:
  // Validates, sorts and deduplicates. Throws Error(kInvalidArgument).
  static CompletePrefixSet FromWords(std::vector<Word> words, unsigned arity);

  const std::vector<Word>& words() const noexcept { return words_; }
  unsigned arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return words_.size(); }
  // |P|: the length of the longest word.
  std::size_t length() const noexcept;
  bool uniform() const noexcept;

  // Replaces each word by all of its extensions to `depth` (>= length()).
  CompletePrefixSet RefineToDepth(std::size_t depth) const;

  // The CPS obtained by prefixing every word with `prefix` is not complete on
  // its own; this helper exists for building unions of the form w*P_w.
  std::vector<Word> Prefixed(const Word& prefix) const;

  std::string ToString() const;

  friend bool operator==(const CompletePrefixSet&,
                         const CompletePrefixSet&) = default;

 private:
  CompletePrefixSet(std::vector<Word> words, unsigned arity)
      : words_(std::move(words)), arity_(arity) {}

  std::vector<Word> words_;
  unsigned arity_ = 2;
};

using WordPredicate = std::function<bool(const Word&)>;

// Shallow-first search for a CPS all of whose words satisfy `good`, with
// |P| <= max_len:
//   cover(x) = good(x) || (cover(x0) && ... && cover(x(d-1)))
// A node accepted by good() is never expanded, so the result has minimal
// depth along every branch.
std::optional<CompletePrefixSet> ExtractCps(const WordPredicate& good,
                                            unsigned arity,
                                            std::size_t max_len);

// Sorted, comma separated ("0,10,11"); epsilon is the empty string, so {eps}
// and {} both print as "" -- callers that care use the JSON form.
std::string FormatWordList(std::span<const Word> words);
std::vector<Word> ParseWordList(std::string_view text);

}  // namespace tsft

#endif  // TSFT_WORDS_HPP_
