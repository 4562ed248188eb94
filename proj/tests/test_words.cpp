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

#include <random>
#include <set>

#include "doctest.h"
#include "tsft/error.hpp"
#include "tsft/words.hpp"

using namespace tsft;

namespace {

std::vector<Word> W(std::initializer_list<const char*> list) {
  std::vector<Word> out;
  for (const char* s : list) out.push_back(Word::Parse(s));
  return out;
}

// Oracle: every CPS of depth <= depth as a leaf list, built from the
// recursive shape definition (leaf, or a node with d sub-shapes).
std::vector<std::vector<Word>> AllCps(unsigned d, std::size_t depth,
                                      const Word& at = Word()) {
  std::vector<std::vector<Word>> out{{at}};
  if (depth == 0) return out;
  std::vector<std::vector<Word>> partial{{}};
  for (unsigned k = 0; k < d; ++k) {
    auto subs = AllCps(d, depth - 1, at.Child(static_cast<Direction>(k)));
    std::vector<std::vector<Word>> next;
    for (const auto& p : partial) {
      for (const auto& s : subs) {
        auto q = p;
        q.insert(q.end(), s.begin(), s.end());
        next.push_back(std::move(q));
      }
    }
    partial = std::move(next);
  }
  out.insert(out.end(), partial.begin(), partial.end());
  return out;
}

// Oracle for completeness: every word of length max|x| has a prefix in P.
bool CompleteByEnumeration(const std::vector<Word>& p, unsigned d) {
  if (p.empty() || !IsPrefixSet(p)) return false;
  std::size_t len = 0;
  for (const Word& w : p) len = std::max(len, w.size());
  for (const Word& x : AllWords(d, len)) {
    bool covered = false;
    for (const Word& w : p) covered = covered || w.IsPrefixOf(x);
    if (!covered) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("word basics") {
  const Word w = Word::Parse("010");
  CHECK(w.size() == 3);
  CHECK(w.ToString() == "010");
  CHECK(Word::Parse("").empty());
  CHECK(w.Prefix(2) == Word::Parse("01"));
  CHECK(w.Suffix(1) == Word::Parse("10"));
  CHECK(Word::Parse("01") + Word::Parse("1") == Word::Parse("011"));
  CHECK(Word() + w == w);
  CHECK(Word::Parse("0").IsProperPrefixOf(w));
  CHECK_FALSE(w.IsProperPrefixOf(w));
  CHECK(Word() < Word::Parse("0"));
  CHECK(Word::Parse("0") < Word::Parse("00"));
  CHECK(Word::Parse("01") < Word::Parse("1"));
  CHECK(w.MinArity() == 2);
  CHECK_THROWS_AS(Word::Parse("0a"), ParseError);
}

TEST_CASE("concatenation is associative with epsilon as identity") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto rand_word = [&] {
      std::vector<Direction> v(rng() % 5);
      for (auto& k : v) k = static_cast<Direction>(rng() % 3);
      return Word(v);
    };
    Word a = rand_word(), b = rand_word(), c = rand_word();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + Word() == a);
  }
}

TEST_CASE("prefix sets") {
  CHECK(IsPrefixSet(W({"0", "10", "11"})));
  CHECK(IsPrefixSet(W({""})));
  CHECK_FALSE(IsPrefixSet(W({"0", "01"})));
  CHECK_FALSE(IsPrefixSet(W({"", "1"})));
}

TEST_CASE("complete prefix sets") {
  CHECK(IsCompletePrefixSet(W({"0", "10", "11"}), 2));
  CHECK(IsCompletePrefixSet(W({"00", "01", "10", "11"}), 2));
  CHECK_FALSE(IsCompletePrefixSet(W({"0", "11"}), 2));
  CHECK(IsCompletePrefixSet(W({""}), 2));
  CHECK_FALSE(IsCompletePrefixSet(std::vector<Word>{}, 2));
  CHECK_FALSE(IsCompletePrefixSet(W({"0", "1", "2"}), 2));
  CHECK(IsCompletePrefixSet(W({"0", "1", "2"}), 3));
}

TEST_CASE("completeness agrees with enumeration of Sigma^|P|") {
  // Every subset of words of length <= 3 over d = 2 with at most 5 elements.
  std::vector<Word> universe;
  for (std::size_t l = 0; l <= 3; ++l) {
    for (const Word& w : AllWords(2, l)) universe.push_back(w);
  }
  std::mt19937 rng(11);
  for (int t = 0; t < 5000; ++t) {
    std::vector<Word> p;
    const std::size_t size = 1 + rng() % 5;
    for (std::size_t i = 0; i < size; ++i) {
      p.push_back(universe[rng() % universe.size()]);
    }
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    CHECK(IsCompletePrefixSet(p, 2) == CompleteByEnumeration(p, 2));
  }
  for (const auto& p : AllCps(2, 4)) {
    CHECK(IsCompletePrefixSet(p, 2));
    CHECK(CompleteByEnumeration(p, 2));
  }
  CHECK(AllCps(2, 4).size() == 677);
}

TEST_CASE("d = 1: nonempty prefix sets are singletons and complete") {
  for (std::size_t k = 0; k < 6; ++k) {
    const std::vector<Word> p{AllWords(1, k)};
    CHECK(IsCompletePrefixSet(p, 1));
  }
  CHECK_FALSE(IsPrefixSet(W({"0", "00"})));
}

TEST_CASE("CompletePrefixSet value type") {
  auto p = CompletePrefixSet::FromWords(W({"11", "0", "10", "0"}), 2);
  CHECK(p.size() == 3);
  CHECK(p.ToString() == "{0,10,11}");
  CHECK(p.length() == 2);
  CHECK_FALSE(p.uniform());
  auto r = p.RefineToDepth(2);
  CHECK(r.uniform());
  CHECK(r.words() == W({"00", "01", "10", "11"}));
  CHECK(p.Prefixed(Word::Parse("1")) == W({"10", "110", "111"}));
  CHECK_THROWS_AS(CompletePrefixSet::FromWords(W({"0"}), 2), Error);
}

TEST_CASE("extract_cps examples") {
  auto good = [](const Word& x) {
    bool zero = false;
    for (Direction k : x.letters()) zero = zero || k == 0;
    return zero || x == Word::Parse("11");
  };
  auto p = ExtractCps(good, 2, 2);
  REQUIRE(p);
  CHECK(p->words() == W({"0", "10", "11"}));

  auto all = ExtractCps([](const Word&) { return true; }, 2, 5);
  REQUIRE(all);
  CHECK(all->words() == W({""}));
  CHECK_FALSE(ExtractCps([](const Word&) { return false; }, 2, 5));
}

TEST_CASE("frontier law against exhaustive frontier enumeration") {
  // A set of words contains a CPS of length <= L iff the cover recursion
  // succeeds; checked on random word sets, d = 2, L <= 4.
  for (std::size_t L = 0; L <= 4; ++L) {
    const auto shapes = AllCps(2, L);
    std::vector<Word> universe;
    for (std::size_t l = 0; l <= L; ++l) {
      for (const Word& w : AllWords(2, l)) universe.push_back(w);
    }
    std::mt19937 rng(100 + static_cast<unsigned>(L));
    for (int t = 0; t < 300; ++t) {
      const unsigned density = 30 + rng() % 60;
      std::set<Word> good;
      for (const Word& w : universe) {
        if (rng() % 100 < density) good.insert(w);
      }
      auto pred = [&](const Word& x) { return good.count(x) > 0; };
      bool exists = false;
      for (const auto& shape : shapes) {
        bool ok = true;
        for (const Word& w : shape) ok = ok && good.count(w);
        exists = exists || ok;
      }
      auto p = ExtractCps(pred, 2, L);
      CHECK(p.has_value() == exists);
      if (p) {
        CHECK(IsCompletePrefixSet(p->words(), 2));
        CHECK(p->length() <= L);
        for (const Word& w : p->words()) {
          CHECK(good.count(w));
          // Shallow-first: no proper prefix was good.
          for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK_FALSE(good.count(w.Prefix(i)));
          }
        }
      }
    }
  }
}

TEST_CASE("word list text form") {
  auto words = ParseWordList("{11, 0,10}");
  CHECK(FormatWordList(words) == "0,10,11");
  CHECK(ParseWordList("eps") == W({""}));
  CHECK(ParseWordList("{}").empty());
}
