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

#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "tsft/dynamics.hpp"
#include "tsft/error.hpp"

using namespace tsft;
using namespace tsft::testing;

namespace {

Block One(Symbol s, unsigned d = 2) { return Block(d, 1, {s}); }

// Every node of length < depth is labeled consistently with the shift.
bool PatternAllowed(const Pattern& p, const VertexTsft& t) {
  for (const auto& [x, s] : p.labels()) {
    if (x.empty()) continue;
    const Word parent = x.Prefix(x.size() - 1);
    const Direction k = x.letters().back();
    if (!t.Edge(*p.Get(parent), k, s)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("periodic tree on the one-symbol full shift has P = {0,1}") {
  const auto t = FullShift(1);
  const auto cert = BuildPeriodicTree(t, One(0));
  CHECK(cert.period == Cps({"0", "1"}));
  CHECK(VerifyPeriodic(cert, t, 8).ok);
}

TEST_CASE("periodic tree for Ex49 rooted at 0") {
  const auto t = Ex49();
  const auto cert = BuildPeriodicTree(t, One(0));
  CHECK(cert.period == Cps({"0", "10", "11"}));
  const auto check = VerifyPeriodic(cert, t, 6);
  CHECK_MESSAGE(check.ok, check.reason);
  CHECK(VerifyPeriodic(cert, t, cert.DefaultVerifyDepth()).ok);
  // sigma_x t = t at sampled deep nodes.
  for (const char* x : {"0", "10", "11"}) {
    for (const Word& y : AllWords(2, 4)) {
      CHECK(cert.LabelAt(Word::Parse(x) + y) == cert.LabelAt(y));
    }
  }
  const auto cert1 = BuildPeriodicTree(t, One(1));
  CHECK(VerifyPeriodic(cert1, t, 6).ok);
}

TEST_CASE("periodic tree from a 2-block of Ex413 and every 1-block of Ex43") {
  const auto t = Ex413();
  const Block u = Block::Parse("2(0,3)", 2);
  REQUIRE(BlockIsAllowed(u, t));
  const auto cert = BuildPeriodicTree(t, u);
  const auto check = VerifyPeriodic(cert, t, 7);
  CHECK_MESSAGE(check.ok, check.reason);
  for (const Word& w : AllWords(2, 1)) CHECK(cert.LabelAt(w) == u.at(w));

  for (Symbol s : {0u, 1u}) {
    const auto c = BuildPeriodicTree(Ex43(), One(s));
    CHECK(VerifyPeriodic(c, Ex43(), 6).ok);
  }
}

TEST_CASE("corrupted periodic certificates are rejected at a node") {
  const auto t = Ex49();
  auto cert = BuildPeriodicTree(t, One(0));
  // Flip a seed label below P.
  Pattern bad(2);
  for (const auto& [x, s] : cert.seed.labels()) {
    bad.Set(x, x == Word::Parse("0") ? 1 - s : s);
  }
  cert.seed = bad;
  const auto check = VerifyPeriodic(cert, t, 6);
  CHECK_FALSE(check.ok);
  REQUIRE(check.node.has_value());
  CHECK_FALSE(check.reason.empty());

  // Wrong period: P = {0,1} is not an invariance set of this tree.
  auto cert2 = BuildPeriodicTree(t, One(0));
  cert2.period = Cps({"0", "1"});
  CHECK_FALSE(VerifyPeriodic(cert2, t, 6).ok);
}

TEST_CASE("periodic and orbit construction refuse non-irreducible shifts") {
  const auto t = IdentityPair();
  try {
    BuildPeriodicTree(t, One(0));
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRefused);
  }
  CHECK_THROWS_AS(BuildDenseOrbitPrefix(t, {One(0), One(1)}), Error);
  CHECK_THROWS_AS(BuildPeriodicTree(Ex49(), One(5)), Error);
}

TEST_CASE("periodic trees on random irreducible shifts verify") {
  std::mt19937 rng(7);
  int built = 0;
  for (int i = 0; i < 300 && built < 40; ++i) {
    const auto t = RandomTsft(rng, 3, 2, 60);
    const auto irr = DecideIrreducible(t);
    if (irr.verdict != Verdict::kYes || !irr.tree_realizable) continue;
    const auto cert = BuildPeriodicTree(t, One(irr.alphabet.front()));
    const auto check = VerifyPeriodic(cert, t, 6);
    CHECK_MESSAGE(check.ok, check.reason);
    ++built;
  }
  CHECK(built > 5);
}

TEST_CASE("dense-orbit prefix contains every target") {
  {
    const auto t = Ex49();
    const std::vector<Block> targets{One(0), One(1)};
    const auto orbit = BuildDenseOrbitPrefix(t, targets);
    CHECK(PatternAllowed(orbit.pattern, t));
    REQUIRE(orbit.positions.size() == 2);
    CHECK(orbit.positions[1].size() <= 3);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      CHECK(orbit.pattern.ContainsBlockAt(targets[i], orbit.positions[i]));
    }
  }
  {
    const auto t = Ex413();
    std::vector<Block> targets;
    for (Symbol s = 0; s < 4; ++s) targets.push_back(One(s));
    const auto orbit = BuildDenseOrbitPrefix(t, targets);
    CHECK(PatternAllowed(orbit.pattern, t));
    for (std::size_t i = 0; i < targets.size(); ++i) {
      CHECK(orbit.pattern.ContainsBlockAt(targets[i], orbit.positions[i]));
      CHECK(orbit.positions[i].size() <= 4);
    }
    // 2-blocks as targets too.
    std::vector<Block> two{Block::Parse("0(0,1)", 2), Block::Parse("2(1,3)", 2),
                           Block::Parse("3(3,0)", 2)};
    const auto orbit2 = BuildDenseOrbitPrefix(t, two);
    CHECK(PatternAllowed(orbit2.pattern, t));
    for (std::size_t i = 0; i < two.size(); ++i) {
      CHECK(orbit2.pattern.ContainsBlockAt(two[i], orbit2.positions[i]));
    }
  }
  CHECK_THROWS_AS(BuildDenseOrbitPrefix(Ex413(), {}), Error);
}

TEST_CASE("entropy of Ex413 is ln 2 with |B_m| = 2^(2^m)") {
  const auto est = EstimateEntropy(Ex413(), 12);
  REQUIRE(est.rows.size() == 12);
  CHECK_FALSE(est.degenerate);
  for (const auto& row : est.rows) {
    REQUIRE(row.count.has_value());
    BigInt expected = 1;
    mpz_mul_2exp(expected.get_mpz_t(), expected.get_mpz_t(),
                 std::size_t{1} << row.m);
    CHECK(*row.count == expected);
    if (row.m >= 2) {
      REQUIRE(row.h.has_value());
      const double want = std::log(2.0) + std::log(std::log(2.0)) / row.m;
      CHECK(std::abs(*row.h - want) < 1e-6);
    }
  }
  CHECK(est.limit == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("entropy of the full 2-shift and degenerate shifts") {
  const auto est = EstimateEntropy(FullShift(2), 10);
  for (const auto& row : est.rows) {
    BigInt expected = 1;
    mpz_mul_2exp(expected.get_mpz_t(), expected.get_mpz_t(),
                 (std::size_t{1} << row.m) - 1);
    CHECK(*row.count == expected);
  }
  CHECK(est.limit == doctest::Approx(std::log(2.0)).epsilon(0.01));

  const auto one = EstimateEntropy(FullShift(1), 6);
  CHECK(one.degenerate);
  CHECK(one.limit == 0);
  for (const auto& row : one.rows) CHECK_FALSE(row.h.has_value());

  CHECK_THROWS_AS(EstimateEntropy(Make({{{0}}, {{0}}}), 3), Error);
  CHECK_THROWS_AS(EstimateEntropy(Ex413(), 0), Error);
}

TEST_CASE("entropy counts match block enumeration and are monotone") {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto t = RandomTsft(rng, 3, 2, 60);
    if (LiveCore(t).tsft.empty()) {
      CHECK_THROWS_AS(EstimateEntropy(t, 4), Error);
      continue;
    }
    const auto est = EstimateEntropy(t, 6);
    const auto core = LiveCore(t).tsft;
    for (const auto& row : est.rows) {
      CHECK(*row.count == EnumerateBlocks(core, row.m).total);
    }
    for (std::size_t m = 1; m < est.rows.size(); ++m) {
      CHECK(*est.rows[m].count >= *est.rows[m - 1].count);
    }
  }
}

TEST_CASE("log-space entropy agrees with exact counts") {
  for (const auto& t : {Ex413(), Ex49(), Ex43(), FullShift(3)}) {
    const auto exact = EstimateEntropy(t, 14);
    const auto logs = EstimateEntropy(t, 14, 2);
    REQUIRE(logs.log_space_from.has_value());
    CHECK_FALSE(exact.log_space_from.has_value());
    for (std::size_t i = 0; i < exact.rows.size(); ++i) {
      const double a = exact.rows[i].log_count;
      const double b = logs.rows[i].log_count;
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("chaos reports name the basis") {
  const auto mixing = AnalyzeChaos(Ex43());
  CHECK(mixing.chaotic);
  CHECK(mixing.basis == ChaosBasis::kMixing);
  CHECK(std::string(ChaosBasisName(mixing.basis)) == "mixing");
  REQUIRE(mixing.periodic_check.has_value());
  CHECK(mixing.periodic_check->ok);
  REQUIRE(mixing.orbit.has_value());
  CHECK(mixing.sensitivity_applies);
  CHECK(mixing.sensitivity_constant == 0.5);

  const auto irr = AnalyzeChaos(Ex49());
  CHECK(irr.chaotic);
  CHECK(irr.basis == ChaosBasis::kIrreducible);
  CHECK(irr.mixing.verdict == Verdict::kNo);

  const auto none = AnalyzeChaos(IdentityPair());
  CHECK_FALSE(none.chaotic);
  CHECK(none.basis == ChaosBasis::kNone);
  CHECK_FALSE(none.periodic.has_value());

  const auto single = AnalyzeChaos(FullShift(1));
  CHECK_FALSE(single.chaotic);
  CHECK_FALSE(single.sensitivity_applies);

  const auto gap = AnalyzeChaos(MatrixCriterionGap());
  CHECK_FALSE(gap.chaotic);
}
