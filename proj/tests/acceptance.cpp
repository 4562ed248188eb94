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

// Acceptance suite: one PASS/FAIL line per criterion, each under its time
// budget. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "tsft/deciders.hpp"
#include "tsft/dynamics.hpp"
#include "tsft/report.hpp"

using namespace tsft;
using namespace tsft::testing;

namespace {

// Collects the first few problems of a criterion.
class Tally {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    if (problems_ < 5) notes_ << (problems_ ? "; " : "") << what;
    ++problems_;
  }
  bool ok() const { return problems_ == 0; }
  std::string notes() const { return notes_.str(); }

 private:
  int problems_ = 0;
  std::ostringstream notes_;
};

int g_failed = 0;

void Run(int number, const char* title, double budget_s,
         const std::function<void(Tally&)>& body) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.Expect(false, std::string("exception: ") + e.what());
  }
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.Expect(s < budget_s, "over the " + std::to_string(budget_s) + " s budget");
  std::printf("criterion %d: %s  %s (%.3f s)%s%s\n", number, t.ok() ? "PASS" : "FAIL",
              title, s, t.ok() ? "" : "  ", t.notes().c_str());
  std::fflush(stdout);
  if (!t.ok()) ++g_failed;
}

using Entry = SymbolicMatrix::Entry;

Entry Set(std::initializer_list<const char*> words) {
  const auto v = Words(words);
  return Entry(v.begin(), v.end());
}

// Document whose mixing witness is replaced by `p`.
Json MixingDocWith(const VertexTsft& t, const CompletePrefixSet& p) {
  MixingReport r = DecideMixing(t);
  r.witness = p;
  r.uniform_depth = p.length();
  Json body;
  body["property"] = "mixing";
  body["mixing"] = ToJson(r);
  body["holds"] = r.verdict == Verdict::kYes;
  return MakeDocument("check", LoadedShift{t, std::nullopt, {}, {}}, body);
}

// Textbook irreducibility: every vertex reaches every vertex.
bool Reachable(const BoolMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (a(v, w) && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (bool b : seen) {
      if (!b) return false;
    }
  }
  return true;
}

// Some power A^k with k <= (n-1)^2 + 1 is positive.
bool Primitive(const BoolMatrix& a) {
  const std::size_t n = a.size();
  BoolMatrix p = a;
  for (std::size_t k = 1; k <= (n - 1) * (n - 1) + 1; ++k) {
    if (p.IsAllOnes()) return true;
    p = p * a;
  }
  return false;
}

}  // namespace

int main() {
  Run(1, "Ex43 mixing with the CPS {0,10,11}", 1.0, [](Tally& t) {
    const auto ex = Ex43();
    const auto m = DecideMixing(ex);
    t.Expect(m.verdict == Verdict::kYes, "mixing verdict is not yes");
    const auto expected = Cps({"0", "10", "11"});
    t.Expect(!CheckMixingCps(ex, expected), "{0,10,11} rejected by the validator");
    const auto v = VerifyReport(MixingDocWith(ex, expected));
    t.Expect(v.ok, "report verifier rejects {0,10,11}: " + v.failure);
  });

  Run(2, "Ex49 irreducible; four witnesses and S^2 exact", 1.0, [](Tally& t) {
    const auto ex = Ex49();
    const auto r = DecideIrreducible(ex);
    t.Expect(r.verdict == Verdict::kYes, "irreducibility verdict is not yes");
    const struct {
      Symbol i, j;
      std::initializer_list<const char*> words;
    } expected[] = {{0, 0, {"0", "10", "11"}},
                   {0, 1, {"0", "1"}},
                   {1, 0, {"0", "1"}},
                   {1, 1, {"00", "01", "1"}}};
    IrreducibilityReport swapped = r;
    for (const auto& w : expected) {
      const auto p = Cps(w.words);
      t.Expect(!CheckPairCps(ex, w.i, w.j, p),
               "witness for (" + std::to_string(w.i) + "," + std::to_string(w.j) +
                   ") rejected");
      for (auto& pw : swapped.pairs) {
        if (pw.from == w.i && pw.to == w.j) pw.cps = p;
      }
    }
    Json body;
    body["property"] = "irreducible";
    body["irreducibility"] = ToJson(swapped);
    body["holds"] = true;
    const auto v =
        VerifyReport(MakeDocument("check", LoadedShift{ex, std::nullopt, {}, {}}, body));
    t.Expect(v.ok, "report with the four witnesses rejected: " + v.failure);

    const auto s2 = SymbolicPower(SymbolicAdjacency(ex), 2);
    t.Expect(s2.at(0, 0) == Set({"00", "01", "10", "11"}), "S^2(0,0)");
    t.Expect(s2.at(0, 1) == Set({"00", "01", "11"}), "S^2(0,1)");
    t.Expect(s2.at(1, 0) == Set({"00", "10", "11"}), "S^2(1,0)");
    t.Expect(s2.at(1, 1) == Set({"00", "01", "10", "11"}), "S^2(1,1)");
  });

  Run(3, "Ex413 S^2 full and mixing at uniform depth 2", 1.0, [](Tally& t) {
    const auto ex = Ex413();
    const auto s2 = SymbolicPower(SymbolicAdjacency(ex), 2);
    for (Symbol i = 0; i < 4; ++i) {
      for (Symbol j = 0; j < 4; ++j) {
        t.Expect(s2.at(i, j) == Set({"00", "01", "10", "11"}),
                 "S^2(" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
    const auto m = DecideMixing(ex);
    t.Expect(m.verdict == Verdict::kYes, "mixing verdict is not yes");
    t.Expect(m.uniform_depth == std::optional<std::size_t>(2), "uniform depth is not 2");
    if (m.witness) t.Expect(!CheckMixingCps(ex, *m.witness), "witness rejected");
  });

  Run(4, "d=1 reduction on 200 seeded matrices, n <= 6", 10.0, [](Tally& t) {
    std::mt19937 rng(2026);
    int tested = 0;
    while (tested < 200) {
      const std::size_t n = 1 + rng() % 6;
      const BoolMatrix a = RandomMatrix(rng, n, 15 + rng() % 55);
      const VertexTsft x({a});
      if (!IsEssential(x)) continue;
      ++tested;
      t.Expect((DecideIrreducible(x).verdict == Verdict::kYes) == Reachable(a),
               "irreducibility disagrees with reachability");
      t.Expect((DecideMixing(x).verdict == Verdict::kYes) == Primitive(a),
               "mixing disagrees with primitivity");
    }
  });

  Run(5, "oracle agreement on all 2-symbol d=2 instances (D=8)", 60.0, [](Tally& t) {
    int essential = 0;
    for (std::uint64_t code = 0; code < 256; ++code) {
      const auto x = Essentialize(TsftFromCode(code, 2, 2)).tsft;
      if (x.empty()) continue;
      ++essential;
      const auto r = DecideIrreducible(x);
      const std::string tag = "code " + std::to_string(code);
      for (std::size_t h : {1u, 2u}) {
        const bool oracle = BruteForceIrreducible(x, h, 8).all_connected;
        if (r.verdict == Verdict::kYes) {
          t.Expect(oracle, tag + ": yes but no tree within depth 8");
        } else {
          t.Expect(!oracle, tag + ": no but the search connects every pair");
        }
      }
      if (r.verdict == Verdict::kNo) {
        t.Expect(r.counterexample.has_value(), tag + ": no without a zero-cycle");
        if (r.counterexample) {
          t.Expect(!CheckZeroCycle(x, *r.counterexample), tag + ": zero-cycle rejected");
        }
      }
    }
    t.Expect(essential == 137, "expected 137 nonempty essential instances");
  });

  Run(6, "witness bounds for n <= 3, d = 2", 60.0, [](Tally& t) {
    auto check = [&](const VertexTsft& x) {
      const auto r = DecideIrreducible(x);
      if (r.verdict == Verdict::kEmptyShift) return;
      const std::size_t n = r.alphabet.size();
      t.Expect(r.max_witness_length <= IrreducibilityDepthBound(n),
               "irreducibility witness longer than n 2^(n-1)");
      for (const auto& p : r.pairs) {
        if (p.cps) {
          t.Expect(p.cps->length() <= IrreducibilityDepthBound(n),
                   "pair witness longer than n 2^(n-1)");
        }
      }
      const auto m = DecideMixing(x);
      if (m.verdict == Verdict::kYes) {
        const std::size_t k = *m.uniform_depth;
        t.Expect(k <= MixingDepthBound(n), "mixing depth above n^3 2^(2(n-1))");
        t.Expect(m.witness->RefineToDepth(k).uniform(), "witness does not refine");
      }
    };
    for (std::uint64_t code = 0; code < 4; ++code) check(TsftFromCode(code, 1, 2));
    for (std::uint64_t code = 0; code < 256; ++code) check(TsftFromCode(code, 2, 2));
    // Every n = 3 instance: 2^18 matrix pairs.
    for (std::uint64_t code = 0; code < (1u << 18); ++code) {
      check(TsftFromCode(code, 3, 2));
    }
  });

  Run(7, "Ex413 entropy: |B_m| = 2^(2^m), h_m near ln 2 + ln ln 2 / m", 5.0,
      [](Tally& t) {
        const auto exact = EstimateEntropy(Ex413(), 12);
        const char* counts[] = {"16", "256", "65536"};
        for (std::size_t m = 2; m <= 4; ++m) {
          t.Expect(exact.rows[m - 1].count &&
                       exact.rows[m - 1].count->get_str() == counts[m - 2],
                   "|B_" + std::to_string(m) + "|");
        }
        // A small digit threshold switches to log space from m = 9 on.
        const auto logs = EstimateEntropy(Ex413(), 12, 100);
        t.Expect(logs.log_space_from.has_value(), "log-space mode never engaged");
        for (const auto* e : {&exact, &logs}) {
          for (std::size_t m = 2; m <= 12; ++m) {
            const auto& row = e->rows[m - 1];
            const double want = std::log(2.0) + std::log(std::log(2.0)) / m;
            t.Expect(row.h && std::abs(*row.h - want) < 1e-6,
                     "h_" + std::to_string(m) + " off");
          }
        }
      });

  Run(8, "chaos certificates on Ex43 and Ex49; identity not established", 10.0,
      [](Tally& t) {
        const struct {
          VertexTsft x;
          ChaosBasis basis;
          const char* name;
        } cases[] = {{Ex43(), ChaosBasis::kMixing, "Ex43"},
                     {Ex49(), ChaosBasis::kIrreducible, "Ex49"}};
        for (const auto& c : cases) {
          const auto r = AnalyzeChaos(c.x);
          const std::string n = c.name;
          t.Expect(r.chaotic, n + " not chaotic");
          t.Expect(r.basis == c.basis, n + " basis is " + ChaosBasisName(r.basis));
          if (r.periodic) {
            t.Expect(VerifyPeriodic(*r.periodic, c.x, 6).ok, n + " periodic check fails");
          } else {
            t.Expect(false, n + " lacks a periodic certificate");
          }
          if (r.orbit) {
            for (std::size_t i = 0; i < r.targets.size(); ++i) {
              t.Expect(r.orbit->pattern.ContainsBlockAt(r.targets[i],
                                                        r.orbit->positions[i]),
                       n + " orbit misses a target");
            }
            t.Expect(r.targets.size() == c.x.size(), n + " targets are not every 1-block");
          } else {
            t.Expect(false, n + " lacks an orbit prefix");
          }
        }
        const auto id = AnalyzeChaos(IdentityPair());
        t.Expect(!id.chaotic && id.basis == ChaosBasis::kNone,
                 "identity should be not established");
      });

  return g_failed;
}
