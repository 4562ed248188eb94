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

// Constructive chaos evidence: periodic trees, dense-orbit prefixes and the
// entropy of vertex tree-shifts.

#ifndef TSFT_DYNAMICS_HPP_
#define TSFT_DYNAMICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsft/blocks.hpp"
#include "tsft/deciders.hpp"
#include "tsft/graph.hpp"
#include "tsft/words.hpp"

namespace tsft {

// A tree t with sigma_x t = t for every x in `period`. The seed labels
// I(P) and P*Sigma_{h-1}; every other node y = x z (x in P) copies z.
struct PeriodicTreeCertificate {
  Block block;  // t restricted to Sigma_{h-1}
  CompletePrefixSet period;
  Pattern seed;

  // Label of node y in the unrolled tree.
  Symbol LabelAt(const Word& y) const;
  std::size_t DefaultVerifyDepth() const {
    return 2 * (period.length() + block.height());
  }
};

// Requires an irreducible shift whose connecting trees exist; u must be an
// allowed block. Throws Error(kRefused) otherwise.
PeriodicTreeCertificate BuildPeriodicTree(const VertexTsft& tsft,
                                          const Block& u);

struct PeriodicCheck {
  bool ok = true;
  std::optional<Word> node;  // first violating node
  std::string reason;
};

inline constexpr std::size_t kMaxUnrollNodes = std::size_t{1} << 22;

// Unrolls to depth `depth` (nodes of length <= depth) and checks seed
// consistency, sigma_x invariance for x in P, agreement with the block, and
// that every edge is allowed. Throws kLimitExceeded past kMaxUnrollNodes.
PeriodicCheck VerifyPeriodic(const PeriodicTreeCertificate& cert,
                             const VertexTsft& tsft, std::size_t depth);

struct DenseOrbitPrefix {
  Pattern pattern;
  std::vector<Word> positions;  // where each target was placed
};

// Places the first target at the root, then below every current leaf a
// connecting tree to the next target's root and a copy of that target at each
// of its leaves. Throws kRefused when the shift is not irreducible or a
// connecting tree is missing, kLimitExceeded past `max_nodes`.
DenseOrbitPrefix BuildDenseOrbitPrefix(const VertexTsft& tsft,
                                       const std::vector<Block>& targets,
                                       std::size_t max_nodes = 1u << 20);

struct EntropyRow {
  std::size_t m = 0;
  std::optional<BigInt> count;  // |B_m| in exact mode
  double log_count = 0;         // ln |B_m|
  std::optional<double> h;      // ln ln |B_m| / m; absent when |B_m| <= 1
};

struct EntropyEstimate {
  std::vector<EntropyRow> rows;  // m = 1 .. m_max
  // ln ln |B_m| - ln ln |B_(m-1)| at the largest m; exact when |B_m| = c^(a^m).
  double limit = 0;
  bool degenerate = false;  // |B_m| = 1 throughout: h := 0
  std::optional<std::size_t> log_space_from;  // first m computed in logs
  std::size_t digit_threshold = 0;
};

inline constexpr std::size_t kDefaultDigitThreshold = 1'000'000;

// Counts on the live core. Exact big integers until |B_m| has more than
// `digit_threshold` decimal digits, then log-sum-exp. Throws kEmptyShift.
EntropyEstimate EstimateEntropy(const VertexTsft& tsft, std::size_t m_max,
                                std::size_t digit_threshold =
                                    kDefaultDigitThreshold);

enum class ChaosBasis { kNone, kIrreducible, kMixing };

const char* ChaosBasisName(ChaosBasis b);

struct ChaosOptions {
  DecideOptions decide;
  std::size_t verify_depth = 6;
};

struct ChaosReport {
  bool chaotic = false;
  ChaosBasis basis = ChaosBasis::kNone;
  std::string reason;
  IrreducibilityReport irreducibility;
  MixingReport mixing;
  std::optional<PeriodicTreeCertificate> periodic;
  std::optional<PeriodicCheck> periodic_check;
  std::vector<Block> targets;  // every 1-block
  std::optional<DenseOrbitPrefix> orbit;
  // Under d(t, t') = 2^-n any two distinct trees differ at some node x, so
  // sigma_x separates them by distance 1 > 1/2: sensitivity holds with this
  // constant whenever the shift has at least two trees.
  double sensitivity_constant = 0.5;
  bool sensitivity_applies = false;
};

ChaosReport AnalyzeChaos(const VertexTsft& tsft,
                         const ChaosOptions& options = {});

}  // namespace tsft

#endif  // TSFT_DYNAMICS_HPP_
