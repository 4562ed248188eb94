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

// Report documents. Every document embeds the shift it was computed on, so
// VerifyReport can re-check the evidence with no other input. Object keys are
// sorted and nothing time-dependent is written unless asked for.

#ifndef TSFT_REPORT_HPP_
#define TSFT_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tsft/deciders.hpp"
#include "tsft/dynamics.hpp"
#include "tsft/io.hpp"

namespace tsft {

using Json = nlohmann::json;

inline constexpr const char* kReportFormat = "tsft-report";
inline constexpr int kReportVersion = 1;

Json ShiftToJson(const VertexTsft& tsft);
// Throws Error(kInvalidArgument) on a malformed shift object.
VertexTsft ShiftFromJson(const Json& j);

Json ToJson(const ZeroCycleWitness& w);
Json ToJson(const TrapWitness& t);
Json ToJson(const IrreducibilityReport& r);
Json ToJson(const MixingReport& r);
Json ToJson(const PeriodicTreeCertificate& c, const PeriodicCheck& check,
            std::size_t depth);
Json ToJson(const DenseOrbitPrefix& o, const std::vector<Block>& targets);
Json ToJson(const ChaosReport& r, std::size_t verify_depth);
Json ToJson(const EntropyEstimate& e);

ZeroCycleWitness ZeroCycleFromJson(const Json& j);
TrapWitness TrapFromJson(const Json& j, unsigned arity);
PeriodicTreeCertificate PeriodicFromJson(const Json& j, unsigned arity);

// A complete document: format, version, command, shift, the given body keys,
// the input conversion log when present, and timing_ms when set.
Json MakeDocument(std::string_view command, const LoadedShift& input,
                  Json body, std::optional<double> timing_ms = std::nullopt);

std::string FormatText(const IrreducibilityReport& r);
std::string FormatText(const MixingReport& r);
std::string FormatText(const ChaosReport& r, std::size_t verify_depth);
std::string FormatText(const EntropyEstimate& e);
std::string FormatText(const PeriodicTreeCertificate& c,
                       const PeriodicCheck& check, std::size_t depth);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> passed;  // names of checks that held
  std::string failed_check;         // first failing check
  std::string failure;              // why it failed
};

// Re-checks every piece of evidence in a document, then recomputes the
// verdicts. Stops at the first failing check.
VerifyOutcome VerifyReport(const Json& doc);
// Throws ParseError when the text is not JSON.
VerifyOutcome VerifyReportText(std::string_view text);
std::string FormatText(const VerifyOutcome& v);

// Decider versus the definition-level search.
struct OracleCase {
  std::size_t index = 0;
  std::string verdict;   // decider verdict
  std::string outcome;   // agree | disagree | gap | inconclusive | empty
  std::string detail;
};

struct OracleOutcome {
  std::size_t depth = 0;
  std::size_t height = 1;
  std::vector<OracleCase> cases;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  bool ok() const { return disagreements == 0; }
};

// Per instance: a yes verdict must be confirmed by the bounded search, unless
// the exact connecting-tree check already shows the matrix criterion exceeds
// what trees realize (gap) or needs more depth (inconclusive). A no verdict
// needs a validating zero-cycle and no tree found by the search.
OracleOutcome CrossValidate(const std::vector<VertexTsft>& instances,
                            std::size_t depth, std::size_t height = 1);
// `count` seeded random instances, 1 to 3 symbols, arity 2.
std::vector<VertexTsft> RandomInstances(std::uint64_t seed, std::size_t count);
Json ToJson(const OracleOutcome& o);
std::string FormatText(const OracleOutcome& o);

}  // namespace tsft

#endif  // TSFT_REPORT_HPP_
