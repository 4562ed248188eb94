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

#include "tsft/report.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tsft/error.hpp"

namespace tsft {
namespace {

Json WordsJson(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(w.ToString());
  return out;
}

std::vector<Word> WordsFrom(const Json& j) {
  std::vector<Word> out;
  for (const auto& w : j) out.push_back(Word::Parse(w.get<std::string>()));
  return out;
}

std::string WordText(const Word& w) { return w.empty() ? "eps" : w.ToString(); }

std::string SymbolsText(const std::vector<Symbol>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

Verdict VerdictFrom(const std::string& s) {
  if (s == "yes") return Verdict::kYes;
  if (s == "no") return Verdict::kNo;
  if (s == "empty shift") return Verdict::kEmptyShift;
  throw Error(ErrorCode::kInvalidArgument, "unknown verdict '" + s + "'");
}

std::optional<std::string> CheckPatternAllowed(const VertexTsft& t,
                                               const Pattern& p) {
  for (const auto& [x, s] : p.labels()) {
    if (s >= t.size()) {
      return "label " + std::to_string(s) + " at " + WordText(x) +
             " is out of range";
    }
    if (x.empty()) continue;
    const Symbol parent = *p.Get(x.Prefix(x.size() - 1));
    if (!t.Edge(parent, x.letters().back(), s)) {
      return "edge into node " + x.ToString() + " is forbidden";
    }
  }
  return std::nullopt;
}

}  // namespace

// ---- shift -----------------------------------------------------------------

Json ShiftToJson(const VertexTsft& tsft) {
  Json j;
  j["arity"] = tsft.arity();
  j["size"] = tsft.size();
  j["native_sizes"] = tsft.native_sizes();
  Json ms = Json::array();
  for (unsigned k = 0; k < tsft.arity(); ++k) {
    Json rows = Json::array();
    const std::size_t n = tsft.native_sizes()[k];
    for (std::size_t i = 0; i < n; ++i) {
      std::string row;
      for (std::size_t j2 = 0; j2 < n; ++j2) {
        row.push_back(tsft.matrix(static_cast<Direction>(k))(i, j2) ? '1' : '0');
      }
      rows.push_back(row);
    }
    ms.push_back(rows);
  }
  j["matrices"] = ms;
  return j;
}

VertexTsft ShiftFromJson(const Json& j) {
  try {
    std::vector<BoolMatrix> ms;
    for (const auto& rows : j.at("matrices")) {
      const std::size_t n = rows.size();
      BoolMatrix m(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::string row = rows.at(i).get<std::string>();
        if (row.size() != n) {
          throw Error(ErrorCode::kInvalidArgument, "matrix row of wrong length");
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (row[c] != '0' && row[c] != '1') {
            throw Error(ErrorCode::kInvalidArgument, "matrix entry not 0/1");
          }
          m.Set(i, c, row[c] == '1');
        }
      }
      ms.push_back(std::move(m));
    }
    VertexTsft t = VertexTsft::Padded(std::move(ms));
    if (j.at("arity").get<unsigned>() != t.arity() ||
        j.at("size").get<std::size_t>() != t.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "shift arity or size disagrees with its matrices");
    }
    return t;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed shift: ") + e.what());
  }
}

// ---- deciders --------------------------------------------------------------

Json ToJson(const ZeroCycleWitness& w) {
  Json j;
  j["from"] = w.from;
  j["to"] = w.to;
  j["word"] = w.word.ToString();
  j["loop_start"] = w.loop_start;
  j["trace"] = w.trace;
  j["cycle_form"] = w.cycle_form();
  return j;
}

ZeroCycleWitness ZeroCycleFromJson(const Json& j) {
  ZeroCycleWitness w;
  w.from = j.at("from").get<Symbol>();
  w.to = j.at("to").get<Symbol>();
  w.word = Word::Parse(j.at("word").get<std::string>());
  w.loop_start = j.at("loop_start").get<std::size_t>();
  w.trace = j.at("trace").get<std::vector<std::vector<Symbol>>>();
  return w;
}

Json ToJson(const TrapWitness& t) {
  Json j;
  j["from"] = t.from;
  j["to"] = t.to;
  j["trap"] = t.trap;
  std::vector<unsigned> escape(t.escape.begin(), t.escape.end());
  j["escape"] = escape;
  return j;
}

TrapWitness TrapFromJson(const Json& j, unsigned arity) {
  TrapWitness t;
  t.from = j.at("from").get<Symbol>();
  t.to = j.at("to").get<Symbol>();
  t.trap = j.at("trap").get<std::vector<Symbol>>();
  for (unsigned k : j.at("escape").get<std::vector<unsigned>>()) {
    if (k >= arity) throw Error(ErrorCode::kInvalidArgument, "escape direction out of range");
    t.escape.push_back(static_cast<Direction>(k));
  }
  return t;
}

Json ToJson(const IrreducibilityReport& r) {
  Json j;
  j["verdict"] = VerdictName(r.verdict);
  j["reason"] = r.reason;
  j["alphabet"] = r.alphabet;
  j["removed"] = r.removed;
  j["size_mismatch"] = r.size_mismatch;
  Json pairs = Json::array();
  for (const PairWitness& p : r.pairs) {
    Json pj;
    pj["from"] = p.from;
    pj["to"] = p.to;
    pj["cps"] = p.cps ? WordsJson(p.cps->words()) : Json(nullptr);
    pj["zero_cycle"] = p.cycle ? ToJson(*p.cycle) : Json(nullptr);
    pairs.push_back(pj);
  }
  j["pairs"] = pairs;
  j["counterexample"] = r.counterexample ? ToJson(*r.counterexample) : Json(nullptr);
  j["depth_bound"] = r.depth_bound;
  j["max_witness_length"] = r.max_witness_length;
  j["states_explored"] = r.states_explored;
  j["tree_realizable"] = r.tree_realizable;
  Json traps = Json::array();
  for (const TrapWitness& t : r.traps) traps.push_back(ToJson(t));
  j["traps"] = traps;
  return j;
}

Json ToJson(const MixingReport& r) {
  Json j;
  j["verdict"] = VerdictName(r.verdict);
  j["reason"] = r.reason;
  j["alphabet"] = r.alphabet;
  j["removed"] = r.removed;
  j["size_mismatch"] = r.size_mismatch;
  j["witness"] = r.witness ? WordsJson(r.witness->words()) : Json(nullptr);
  j["uniform_depth"] = r.uniform_depth ? Json(*r.uniform_depth) : Json(nullptr);
  j["depth_bound"] = r.depth_bound;
  j["states_explored"] = r.states_explored;
  j["tree_mixing"] = r.tree_mixing ? Json(*r.tree_mixing) : Json(nullptr);
  return j;
}

// ---- dynamics --------------------------------------------------------------

Json ToJson(const PeriodicTreeCertificate& c, const PeriodicCheck& check,
            std::size_t depth) {
  Json j;
  j["block"] = c.block.ToString();
  j["period"] = WordsJson(c.period.words());
  j["seed"] = c.seed.ToString();
  j["verify_depth"] = depth;
  Json cj;
  cj["ok"] = check.ok;
  cj["node"] = check.node ? Json(check.node->ToString()) : Json(nullptr);
  cj["reason"] = check.reason;
  j["check"] = cj;
  return j;
}

PeriodicTreeCertificate PeriodicFromJson(const Json& j, unsigned arity) {
  return PeriodicTreeCertificate{
      Block::Parse(j.at("block").get<std::string>(), arity),
      CompletePrefixSet::FromWords(WordsFrom(j.at("period")), arity),
      Pattern::Parse(j.at("seed").get<std::string>(), arity)};
}

Json ToJson(const DenseOrbitPrefix& o, const std::vector<Block>& targets) {
  Json j;
  j["pattern"] = o.pattern.ToString();
  j["positions"] = WordsJson(o.positions);
  Json t = Json::array();
  for (const Block& b : targets) t.push_back(b.ToString());
  j["targets"] = t;
  j["nodes"] = o.pattern.size();
  return j;
}

Json ToJson(const ChaosReport& r, std::size_t verify_depth) {
  Json j;
  j["chaotic"] = r.chaotic;
  j["basis"] = ChaosBasisName(r.basis);
  j["reason"] = r.reason;
  j["sensitivity_constant"] = r.sensitivity_constant;
  j["sensitivity_applies"] = r.sensitivity_applies;
  j["periodic"] = r.periodic && r.periodic_check
                      ? ToJson(*r.periodic, *r.periodic_check, verify_depth)
                      : Json(nullptr);
  j["orbit"] = r.orbit ? ToJson(*r.orbit, r.targets) : Json(nullptr);
  return j;
}

Json ToJson(const EntropyEstimate& e) {
  Json j;
  Json rows = Json::array();
  for (const EntropyRow& r : e.rows) {
    Json rj;
    rj["m"] = r.m;
    rj["count"] = r.count ? Json(r.count->get_str()) : Json(nullptr);
    rj["log_count"] = r.log_count;
    rj["h"] = r.h ? Json(*r.h) : Json(nullptr);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  j["m_max"] = e.rows.size();
  j["limit"] = e.limit;
  j["degenerate"] = e.degenerate;
  j["log_space_from"] = e.log_space_from ? Json(*e.log_space_from) : Json(nullptr);
  j["digit_threshold"] = e.digit_threshold;
  return j;
}

Json MakeDocument(std::string_view command, const LoadedShift& input,
                  Json body, std::optional<double> timing_ms) {
  Json doc = std::move(body);
  doc["format"] = kReportFormat;
  doc["version"] = kReportVersion;
  doc["command"] = std::string(command);
  doc["shift"] = ShiftToJson(input.tsft);
  if (!input.log.empty() || !input.alphabet.empty()) {
    Json in;
    in["log"] = input.log;
    Json names = Json::array();
    for (const Block& b : input.alphabet) names.push_back(b.ToString());
    in["alphabet"] = names;
    doc["input"] = in;
  }
  if (timing_ms) doc["timing_ms"] = *timing_ms;
  return doc;
}

// ---- text ------------------------------------------------------------------

std::string FormatText(const IrreducibilityReport& r) {
  std::ostringstream out;
  out << "irreducible: " << VerdictName(r.verdict) << "\n";
  out << "reason: " << r.reason << "\n";
  out << "alphabet: " << SymbolsText(r.alphabet);
  if (!r.removed.empty()) out << "  removed: " << SymbolsText(r.removed);
  out << "\n";
  for (const PairWitness& p : r.pairs) {
    out << "  pair (" << p.from << "," << p.to << "): ";
    if (p.cps) {
      out << "P = " << p.cps->ToString() << "\n";
    } else {
      out << "no complete prefix set\n";
    }
  }
  if (r.counterexample) {
    const auto& w = *r.counterexample;
    out << "zero-cycle: pair (" << w.from << "," << w.to << ") word "
        << WordText(w.word) << " loop from position " << w.loop_start << "\n";
    out << "  reachable sets:";
    for (const auto& s : w.trace) out << " " << SymbolsText(s);
    out << "\n";
  }
  out << "depth bound n*2^(n-1): " << r.depth_bound
      << "  longest witness word: " << r.max_witness_length << "\n";
  out << "connecting trees: "
      << (r.size_mismatch     ? "not assessed (unequal matrix sizes)"
          : r.tree_realizable ? "exist for every pair"
                              : "missing for some pair")
      << "\n";
  for (const TrapWitness& t : r.traps) {
    out << "  trap for (" << t.from << "," << t.to << "): "
        << SymbolsText(t.trap) << "\n";
  }
  return out.str();
}

std::string FormatText(const MixingReport& r) {
  std::ostringstream out;
  out << "mixing: " << VerdictName(r.verdict) << "\n";
  out << "reason: " << r.reason << "\n";
  out << "alphabet: " << SymbolsText(r.alphabet);
  if (!r.removed.empty()) out << "  removed: " << SymbolsText(r.removed);
  out << "\n";
  if (r.witness) {
    out << "witness: P = " << r.witness->ToString() << "  refines to depth "
        << *r.uniform_depth << "\n";
  }
  out << "depth bound n^3*2^(2(n-1)): " << r.depth_bound << "\n";
  if (r.tree_mixing) {
    out << "tree-level mixing: " << (*r.tree_mixing ? "yes" : "no") << "\n";
  } else {
    out << "tree-level mixing: undetermined (state cap)\n";
  }
  return out.str();
}

std::string FormatText(const PeriodicTreeCertificate& c,
                       const PeriodicCheck& check, std::size_t depth) {
  std::ostringstream out;
  out << "periodic tree for block " << c.block.ToString() << "\n";
  out << "P = " << c.period.ToString() << "\n";
  out << "seed: " << c.seed.ToString() << "\n";
  out << "verified to depth " << depth << ": "
      << (check.ok ? "ok" : "FAILED") << "\n";
  if (!check.ok) {
    out << "  at node " << (check.node ? WordText(*check.node) : "?") << ": "
        << check.reason << "\n";
  }
  return out.str();
}

std::string FormatText(const ChaosReport& r, std::size_t verify_depth) {
  std::ostringstream out;
  out << "chaotic: " << (r.chaotic ? "yes" : "not established") << "\n";
  out << "basis: " << ChaosBasisName(r.basis) << "\n";
  out << "reason: " << r.reason << "\n";
  out << "irreducible: " << VerdictName(r.irreducibility.verdict)
      << "  mixing: " << VerdictName(r.mixing.verdict) << "\n";
  if (r.sensitivity_applies) {
    out << "sensitivity constant: " << r.sensitivity_constant << "\n";
  }
  if (r.periodic && r.periodic_check) {
    out << FormatText(*r.periodic, *r.periodic_check, verify_depth);
  }
  if (r.orbit) {
    out << "dense-orbit prefix: " << r.orbit->pattern.size() << " nodes\n";
    for (std::size_t i = 0; i < r.targets.size(); ++i) {
      out << "  target " << r.targets[i].ToString() << " at "
          << WordText(r.orbit->positions[i]) << "\n";
    }
  }
  return out.str();
}

std::string FormatText(const EntropyEstimate& e) {
  std::ostringstream out;
  out << "m\t|B_m|\th_m\n";
  for (const EntropyRow& r : e.rows) {
    out << r.m << "\t";
    if (r.count) {
      const std::string digits = r.count->get_str();
      if (digits.size() <= 40) {
        out << digits;
      } else {
        out << "~exp(" << r.log_count << ") [" << digits.size() << " digits]";
      }
    } else {
      out << "~exp(" << r.log_count << ")";
    }
    out << "\t";
    if (r.h) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10f", *r.h);
      out << buf;
    } else {
      out << "-";
    }
    out << "\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10f", e.limit);
  out << "entropy estimate: " << buf;
  if (e.degenerate) out << " (a single block at every height)";
  out << "\n";
  if (e.log_space_from) {
    out << "log-space from m = " << *e.log_space_from << "\n";
  }
  return out.str();
}

// ---- verification ----------------------------------------------------------

namespace {

class Verifier {
 public:
  explicit Verifier(VerifyOutcome& out) : out_(out) {}

  // Runs `fn` unless an earlier check failed; a returned message or any
  // exception fails the check.
  bool Check(const std::string& name,
             const std::function<std::optional<std::string>()>& fn) {
    if (!out_.ok) return false;
    std::optional<std::string> err;
    try {
      err = fn();
    } catch (const std::exception& e) {
      err = e.what();
    }
    if (err) {
      out_.ok = false;
      out_.failed_check = name;
      out_.failure = *err;
      return false;
    }
    out_.passed.push_back(name);
    return true;
  }

 private:
  VerifyOutcome& out_;
};

void VerifyIrreducibility(Verifier& v, const VertexTsft& t, const Json& j) {
  for (const auto& p : j.at("pairs")) {
    const std::string pair = "(" + std::to_string(p.at("from").get<Symbol>()) +
                             "," + std::to_string(p.at("to").get<Symbol>()) + ")";
    if (!p.at("cps").is_null()) {
      v.Check("irreducibility: CPS for pair " + pair, [&] {
        return CheckPairCps(t, p.at("from").get<Symbol>(), p.at("to").get<Symbol>(),
                            CompletePrefixSet::FromWords(WordsFrom(p.at("cps")),
                                                         t.arity()));
      });
    }
    if (!p.at("zero_cycle").is_null()) {
      v.Check("irreducibility: zero-cycle for pair " + pair,
              [&] { return CheckZeroCycle(t, ZeroCycleFromJson(p.at("zero_cycle"))); });
    }
  }
  const Verdict verdict = VerdictFrom(j.at("verdict").get<std::string>());
  if (verdict == Verdict::kYes) {
    v.Check("irreducibility: every pair has a CPS", [&]() -> std::optional<std::string> {
      std::set<std::pair<Symbol, Symbol>> seen;
      for (const auto& p : j.at("pairs")) {
        if (!p.at("cps").is_null()) {
          seen.emplace(p.at("from").get<Symbol>(), p.at("to").get<Symbol>());
        }
      }
      for (Symbol a : j.at("alphabet").get<std::vector<Symbol>>()) {
        for (Symbol b : j.at("alphabet").get<std::vector<Symbol>>()) {
          if (!seen.count({a, b})) {
            return "pair (" + std::to_string(a) + "," + std::to_string(b) +
                   ") has no witness";
          }
        }
      }
      return std::nullopt;
    });
  } else if (verdict == Verdict::kNo) {
    v.Check("irreducibility: refutation", [&]() -> std::optional<std::string> {
      if (j.at("size_mismatch").get<bool>()) {
        if (!t.size_mismatch()) return "size mismatch claimed but matrices agree";
        return std::nullopt;
      }
      if (j.at("counterexample").is_null()) return "verdict no without a zero-cycle";
      return CheckZeroCycle(t, ZeroCycleFromJson(j.at("counterexample")));
    });
  }
  std::size_t i = 0;
  for (const auto& tj : j.at("traps")) {
    v.Check("irreducibility: trap " + std::to_string(i++),
            [&] { return CheckTrap(t, TrapFromJson(tj, t.arity())); });
  }
  v.Check("irreducibility: verdict recomputed", [&]() -> std::optional<std::string> {
    const auto fresh = DecideIrreducible(t);
    if (fresh.verdict != verdict) {
      return std::string("recomputed verdict is ") + VerdictName(fresh.verdict);
    }
    if (fresh.tree_realizable != j.at("tree_realizable").get<bool>()) {
      return "recomputed connecting-tree check differs";
    }
    return std::nullopt;
  });
}

void VerifyMixing(Verifier& v, const VertexTsft& t, const Json& j) {
  const Verdict verdict = VerdictFrom(j.at("verdict").get<std::string>());
  if (verdict == Verdict::kYes) {
    v.Check("mixing: witness CPS", [&]() -> std::optional<std::string> {
      if (j.at("witness").is_null()) return "verdict yes without a witness";
      const auto p = CompletePrefixSet::FromWords(WordsFrom(j.at("witness")), t.arity());
      if (auto err = CheckMixingCps(t, p)) return err;
      if (j.at("uniform_depth").get<std::size_t>() != p.length()) {
        return "uniform depth differs from the witness length";
      }
      return std::nullopt;
    });
  }
  v.Check("mixing: verdict recomputed", [&]() -> std::optional<std::string> {
    const auto fresh = DecideMixing(t);
    if (fresh.verdict != verdict) {
      return std::string("recomputed verdict is ") + VerdictName(fresh.verdict);
    }
    return std::nullopt;
  });
}

void VerifyPeriodicJson(Verifier& v, const VertexTsft& t, const Json& j,
                        const std::string& prefix) {
  v.Check(prefix + "periodic certificate", [&]() -> std::optional<std::string> {
    const auto cert = PeriodicFromJson(j, t.arity());
    const std::size_t depth = j.at("verify_depth").get<std::size_t>();
    const auto check = VerifyPeriodic(cert, t, depth);
    if (!check.ok) {
      return "at node " + (check.node ? WordText(*check.node) : "?") + ": " +
             check.reason;
    }
    if (!j.at("check").at("ok").get<bool>()) {
      return "certificate verifies but the report records a failure";
    }
    return std::nullopt;
  });
}

void VerifyChaos(Verifier& v, const VertexTsft& t, const Json& doc) {
  const Json& j = doc.at("chaos");
  if (!j.at("periodic").is_null()) VerifyPeriodicJson(v, t, j.at("periodic"), "chaos: ");
  if (!j.at("orbit").is_null()) {
    v.Check("chaos: dense-orbit prefix", [&]() -> std::optional<std::string> {
      const Json& o = j.at("orbit");
      const Pattern p = Pattern::Parse(o.at("pattern").get<std::string>(), t.arity());
      if (auto err = CheckPatternAllowed(t, p)) return err;
      const auto positions = WordsFrom(o.at("positions"));
      const auto& targets = o.at("targets");
      if (positions.size() != targets.size()) return "one position per target expected";
      for (std::size_t i = 0; i < positions.size(); ++i) {
        const Block b = Block::Parse(targets[i].get<std::string>(), t.arity());
        if (!p.ContainsBlockAt(b, positions[i])) {
          return "target " + b.ToString() + " missing at " + WordText(positions[i]);
        }
      }
      return std::nullopt;
    });
  }
  v.Check("chaos: claim", [&]() -> std::optional<std::string> {
    const bool chaotic = j.at("chaotic").get<bool>();
    const std::string basis = j.at("basis").get<std::string>();
    const std::string irr = doc.at("irreducibility").at("verdict").get<std::string>();
    const std::string mix = doc.at("mixing").at("verdict").get<std::string>();
    if (!chaotic) return std::nullopt;
    if (j.at("periodic").is_null() || j.at("orbit").is_null()) {
      return "chaotic without a periodic certificate and an orbit prefix";
    }
    if (!j.at("sensitivity_applies").get<bool>()) {
      return "chaotic but sensitivity does not apply";
    }
    if (basis == "mixing" && mix != "yes") return "basis mixing but mixing verdict is " + mix;
    if (basis == "irreducible" && irr != "yes") {
      return "basis irreducible but irreducibility verdict is " + irr;
    }
    if (basis != "mixing" && basis != "irreducible") return "chaotic with basis " + basis;
    return std::nullopt;
  });
}

void VerifyEntropy(Verifier& v, const VertexTsft& t, const Json& j) {
  v.Check("entropy: counts recomputed", [&]() -> std::optional<std::string> {
    const auto& rows = j.at("rows");
    const auto fresh = EstimateEntropy(t, rows.size(),
                                       j.at("digit_threshold").get<std::size_t>());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const EntropyRow& r = fresh.rows[i];
      const Json& rj = rows[i];
      const std::string m = std::to_string(r.m);
      if (rj.at("m").get<std::size_t>() != r.m) return "row order differs at m=" + m;
      if (r.count.has_value() != !rj.at("count").is_null() ||
          (r.count && r.count->get_str() != rj.at("count").get<std::string>())) {
        return "|B_" + m + "| differs from recomputation";
      }
      const double lc = rj.at("log_count").get<double>();
      if (std::abs(lc - r.log_count) > 1e-9 * std::max(1.0, std::abs(r.log_count))) {
        return "ln |B_" + m + "| differs from recomputation";
      }
    }
    if (std::abs(j.at("limit").get<double>() - fresh.limit) > 1e-9) {
      return "entropy estimate differs from recomputation";
    }
    return std::nullopt;
  });
}

}  // namespace

VerifyOutcome VerifyReport(const Json& doc) {
  VerifyOutcome out;
  Verifier v(out);
  VertexTsft t;
  v.Check("document header", [&]() -> std::optional<std::string> {
    if (!doc.is_object()) return "not a JSON object";
    if (doc.value("format", "") != kReportFormat) return "format is not tsft-report";
    if (doc.value("version", 0) != kReportVersion) return "unsupported version";
    if (!doc.contains("shift")) return "no embedded shift";
    return std::nullopt;
  });
  v.Check("embedded shift", [&]() -> std::optional<std::string> {
    t = ShiftFromJson(doc.at("shift"));
    return std::nullopt;
  });
  bool any = false;
  auto section = [&](const char* key, const std::function<void()>& fn) {
    if (!out.ok || !doc.contains(key)) return;
    any = true;
    try {
      fn();
    } catch (const std::exception& e) {
      v.Check(std::string(key) + ": structure",
              [&]() -> std::optional<std::string> { return e.what(); });
    }
  };
  section("irreducibility", [&] { VerifyIrreducibility(v, t, doc.at("irreducibility")); });
  section("mixing", [&] { VerifyMixing(v, t, doc.at("mixing")); });
  section("chaos", [&] { VerifyChaos(v, t, doc); });
  section("entropy", [&] { VerifyEntropy(v, t, doc.at("entropy")); });
  section("periodic", [&] { VerifyPeriodicJson(v, t, doc.at("periodic"), ""); });
  v.Check("evidence present", [&]() -> std::optional<std::string> {
    if (!any) return "document carries no verifiable section";
    return std::nullopt;
  });
  if (doc.is_object() && doc.contains("holds")) {
    v.Check("holds flag", [&]() -> std::optional<std::string> {
      const bool holds = doc.at("holds").get<bool>();
      const std::string property = doc.at("property").get<std::string>();
      bool expected = false;
      if (property == "irreducible") {
        expected = doc.at("irreducibility").at("verdict") == "yes";
      } else if (property == "mixing") {
        expected = doc.at("mixing").at("verdict") == "yes";
      } else if (property == "chaos") {
        expected = doc.at("chaos").at("chaotic").get<bool>();
      } else if (property == "periodic") {
        expected = doc.at("periodic").at("check").at("ok").get<bool>();
      } else {
        return "unknown property '" + property + "'";
      }
      if (holds != expected) return "holds flag contradicts the verdict";
      return std::nullopt;
    });
  }
  return out;
}

VerifyOutcome VerifyReportText(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what(), 0, 0);
  }
  return VerifyReport(doc);
}

std::string FormatText(const VerifyOutcome& v) {
  std::ostringstream out;
  if (v.ok) {
    out << "report verified: " << v.passed.size() << " checks passed\n";
  } else {
    out << "report rejected after " << v.passed.size() << " passing checks\n";
    out << "first failing check: " << v.failed_check << "\n";
    out << "  " << v.failure << "\n";
  }
  return out.str();
}

// ---- oracle ----------------------------------------------------------------

OracleOutcome CrossValidate(const std::vector<VertexTsft>& instances,
                            std::size_t depth, std::size_t height) {
  OracleOutcome out;
  out.depth = depth;
  out.height = height;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const VertexTsft& t = instances[i];
    OracleCase c;
    c.index = i;
    const auto irr = DecideIrreducible(t);
    c.verdict = VerdictName(irr.verdict);
    if (irr.verdict == Verdict::kEmptyShift) {
      c.outcome = "empty";
    } else if (irr.size_mismatch) {
      if (irr.counterexample) {
        auto err = CheckZeroCycle(t, *irr.counterexample);
        c.outcome = err ? "disagree" : "agree";
        c.detail = err ? *err : "size mismatch; zero-cycle validates";
      } else {
        c.outcome = "agree";
        c.detail = "size mismatch";
      }
    } else {
      std::optional<BruteForceResult> bf;
      try {
        bf = BruteForceIrreducible(t, height, depth);
      } catch (const Error& e) {
        c.outcome = "inconclusive";
        c.detail = e.what();
      }
      if (bf && irr.verdict == Verdict::kYes) {
        if (bf->all_connected) {
          c.outcome = "agree";
        } else if (!irr.tree_realizable) {
          c.outcome = "gap";
          c.detail = "matrix criterion holds but some pair has no connecting tree";
        } else {
          c.outcome = "inconclusive";
          c.detail = "no tree within depth " + std::to_string(depth);
        }
      } else if (bf) {
        auto err = irr.counterexample ? CheckZeroCycle(t, *irr.counterexample)
                                      : std::optional<std::string>("no zero-cycle");
        if (err) {
          c.outcome = "disagree";
          c.detail = *err;
        } else if (bf->all_connected) {
          c.outcome = "disagree";
          c.detail = "search found every connecting tree";
        } else {
          c.outcome = "agree";
        }
      }
    }
    if (c.outcome == "disagree") {
      ++out.disagreements;
    } else if (c.outcome == "agree" || c.outcome == "gap" || c.outcome == "empty") {
      ++out.agreements;
    }
    out.cases.push_back(std::move(c));
  }
  return out;
}

std::vector<VertexTsft> RandomInstances(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<VertexTsft> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<BoolMatrix> ms(2, BoolMatrix(n));
    for (auto& m : ms) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) m.Set(a, b, rng() & 1);
      }
    }
    out.emplace_back(std::move(ms));
  }
  return out;
}

Json ToJson(const OracleOutcome& o) {
  Json j;
  j["depth"] = o.depth;
  j["height"] = o.height;
  j["agreements"] = o.agreements;
  j["disagreements"] = o.disagreements;
  j["ok"] = o.ok();
  Json cases = Json::array();
  for (const OracleCase& c : o.cases) {
    cases.push_back({{"index", c.index},
                     {"verdict", c.verdict},
                     {"outcome", c.outcome},
                     {"detail", c.detail}});
  }
  j["cases"] = cases;
  return j;
}

std::string FormatText(const OracleOutcome& o) {
  std::ostringstream out;
  std::map<std::string, std::size_t> tally;
  for (const OracleCase& c : o.cases) {
    ++tally[c.outcome];
    if (c.outcome == "disagree" || c.outcome == "gap") {
      out << "instance " << c.index << ": " << c.outcome << " (decider "
          << c.verdict << ") " << c.detail << "\n";
    }
  }
  out << "oracle at block height " << o.height << ", depth " << o.depth << ": "
      << o.cases.size() << " instances";
  for (const auto& [k, n] : tally) out << ", " << n << " " << k;
  out << "\n" << (o.ok() ? "agreement: yes" : "agreement: NO") << "\n";
  return out.str();
}

}  // namespace tsft
