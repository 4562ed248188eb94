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

#include "tsft/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tsft/error.hpp"

namespace tsft {
namespace {

// The shift restricted to symbols that label trees, with both directions of
// the relabeling.
struct Core {
  Restriction r;
  std::vector<std::optional<Symbol>> index;

  explicit Core(const VertexTsft& tsft) : r(LiveCore(tsft)), index(tsft.size()) {
    for (std::size_t i = 0; i < r.kept.size(); ++i) {
      index[r.kept[i]] = static_cast<Symbol>(i);
    }
  }

  Block ToCore(const Block& b, const char* what) const {
    std::vector<Symbol> labels = b.labels();
    for (Symbol& s : labels) {
      if (s >= index.size() || !index[s]) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string(what) + " uses symbol " + std::to_string(s) +
                        ", which labels no tree");
      }
      s = *index[s];
    }
    return Block(b.arity(), b.height(), std::move(labels));
  }

  Pattern ToOriginal(const Pattern& p) const {
    Pattern out(p.arity());
    for (const auto& [x, s] : p.labels()) out.Set(x, r.kept[s]);
    return out;
  }
};

void RequireIrreducible(const VertexTsft& tsft, const char* what) {
  const auto report = DecideIrreducible(tsft);
  if (report.verdict != Verdict::kYes) {
    throw Error(ErrorCode::kRefused,
                std::string(what) + " needs an irreducible shift: " +
                    report.reason);
  }
}

Pattern ConnectingTreeOrRefuse(const TreeConnectivity& trees, Symbol from,
                               Symbol to, const Core& core) {
  auto tree = trees.ConnectingTree(from, to);
  if (!tree) {
    throw Error(ErrorCode::kRefused,
                "no finite tree rooted at " + std::to_string(core.r.kept[from]) +
                    " carries " + std::to_string(core.r.kept[to]) +
                    " on a complete prefix set, although the per-word matrix "
                    "criterion holds");
  }
  return *tree;
}

// Copies p into `into` rooted at x; labels must agree where both exist.
void Graft(Pattern& into, const Word& x, const Pattern& p) {
  for (const auto& [y, s] : p.labels()) {
    const Word at = x + y;
    if (auto existing = into.Get(at)) {
      if (*existing != s) {
        throw Error(ErrorCode::kInvalidArgument,
                    "graft disagrees at node " + at.ToString());
      }
      continue;
    }
    into.Set(at, s);
  }
}

double LogOf(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double LogSumExp(const std::vector<double>& xs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double x : xs) top = std::max(top, x);
  if (std::isinf(top)) return top;
  double sum = 0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace

Symbol PeriodicTreeCertificate::LabelAt(const Word& y) const {
  Word rest = y;
  for (;;) {
    if (auto s = seed.Get(rest)) return *s;
    std::size_t cut = 0;
    for (std::size_t l = 1; l <= rest.size() && cut == 0; ++l) {
      if (std::binary_search(period.words().begin(), period.words().end(),
                             rest.Prefix(l))) {
        cut = l;
      }
    }
    if (cut == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "node " + y.ToString() + " is neither seeded nor below P");
    }
    rest = rest.Suffix(cut);
  }
}

PeriodicTreeCertificate BuildPeriodicTree(const VertexTsft& tsft,
                                          const Block& u) {
  if (u.arity() != tsft.arity()) {
    throw Error(ErrorCode::kInvalidArgument, "block arity differs from shift");
  }
  if (!BlockIsAllowed(u, tsft)) {
    throw Error(ErrorCode::kInvalidArgument,
                "block " + u.ToString() + " is not allowed");
  }
  RequireIrreducible(tsft, "a periodic tree");
  const Core core(tsft);
  const Block cu = core.ToCore(u, "block");
  const TreeConnectivity trees(core.r.tsft);
  const unsigned d = tsft.arity();
  const std::size_t h = u.height();

  // P = union over leaves w of u of w * leaves(T_w), with T_w a connecting
  // tree from u_w back to u_eps.
  Pattern seed = Pattern::FromBlock(cu);
  std::vector<Word> period;
  for (const Word& w : AllWords(d, h - 1)) {
    const Pattern tw = ConnectingTreeOrRefuse(trees, cu.at(w), cu.root(), core);
    Graft(seed, w, tw);
    for (const Word& leaf : tw.Leaves()) period.push_back(w + leaf);
  }
  for (const Word& x : period) seed.Place(x, cu);

  PeriodicTreeCertificate cert{u, CompletePrefixSet::FromWords(period, d),
                               core.ToOriginal(seed)};
  return cert;
}

PeriodicCheck VerifyPeriodic(const PeriodicTreeCertificate& cert,
                             const VertexTsft& tsft, std::size_t depth) {
  PeriodicCheck out;
  auto fail = [&](const Word& x, std::string why) {
    out.ok = false;
    out.node = x;
    out.reason = std::move(why);
    return out;
  };
  const unsigned d = tsft.arity();
  if (cert.period.arity() != d || cert.seed.arity() != d ||
      cert.block.arity() != d) {
    return fail(Word(), "arity differs from the shift");
  }
  if (!cert.seed.IsPrefixClosed()) {
    return fail(Word(), "seed support is not prefix-closed");
  }
  for (const Word& x : cert.period.words()) {
    if (x.empty()) return fail(x, "period contains the empty word");
  }
  const std::size_t h = cert.block.height();
  if (NodeCount(d, depth + 1) > kMaxUnrollNodes) {
    throw Error(ErrorCode::kLimitExceeded,
                "unrolling to depth " + std::to_string(depth) +
                    " exceeds the node cap");
  }

  // Required seed support: I(P) and P * Sigma_{h-1}.
  for (const Word& x : cert.period.words()) {
    for (std::size_t l = 0; l < x.size(); ++l) {
      if (!cert.seed.Contains(x.Prefix(l))) {
        return fail(x.Prefix(l), "seed misses an interior node of P");
      }
    }
    for (std::size_t l = 0; l < h; ++l) {
      for (const Word& z : AllWords(d, l)) {
        if (!cert.seed.Contains(x + z)) {
          return fail(x + z, "seed misses a node below P");
        }
      }
    }
  }

  // Unrolled labels in breadth-first order, nodes of length <= depth.
  const std::size_t nodes = NodeCount(d, depth + 1);
  std::vector<Symbol> label(nodes);
  std::vector<Word> words;
  words.reserve(nodes);
  for (std::size_t l = 0; l <= depth; ++l) {
    for (const Word& y : AllWords(d, l)) words.push_back(y);
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    try {
      label[i] = cert.LabelAt(words[i]);
    } catch (const Error& e) {
      return fail(words[i], e.what());
    }
    if (label[i] >= tsft.size()) return fail(words[i], "label out of range");
  }

  // (a) seeded nodes below P repeat the tree.
  for (const auto& [y, s] : cert.seed.labels()) {
    for (const Word& x : cert.period.words()) {
      if (!x.IsPrefixOf(y)) continue;
      const Word z = y.Suffix(x.size());
      Symbol expected;
      try {
        expected = cert.LabelAt(z);
      } catch (const Error& e) {
        return fail(y, e.what());
      }
      if (s != expected) {
        return fail(y, "seed label differs from the label at " +
                           (z.empty() ? std::string("the root") : z.ToString()));
      }
    }
  }
  // The tree restricted to Sigma_{h-1} is the block.
  for (std::size_t i = 0; i < NodeCount(d, h) && i < nodes; ++i) {
    if (label[i] != cert.block.labels()[i]) {
      return fail(words[i], "unrolled tree differs from the block");
    }
  }
  // (b) sigma_x t = t on the truncation.
  for (const Word& x : cert.period.words()) {
    for (std::size_t i = 0; i < nodes; ++i) {
      const Word& y = words[i];
      if (x.size() + y.size() > depth) break;
      if (label[NodeIndex(x + y, d)] != label[i]) {
        return fail(x + y, "shift by " + x.ToString() + " changes the label");
      }
    }
  }
  // (c) every edge of the truncation is allowed.
  for (std::size_t i = 0; i < nodes; ++i) {
    if (words[i].size() == depth) break;
    for (unsigned k = 0; k < d; ++k) {
      const std::size_t c = i * d + 1 + k;
      if (!tsft.Edge(label[i], static_cast<Direction>(k), label[c])) {
        return fail(words[c], "forbidden edge into this node");
      }
    }
  }
  return out;
}

DenseOrbitPrefix BuildDenseOrbitPrefix(const VertexTsft& tsft,
                                       const std::vector<Block>& targets,
                                       std::size_t max_nodes) {
  if (targets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no target blocks");
  }
  for (const Block& b : targets) {
    if (b.arity() != tsft.arity() || !BlockIsAllowed(b, tsft)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "target " + b.ToString() + " is not an allowed block");
    }
  }
  RequireIrreducible(tsft, "a dense orbit");
  const Core core(tsft);
  const TreeConnectivity trees(core.r.tsft);

  DenseOrbitPrefix out;
  Pattern p(tsft.arity());
  const Block first = core.ToCore(targets.front(), "target");
  p.Place(Word(), first);
  out.positions.push_back(Word());
  for (std::size_t t = 1; t < targets.size(); ++t) {
    const Block v = core.ToCore(targets[t], "target");
    std::optional<Word> placed;
    for (const Word& leaf : p.Leaves()) {
      const Pattern bridge =
          ConnectingTreeOrRefuse(trees, *p.Get(leaf), v.root(), core);
      Graft(p, leaf, bridge);
      for (const Word& end : bridge.Leaves()) {
        p.Place(leaf + end, v);
        if (!placed) placed = leaf + end;
      }
      if (p.size() > max_nodes) {
        throw Error(ErrorCode::kLimitExceeded,
                    "dense-orbit prefix exceeds " + std::to_string(max_nodes) +
                        " nodes");
      }
    }
    out.positions.push_back(*placed);
  }
  out.pattern = core.ToOriginal(p);
  return out;
}

EntropyEstimate EstimateEntropy(const VertexTsft& tsft, std::size_t m_max,
                                std::size_t digit_threshold) {
  if (m_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "m must be at least 1");
  }
  const Restriction core = LiveCore(tsft);
  const VertexTsft& x = core.tsft;
  if (x.empty()) {
    throw Error(ErrorCode::kEmptyShift, "the shift is empty; no entropy");
  }
  const std::size_t n = x.size();
  const unsigned d = x.arity();
  std::vector<std::vector<std::vector<Symbol>>> succ(n);
  for (Symbol a = 0; a < n; ++a) {
    for (unsigned k = 0; k < d; ++k) {
      succ[a].push_back(x.Successors(a, static_cast<Direction>(k)));
    }
  }

  EntropyEstimate est;
  est.digit_threshold = digit_threshold;
  std::vector<BigInt> exact(n, 1);
  std::vector<double> logs(n, 0.0);
  bool in_logs = false;
  for (std::size_t m = 1; m <= m_max; ++m) {
    if (m > 1) {
      if (!in_logs) {
        std::vector<BigInt> next(n);
        for (Symbol a = 0; a < n; ++a) {
          BigInt prod = 1;
          for (unsigned k = 0; k < d; ++k) {
            BigInt sum = 0;
            for (Symbol b : succ[a][k]) sum += exact[b];
            prod *= sum;
          }
          next[a] = prod;
        }
        exact = std::move(next);
      } else {
        std::vector<double> next(n);
        for (Symbol a = 0; a < n; ++a) {
          double total = 0;
          for (unsigned k = 0; k < d; ++k) {
            std::vector<double> terms;
            for (Symbol b : succ[a][k]) terms.push_back(logs[b]);
            total += LogSumExp(terms);
          }
          next[a] = total;
        }
        logs = std::move(next);
      }
    }
    EntropyRow row;
    row.m = m;
    if (!in_logs) {
      BigInt total = 0;
      for (const BigInt& v : exact) total += v;
      row.count = total;
      row.log_count = LogOf(total);
      if (mpz_sizeinbase(total.get_mpz_t(), 10) > digit_threshold) {
        in_logs = true;
        est.log_space_from = m + 1;
        for (Symbol a = 0; a < n; ++a) logs[a] = LogOf(exact[a]);
        exact.clear();
      }
    } else {
      row.log_count = LogSumExp(logs);
    }
    if (row.log_count > 0) row.h = std::log(row.log_count) / static_cast<double>(m);
    est.rows.push_back(std::move(row));
  }

  est.degenerate = std::none_of(est.rows.begin(), est.rows.end(),
                                [](const EntropyRow& r) { return r.h.has_value(); });
  if (est.degenerate) {
    est.limit = 0;
  } else if (est.rows.size() >= 2 && est.rows[est.rows.size() - 2].h) {
    const auto& last = est.rows.back();
    const auto& prev = est.rows[est.rows.size() - 2];
    est.limit = std::log(last.log_count) - std::log(prev.log_count);
  } else {
    est.limit = *est.rows.back().h;
  }
  return est;
}

const char* ChaosBasisName(ChaosBasis b) {
  switch (b) {
    case ChaosBasis::kNone:
      return "none";
    case ChaosBasis::kIrreducible:
      return "irreducible";
    case ChaosBasis::kMixing:
      return "mixing";
  }
  return "?";
}

ChaosReport AnalyzeChaos(const VertexTsft& tsft, const ChaosOptions& options) {
  ChaosReport report;
  report.irreducibility = DecideIrreducible(tsft, options.decide);
  report.mixing = DecideMixing(tsft, options.decide);
  const auto& irr = report.irreducibility;

  if (irr.verdict == Verdict::kEmptyShift) {
    report.reason = "the shift is empty";
    return report;
  }
  // One live symbol means exactly one tree; two live symbols give two trees.
  report.sensitivity_applies = irr.alphabet.size() >= 2;

  if (report.mixing.verdict == Verdict::kYes) {
    report.basis = ChaosBasis::kMixing;
  } else if (irr.verdict == Verdict::kYes) {
    report.basis = ChaosBasis::kIrreducible;
  }
  if (report.basis == ChaosBasis::kNone) {
    report.reason =
        "neither irreducible nor mixing; the sufficient conditions for chaos "
        "do not apply";
    return report;
  }
  if (!report.sensitivity_applies) {
    report.basis = ChaosBasis::kNone;
    report.reason =
        "the shift consists of a single tree, so sensitive dependence fails";
    return report;
  }
  if (!irr.tree_realizable) {
    report.basis = ChaosBasis::kNone;
    report.reason =
        "the per-word matrix criterion holds but some pair has no connecting "
        "tree, so no periodic or transitive tree can be built";
    return report;
  }

  for (Symbol s : irr.alphabet) {
    report.targets.push_back(Block(tsft.arity(), 1, {s}));
  }
  report.periodic = BuildPeriodicTree(tsft, report.targets.front());
  report.periodic_check =
      VerifyPeriodic(*report.periodic, tsft, options.verify_depth);
  report.orbit = BuildDenseOrbitPrefix(tsft, report.targets);
  report.chaotic = report.periodic_check->ok;
  report.reason =
      report.basis == ChaosBasis::kMixing
          ? "mixing: dense periodic trees, a dense orbit and sensitivity"
          : "irreducible: dense periodic trees, a dense orbit and sensitivity";
  if (!report.chaotic) {
    report.reason = "periodic certificate failed: " + report.periodic_check->reason;
    report.basis = ChaosBasis::kNone;
  }
  return report;
}

}  // namespace tsft
