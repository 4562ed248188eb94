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

#include "tsft/deciders.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tsft/error.hpp"

namespace tsft {
namespace {

using Mask = std::uint64_t;
constexpr std::size_t kMaxMaskSymbols = 64;
constexpr std::size_t kMaxWitnessWords = 1u << 20;

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t SaturatingPow2(std::size_t e) {
  return e >= 64 ? std::numeric_limits<std::uint64_t>::max()
                 : (std::uint64_t{1} << e);
}

Mask Bit(std::size_t i) { return Mask{1} << i; }

Mask FullMask(std::size_t n) { return n == 64 ? ~Mask{0} : Bit(n) - 1; }

void RequireMaskable(std::size_t n) {
  if (n > kMaxMaskSymbols) {
    throw Error(ErrorCode::kLimitExceeded,
                "deciders support at most 64 live symbols, got " +
                    std::to_string(n));
  }
}

// succ[k][a] = successor mask of a in direction k.
std::vector<std::vector<Mask>> SuccessorMasks(const VertexTsft& tsft) {
  std::vector<std::vector<Mask>> succ(tsft.arity(),
                                      std::vector<Mask>(tsft.size(), 0));
  for (unsigned k = 0; k < tsft.arity(); ++k) {
    for (std::size_t a = 0; a < tsft.size(); ++a) {
      for (std::size_t b = 0; b < tsft.size(); ++b) {
        if (tsft.Edge(static_cast<Symbol>(a), static_cast<Direction>(k),
                      static_cast<Symbol>(b))) {
          succ[k][a] |= Bit(b);
        }
      }
    }
  }
  return succ;
}

Mask StepMask(const std::vector<Mask>& succ_k, Mask from) {
  Mask out = 0;
  while (from != 0) {
    out |= succ_k[std::countr_zero(from)];
    from &= from - 1;
  }
  return out;
}

std::vector<Symbol> MaskSymbols(Mask m, const std::vector<Symbol>& relabel) {
  std::vector<Symbol> out;
  while (m != 0) {
    const auto i = static_cast<std::size_t>(std::countr_zero(m));
    out.push_back(relabel.empty() ? static_cast<Symbol>(i) : relabel[i]);
    m &= m - 1;
  }
  return out;
}

// Deterministic automaton explored breadth-first; ids follow discovery order
// so everything derived from it is reproducible.
template <typename State, typename Hash>
class Automaton {
 public:
  using StepFn = std::function<State(const State&, Direction)>;

  Automaton(unsigned arity, std::size_t max_states, StepFn step)
      : arity_(arity), max_states_(max_states), step_(std::move(step)) {}

  std::uint32_t Explore(const State& start) {
    const std::uint32_t root = Intern(start);
    while (!queue_.empty()) {
      const std::uint32_t s = queue_.front();
      queue_.pop_front();
      for (unsigned k = 0; k < arity_; ++k) {
        next_[s][k] = Intern(step_(states_[s], static_cast<Direction>(k)));
      }
    }
    return root;
  }

  std::size_t size() const { return states_.size(); }
  const State& state(std::uint32_t s) const { return states_[s]; }
  std::uint32_t next(std::uint32_t s, unsigned k) const { return next_[s][k]; }
  unsigned arity() const { return arity_; }

 private:
  std::uint32_t Intern(const State& s) {
    auto [it, inserted] =
        ids_.try_emplace(s, static_cast<std::uint32_t>(states_.size()));
    if (inserted) {
      if (states_.size() >= max_states_) {
        throw Error(ErrorCode::kLimitExceeded,
                    "state space exceeds " + std::to_string(max_states_) +
                        " states");
      }
      states_.push_back(s);
      next_.emplace_back(arity_, 0);
      queue_.push_back(it->second);
    }
    return it->second;
  }

  unsigned arity_;
  std::size_t max_states_;
  StepFn step_;
  std::vector<State> states_;
  std::vector<std::vector<std::uint32_t>> next_;
  std::unordered_map<State, std::uint32_t, Hash> ids_;
  std::deque<std::uint32_t> queue_;
};

// Least fixpoint: rank 0 for good states, rank r for states whose successors
// all have rank < r, -1 for states outside the closure.
template <typename A>
std::vector<int> Ranks(const A& automaton, const std::vector<bool>& good) {
  std::vector<int> rank(automaton.size(), -1);
  std::vector<std::uint32_t> pending;
  for (std::uint32_t s = 0; s < automaton.size(); ++s) {
    if (good[s]) {
      rank[s] = 0;
    } else {
      pending.push_back(s);
    }
  }
  for (int r = 1; !pending.empty(); ++r) {
    std::vector<std::uint32_t> now, rest;
    for (std::uint32_t s : pending) {
      bool ready = true;
      for (unsigned k = 0; k < automaton.arity() && ready; ++k) {
        ready = rank[automaton.next(s, k)] >= 0;
      }
      (ready ? now : rest).push_back(s);
    }
    if (now.empty()) break;
    for (std::uint32_t s : now) rank[s] = r;
    pending = std::move(rest);
  }
  return rank;
}

template <typename A>
bool StartAccepted(const A& automaton, const std::vector<int>& rank,
                   std::uint32_t start) {
  for (unsigned k = 0; k < automaton.arity(); ++k) {
    if (rank[automaton.next(start, k)] < 0) return false;
  }
  return true;
}

// Unwinds the fixpoint below `start`: every child is a leaf when good and is
// expanded otherwise. The start itself is always expanded.
template <typename A>
CompletePrefixSet UnwindCps(const A& automaton, const std::vector<int>& rank,
                            std::uint32_t start) {
  // Leaf counts first so runaway witnesses are refused before allocation.
  std::vector<std::uint64_t> leaves(automaton.size(), 0);
  std::vector<std::uint32_t> order(automaton.size());
  for (std::uint32_t s = 0; s < automaton.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return rank[a] < rank[b];
  });
  for (std::uint32_t s : order) {
    if (rank[s] < 0) continue;
    if (rank[s] == 0) {
      leaves[s] = 1;
      continue;
    }
    std::uint64_t total = 0;
    for (unsigned k = 0; k < automaton.arity(); ++k) {
      total = std::min<std::uint64_t>(total + leaves[automaton.next(s, k)],
                                      kMaxWitnessWords + 1);
    }
    leaves[s] = total;
  }
  std::uint64_t count = 0;
  for (unsigned k = 0; k < automaton.arity(); ++k) {
    count += leaves[automaton.next(start, k)];
  }
  if (count > kMaxWitnessWords) {
    throw Error(ErrorCode::kLimitExceeded,
                "witness would exceed " + std::to_string(kMaxWitnessWords) +
                    " words");
  }

  std::vector<Word> words;
  std::function<void(std::uint32_t, const Word&)> expand =
      [&](std::uint32_t s, const Word& x) {
        for (unsigned k = 0; k < automaton.arity(); ++k) {
          const std::uint32_t c = automaton.next(s, k);
          const Word xk = x.Child(static_cast<Direction>(k));
          if (rank[c] == 0) {
            words.push_back(xk);
          } else {
            expand(c, xk);
          }
        }
      };
  expand(start, Word());
  return CompletePrefixSet::FromWords(std::move(words), automaton.arity());
}

using SubsetAutomaton = Automaton<Mask, std::hash<Mask>>;

SubsetAutomaton MakeSubsetAutomaton(const VertexTsft& tsft,
                                    std::size_t max_states) {
  auto succ = SuccessorMasks(tsft);
  return SubsetAutomaton(
      tsft.arity(), max_states,
      [succ = std::move(succ)](const Mask& m, Direction k) {
        return StepMask(succ[k], m);
      });
}

std::vector<bool> ContainsSymbol(const SubsetAutomaton& a, std::size_t j) {
  std::vector<bool> good(a.size());
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    good[s] = (a.state(s) & Bit(j)) != 0;
  }
  return good;
}

// Zero-cycle search among states outside the closure. First the cycle form:
// a first letter k and a bad path from delta_k({i}) back to a state R with
// delta_k(R) = delta_k({i}). Otherwise a lasso along first bad directions.
std::optional<ZeroCycleWitness> ZeroCycleFrom(
    const SubsetAutomaton& a, const std::vector<int>& rank,
    std::uint32_t start, Symbol from, Symbol to,
    const std::vector<Symbol>& relabel) {
  auto finish = [&](std::vector<Direction> letters, std::size_t loop_start) {
    ZeroCycleWitness w;
    w.from = from;
    w.to = to;
    w.loop_start = loop_start;
    std::uint32_t s = start;
    for (Direction k : letters) {
      s = a.next(s, k);
      w.trace.push_back(MaskSymbols(a.state(s), relabel));
    }
    w.word = Word(std::move(letters));
    return w;
  };

  const unsigned d = a.arity();
  for (unsigned k = 0; k < d; ++k) {
    const std::uint32_t s1 = a.next(start, k);
    if (rank[s1] >= 0) continue;
    std::unordered_map<std::uint32_t, std::pair<std::uint32_t, Direction>>
        parent;
    std::deque<std::uint32_t> queue{s1};
    parent.emplace(s1, std::make_pair(s1, Direction{0}));
    while (!queue.empty()) {
      const std::uint32_t r = queue.front();
      queue.pop_front();
      if (a.next(r, k) == s1) {
        std::vector<Direction> path;
        for (std::uint32_t v = r; v != s1; v = parent.at(v).first) {
          path.push_back(parent.at(v).second);
        }
        std::vector<Direction> letters{static_cast<Direction>(k)};
        letters.insert(letters.end(), path.rbegin(), path.rend());
        letters.push_back(static_cast<Direction>(k));
        return finish(std::move(letters), 1);
      }
      for (unsigned m = 0; m < d; ++m) {
        const std::uint32_t c = a.next(r, m);
        if (rank[c] >= 0 || parent.count(c)) continue;
        parent.emplace(c, std::make_pair(r, static_cast<Direction>(m)));
        queue.push_back(c);
      }
    }
  }

  for (unsigned k = 0; k < d; ++k) {
    std::uint32_t s = a.next(start, k);
    if (rank[s] >= 0) continue;
    std::vector<Direction> letters{static_cast<Direction>(k)};
    std::unordered_map<std::uint32_t, std::size_t> seen{{s, 1}};
    for (;;) {
      bool moved = false;
      for (unsigned m = 0; m < d && !moved; ++m) {
        const std::uint32_t c = a.next(s, m);
        if (rank[c] >= 0) continue;
        letters.push_back(static_cast<Direction>(m));
        s = c;
        moved = true;
      }
      if (!moved) break;  // impossible: a bad state has a bad successor
      auto [it, inserted] = seen.try_emplace(s, letters.size());
      if (!inserted) return finish(std::move(letters), it->second);
    }
  }
  return std::nullopt;
}

// Boolean matrix as row masks.
using RowMatrix = std::vector<Mask>;

struct RowMatrixHash {
  std::size_t operator()(const RowMatrix& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Mask r : m) h = (h ^ std::hash<Mask>{}(r)) * 0x100000001b3ull;
    return h;
  }
};

// Type of a finite full tree shape w.r.t. every leaf label at once:
// q[j] = roots a from which the shape can be labeled with all leaves = j.
using ShapeType = std::vector<Mask>;

std::optional<bool> TreeMixing(const VertexTsft& tsft, std::size_t cap) {
  const std::size_t n = tsft.size();
  const unsigned d = tsft.arity();
  const auto succ = SuccessorMasks(tsft);
  const Mask full = FullMask(n);

  ShapeType leaf(n);
  for (std::size_t j = 0; j < n; ++j) leaf[j] = Bit(j);
  std::set<ShapeType> types{leaf};
  std::vector<ShapeType> list{leaf};

  auto combine = [&](const std::vector<std::size_t>& pick) {
    ShapeType out(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      Mask roots = full;
      for (unsigned k = 0; k < d; ++k) {
        const Mask children = list[pick[k]][j];
        Mask ok = 0;
        for (std::size_t a = 0; a < n; ++a) {
          if (succ[k][a] & children) ok |= Bit(a);
        }
        roots &= ok;
      }
      out[j] = roots;
    }
    return out;
  };

  for (;;) {
    const std::size_t m = list.size();
    double combos = 1;
    for (unsigned k = 0; k < d; ++k) combos *= static_cast<double>(m);
    if (combos > static_cast<double>(cap) * static_cast<double>(cap)) {
      return std::nullopt;
    }
    std::vector<ShapeType> fresh;
    std::vector<std::size_t> pick(d, 0);
    for (;;) {
      ShapeType t = combine(pick);
      if (std::all_of(t.begin(), t.end(), [&](Mask q) { return q == full; })) {
        return true;
      }
      if (!types.count(t)) {
        types.insert(t);
        fresh.push_back(std::move(t));
      }
      unsigned k = 0;
      while (k < d && ++pick[k] == m) pick[k++] = 0;
      if (k == d) break;
    }
    if (fresh.empty()) return false;
    list.insert(list.end(), fresh.begin(), fresh.end());
    if (list.size() > cap) return std::nullopt;
  }
}

std::string PairName(Symbol i, Symbol j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kYes:
      return "yes";
    case Verdict::kNo:
      return "no";
    case Verdict::kEmptyShift:
      return "empty shift";
  }
  return "?";
}

std::uint64_t IrreducibilityDepthBound(std::size_t n) {
  if (n == 0) return 0;
  return SaturatingMul(n, SaturatingPow2(n - 1));
}

std::uint64_t MixingDepthBound(std::size_t n) {
  if (n == 0) return 0;
  const std::uint64_t cube = SaturatingMul(SaturatingMul(n, n), n);
  return SaturatingMul(cube, SaturatingPow2(2 * (n - 1)));
}

std::optional<ZeroCycleWitness> FindZeroCycle(const VertexTsft& tsft,
                                              Symbol from, Symbol to,
                                              std::size_t max_states) {
  if (from >= tsft.size() || to >= tsft.size()) {
    throw Error(ErrorCode::kInvalidArgument, "symbol out of range");
  }
  RequireMaskable(tsft.size());
  SubsetAutomaton a = MakeSubsetAutomaton(tsft, max_states);
  const std::uint32_t start = a.Explore(Bit(from));
  const auto rank = Ranks(a, ContainsSymbol(a, to));
  if (StartAccepted(a, rank, start)) return std::nullopt;
  return ZeroCycleFrom(a, rank, start, from, to, {});
}

IrreducibilityReport DecideIrreducible(const VertexTsft& tsft,
                                       const DecideOptions& options) {
  IrreducibilityReport report;
  report.size_mismatch = tsft.size_mismatch();

  if (report.size_mismatch) {
    report.verdict = Verdict::kNo;
    report.reason =
        "adjacency matrices have unequal sizes; an irreducible vertex "
        "tree-shift needs all of them of one size";
    // Evidence, when the live part fails too, refers to the live core.
    const Restriction core = LiveCore(tsft);
    report.alphabet = core.kept;
    report.removed = core.removed;
    report.depth_bound = IrreducibilityDepthBound(core.tsft.size());
    const std::size_t n = core.tsft.size();
    if (n <= kMaxMaskSymbols) {
      for (Symbol i = 0; i < n && !report.counterexample; ++i) {
        for (Symbol j = 0; j < n && !report.counterexample; ++j) {
          report.counterexample =
              FindZeroCycle(core.tsft, i, j, options.max_states);
        }
      }
    }
    if (report.counterexample) {
      auto& w = *report.counterexample;
      w.from = core.kept[w.from];
      w.to = core.kept[w.to];
      for (auto& state : w.trace) {
        for (Symbol& s : state) s = core.kept[s];
      }
    }
    return report;
  }

  const Restriction core = LiveCore(tsft);
  report.alphabet = core.kept;
  report.removed = core.removed;
  const std::size_t n = core.tsft.size();
  report.depth_bound = IrreducibilityDepthBound(n);
  if (n == 0) {
    report.verdict = Verdict::kEmptyShift;
    report.reason = "no symbol labels an infinite tree; the shift is empty";
    return report;
  }
  RequireMaskable(n);

  SubsetAutomaton a = MakeSubsetAutomaton(core.tsft, options.max_states);
  std::vector<std::uint32_t> starts(n);
  for (std::size_t i = 0; i < n; ++i) starts[i] = a.Explore(Bit(i));
  report.states_explored = a.size();

  std::vector<PairWitness> pairs(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto rank = Ranks(a, ContainsSymbol(a, j));
    for (std::size_t i = 0; i < n; ++i) {
      PairWitness& p = pairs[i * n + j];
      p.from = core.kept[i];
      p.to = core.kept[j];
      if (StartAccepted(a, rank, starts[i])) {
        p.cps = UnwindCps(a, rank, starts[i]);
        report.max_witness_length =
            std::max(report.max_witness_length, p.cps->length());
      } else {
        p.cycle = ZeroCycleFrom(a, rank, starts[i], p.from, p.to, core.kept);
      }
    }
  }
  report.pairs = std::move(pairs);

  const PairWitness* failing = nullptr;
  for (const PairWitness& p : report.pairs) {
    if (!p.cps) {
      failing = &p;
      break;
    }
  }
  if (failing == nullptr) {
    report.verdict = Verdict::kYes;
    report.reason =
        "every ordered pair (i, j) has a complete prefix set P with "
        "A_x(i, j) > 0 for all x in P";
  } else {
    report.verdict = Verdict::kNo;
    report.counterexample = failing->cycle;
    report.reason = "pair " + PairName(failing->from, failing->to) +
                    (failing->cycle
                         ? " has a zero-cycle: along its word no prefix "
                           "reaches the target"
                         : " fails the complete-prefix-set criterion; "
                           "witness unavailable");
  }

  const TreeConnectivity trees(core.tsft);
  report.tree_realizable = trees.AllConnected();
  for (Symbol i = 0; i < n; ++i) {
    for (Symbol j = 0; j < n; ++j) {
      if (auto trap = trees.Trap(i, j)) {
        trap->from = core.kept[trap->from];
        trap->to = core.kept[trap->to];
        for (Symbol& s : trap->trap) s = core.kept[s];
        report.traps.push_back(std::move(*trap));
      }
    }
  }
  return report;
}

MixingReport DecideMixing(const VertexTsft& tsft,
                          const DecideOptions& options) {
  MixingReport report;
  report.size_mismatch = tsft.size_mismatch();
  if (report.size_mismatch) {
    report.verdict = Verdict::kNo;
    report.reason =
        "adjacency matrices have unequal sizes; the shift is not irreducible "
        "and hence not mixing";
    const Restriction core = LiveCore(tsft);
    report.alphabet = core.kept;
    report.removed = core.removed;
    report.depth_bound = MixingDepthBound(core.tsft.size());
    return report;
  }

  const Restriction core = LiveCore(tsft);
  report.alphabet = core.kept;
  report.removed = core.removed;
  const std::size_t n = core.tsft.size();
  report.depth_bound = MixingDepthBound(n);
  if (n == 0) {
    report.verdict = Verdict::kEmptyShift;
    report.reason = "no symbol labels an infinite tree; the shift is empty";
    return report;
  }
  RequireMaskable(n);

  const auto succ = SuccessorMasks(core.tsft);
  const Mask full = FullMask(n);
  Automaton<RowMatrix, RowMatrixHash> a(
      core.tsft.arity(), options.max_states,
      [&succ](const RowMatrix& b, Direction k) {
        RowMatrix out(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
          out[i] = StepMask(succ[k], b[i]);
        }
        return out;
      });
  RowMatrix identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = Bit(i);
  const std::uint32_t start = a.Explore(identity);
  report.states_explored = a.size();

  std::vector<bool> good(a.size());
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    const RowMatrix& b = a.state(s);
    good[s] = std::all_of(b.begin(), b.end(), [&](Mask r) { return r == full; });
  }
  const auto rank = Ranks(a, good);
  if (StartAccepted(a, rank, start)) {
    report.verdict = Verdict::kYes;
    report.witness = UnwindCps(a, rank, start);
    report.uniform_depth = report.witness->length();
    report.reason =
        "one complete prefix set P has A_x(i, j) > 0 for all x in P and all "
        "pairs (i, j)";
  } else {
    report.verdict = Verdict::kNo;
    report.reason =
        "some infinite word keeps a zero entry in every prefix matrix A_x, "
        "so no complete prefix set makes all entries positive";
  }
  report.tree_mixing = TreeMixing(core.tsft, options.tree_type_cap);
  return report;
}

std::optional<bool> Commuting2x2Shortcut(const VertexTsft& tsft) {
  if (tsft.size() != 2 || tsft.arity() != 2 || tsft.size_mismatch()) {
    return std::nullopt;
  }
  const BoolMatrix& a0 = tsft.matrix(0);
  const BoolMatrix& a1 = tsft.matrix(1);
  if (!a0.IsIrreducible() || !a1.IsIrreducible()) return std::nullopt;
  if (WordMatrix(tsft, Word::Parse("01")) != WordMatrix(tsft, Word::Parse("10"))) {
    return std::nullopt;
  }
  return true;
}

TreeConnectivity::TreeConnectivity(const VertexTsft& tsft) : tsft_(&tsft) {
  const std::size_t n = tsft.size();
  const unsigned d = tsft.arity();
  rank_.assign(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto& rank = rank_[j];
    for (std::size_t r = 1;; ++r) {
      std::vector<std::size_t> now;
      for (std::size_t a = 0; a < n; ++a) {
        if (rank[a]) continue;
        bool ok = true;
        for (unsigned k = 0; k < d && ok; ++k) {
          ok = false;
          for (Symbol c : tsft.Successors(static_cast<Symbol>(a),
                                          static_cast<Direction>(k))) {
            if (c == j || (rank[c] && *rank[c] < r)) {
              ok = true;
              break;
            }
          }
        }
        if (ok) now.push_back(a);
      }
      if (now.empty()) break;
      for (std::size_t a : now) rank[a] = r;
    }
  }
}

bool TreeConnectivity::AllConnected() const {
  for (const auto& row : rank_) {
    for (const auto& r : row) {
      if (!r) return false;
    }
  }
  return !rank_.empty();
}

std::optional<Pattern> TreeConnectivity::ConnectingTree(Symbol from,
                                                        Symbol to) const {
  if (!Connected(from, to)) return std::nullopt;
  const auto& rank = rank_[to];
  const unsigned d = tsft_->arity();
  Pattern tree(d);
  std::function<void(const Word&, Symbol)> grow = [&](const Word& x,
                                                      Symbol a) {
    for (unsigned k = 0; k < d; ++k) {
      const Word xk = x.Child(static_cast<Direction>(k));
      std::optional<Symbol> best;
      for (Symbol c : tsft_->Successors(a, static_cast<Direction>(k))) {
        if (c == to) {
          best = c;
          break;
        }
        if (rank[c] && *rank[c] < *rank[a] &&
            (!best || *rank[c] < *rank[*best])) {
          best = c;
        }
      }
      tree.Set(xk, *best);
      if (*best != to) grow(xk, *best);
    }
  };
  tree.Set(Word(), from);
  grow(Word(), from);
  return tree;
}

std::optional<TrapWitness> TreeConnectivity::Trap(Symbol from,
                                                  Symbol to) const {
  if (Connected(from, to)) return std::nullopt;
  const auto& rank = rank_[to];
  const unsigned d = tsft_->arity();
  TrapWitness t;
  t.from = from;
  t.to = to;
  for (Symbol a = 0; a < tsft_->size(); ++a) {
    if (rank[a]) continue;
    t.trap.push_back(a);
    for (unsigned k = 0; k < d; ++k) {
      bool escapes = true;
      for (Symbol c : tsft_->Successors(a, static_cast<Direction>(k))) {
        if (c == to || rank[c]) {
          escapes = false;
          break;
        }
      }
      if (escapes) {
        t.escape.push_back(static_cast<Direction>(k));
        break;
      }
    }
  }
  return t;
}

BruteForceResult BruteForceIrreducible(const VertexTsft& tsft,
                                       std::size_t height,
                                       std::size_t depth_cap,
                                       std::size_t block_cap) {
  if (height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "block height must be >= 1");
  }
  if (depth_cap > kMaxOracleDepth) {
    throw Error(ErrorCode::kLimitExceeded,
                "oracle depth above " + std::to_string(kMaxOracleDepth));
  }
  const Restriction core = LiveCore(tsft);
  const VertexTsft& x = core.tsft;
  const std::size_t n = x.size();
  const unsigned d = x.arity();
  BlockCounts counts = EnumerateBlocks(x, height, block_cap);
  if (counts.total > block_cap) {
    throw Error(ErrorCode::kLimitExceeded,
                "more than " + std::to_string(block_cap) + " blocks of height " +
                    std::to_string(height));
  }
  const std::vector<Block> blocks = counts.blocks.value_or(std::vector<Block>{});

  // reach[t][a][b]: a tree below a node labeled a puts t at every leaf of a
  // CPS of relative depth in [1, b]. Explicit search, memoized per state.
  std::vector<std::vector<std::vector<signed char>>> memo(
      n, std::vector<std::vector<signed char>>(
             n, std::vector<signed char>(depth_cap + 1, -1)));
  std::function<bool(Symbol, Symbol, std::size_t)> reach =
      [&](Symbol target, Symbol a, std::size_t budget) -> bool {
    if (budget == 0) return false;
    signed char& m = memo[target][a][budget];
    if (m >= 0) return m != 0;
    bool all = true;
    for (unsigned k = 0; k < d && all; ++k) {
      bool some = false;
      for (Symbol c : x.Successors(a, static_cast<Direction>(k))) {
        if (c == target || reach(target, c, budget - 1)) {
          some = true;
          break;
        }
      }
      all = some;
    }
    m = all ? 1 : 0;
    return all;
  };

  auto relabel = [&](const Block& b) {
    std::vector<Symbol> labels = b.labels();
    for (Symbol& s : labels) s = core.kept[s];
    return Block(b.arity(), b.height(), std::move(labels));
  };

  BruteForceResult result;
  const std::vector<Word> frontier = AllWords(d, height - 1);
  const std::size_t budget =
      depth_cap >= height - 1 ? depth_cap - (height - 1) : 0;
  for (const Block& u : blocks) {
    for (const Block& v : blocks) {
      ++result.pairs_checked;
      bool ok = true;
      for (const Word& w : frontier) {
        if (!reach(v.root(), u.at(w), budget)) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        result.all_connected = false;
        result.failure = std::make_pair(relabel(u), relabel(v));
        return result;
      }
    }
  }
  if (blocks.empty()) result.all_connected = n > 0;
  return result;
}

namespace {

std::optional<std::string> CheckPairCpsOnCore(const VertexTsft& tsft, Symbol from,
                                        Symbol to,
                                        const CompletePrefixSet& p) {
  if (from >= tsft.size() || to >= tsft.size()) {
    return "pair " + PairName(from, to) + " out of range";
  }
  if (p.arity() != tsft.arity()) return std::string("CPS arity mismatch");
  if (!IsCompletePrefixSet(p.words(), tsft.arity())) {
    return std::string("not a complete prefix set");
  }
  for (const Word& x : p.words()) {
    if (x.empty()) return std::string("witness contains the empty word");
    std::vector<bool> state(tsft.size(), false);
    state[from] = true;
    for (Direction k : x.letters()) {
      if (k >= tsft.arity()) return "letter out of range in " + x.ToString();
      state = StepSet(tsft, state, k);
    }
    if (!state[to]) {
      return "A_" + x.ToString() + PairName(from, to) + " = 0";
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckMixingCpsOnCore(const VertexTsft& tsft,
                                          const CompletePrefixSet& p) {
  if (p.arity() != tsft.arity()) return std::string("CPS arity mismatch");
  if (!IsCompletePrefixSet(p.words(), tsft.arity())) {
    return std::string("not a complete prefix set");
  }
  for (const Word& x : p.words()) {
    if (x.empty()) return std::string("witness contains the empty word");
    BoolMatrix b = BoolMatrix::Identity(tsft.size());
    for (Direction k : x.letters()) {
      if (k >= tsft.arity()) return "letter out of range in " + x.ToString();
      b = b * tsft.matrix(k);
    }
    for (Symbol i = 0; i < tsft.size(); ++i) {
      for (Symbol j = 0; j < tsft.size(); ++j) {
        if (!b(i, j)) return "A_" + x.ToString() + PairName(i, j) + " = 0";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckZeroCycleOnCore(const VertexTsft& tsft,
                                          const ZeroCycleWitness& w) {
  if (w.from >= tsft.size() || w.to >= tsft.size()) {
    return "pair " + PairName(w.from, w.to) + " out of range";
  }
  if (w.word.size() < 2) return std::string("cycle word shorter than 2");
  if (w.loop_start < 1 || w.loop_start >= w.word.size()) {
    return std::string("loop start out of range");
  }
  if (!w.trace.empty() && w.trace.size() != w.word.size()) {
    return std::string("trace length differs from word length");
  }
  std::vector<bool> state(tsft.size(), false);
  state[w.from] = true;
  std::vector<std::vector<bool>> seen;
  for (std::size_t p = 0; p < w.word.size(); ++p) {
    const Direction k = w.word[p];
    if (k >= tsft.arity()) return std::string("letter out of range");
    state = StepSet(tsft, state, k);
    const std::string prefix = w.word.Prefix(p + 1).ToString();
    if (state[w.to]) {
      return "A_" + prefix + PairName(w.from, w.to) + " > 0";
    }
    if (!w.trace.empty()) {
      std::vector<bool> claimed(tsft.size(), false);
      for (Symbol s : w.trace[p]) {
        if (s >= tsft.size()) return "trace symbol out of range at " + prefix;
        claimed[s] = true;
      }
      if (claimed != state) return "trace disagrees at prefix " + prefix;
    }
    seen.push_back(state);
  }
  if (seen.back() != seen[w.loop_start - 1]) {
    return std::string("final state differs from the loop start state");
  }
  return std::nullopt;
}

std::optional<std::string> CheckTrapOnCore(const VertexTsft& tsft,
                                     const TrapWitness& t) {
  if (t.from >= tsft.size() || t.to >= tsft.size()) {
    return "pair " + PairName(t.from, t.to) + " out of range";
  }
  if (t.trap.size() != t.escape.size()) {
    return std::string("trap and escape lists differ in length");
  }
  std::vector<bool> member(tsft.size(), false);
  for (Symbol a : t.trap) {
    if (a >= tsft.size()) return std::string("trap symbol out of range");
    member[a] = true;
  }
  if (!member[t.from]) return std::string("trap does not contain the root");
  for (std::size_t i = 0; i < t.trap.size(); ++i) {
    if (t.escape[i] >= tsft.arity()) return std::string("escape out of range");
    for (Symbol c : tsft.Successors(t.trap[i], t.escape[i])) {
      if (c == t.to || !member[c]) {
        return "symbol " + std::to_string(t.trap[i]) + " escapes to " +
               std::to_string(c) + " in direction " +
               std::to_string(t.escape[i]);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckConnectingTreeOnCore(const VertexTsft& tsft,
                                               Symbol from, Symbol to,
                                               const Pattern& tree) {
  if (tree.arity() != tsft.arity()) return std::string("arity mismatch");
  if (tree.Get(Word()) != from) return std::string("root label differs");
  if (tree.size() < 2) return std::string("tree has no leaves below the root");
  if (!tree.IsPrefixClosed() || !tree.IsFull()) {
    return std::string("support is not a full prefix-closed tree");
  }
  for (const auto& [x, s] : tree.labels()) {
    if (s >= tsft.size()) return "label out of range at " + x.ToString();
    if (x.empty()) continue;
    const Symbol parent = *tree.Get(x.Prefix(x.size() - 1));
    if (!tsft.Edge(parent, x.back(), s)) {
      return "forbidden edge into node " + x.ToString();
    }
  }
  for (const Word& leaf : tree.Leaves()) {
    if (tree.Get(leaf) != to) return "leaf " + leaf.ToString() + " not labeled target";
  }
  return std::nullopt;
}

// Evidence refers to the live core; dead symbols cannot occur in any tree.
struct CoreView {
  Restriction core;
  std::vector<std::optional<Symbol>> index;  // original -> core

  explicit CoreView(const VertexTsft& tsft)
      : core(LiveCore(tsft)), index(tsft.size()) {
    for (std::size_t i = 0; i < core.kept.size(); ++i) {
      index[core.kept[i]] = static_cast<Symbol>(i);
    }
  }
  std::optional<Symbol> Map(Symbol s) const {
    return s < index.size() ? index[s] : std::nullopt;
  }
};

std::string NotLive(Symbol s) {
  return "symbol " + std::to_string(s) + " is out of range or labels no tree";
}

}  // namespace

std::optional<std::string> CheckPairCps(const VertexTsft& tsft, Symbol from,
                                        Symbol to,
                                        const CompletePrefixSet& p) {
  const CoreView v(tsft);
  const auto i = v.Map(from), j = v.Map(to);
  if (!i) return NotLive(from);
  if (!j) return NotLive(to);
  auto err = CheckPairCpsOnCore(v.core.tsft, *i, *j, p);
  if (err) return "pair " + PairName(from, to) + ": " + *err;
  return std::nullopt;
}

std::optional<std::string> CheckMixingCps(const VertexTsft& tsft,
                                          const CompletePrefixSet& p) {
  const CoreView v(tsft);
  if (v.core.tsft.empty()) return std::string("empty shift");
  return CheckMixingCpsOnCore(v.core.tsft, p);
}

std::optional<std::string> CheckZeroCycle(const VertexTsft& tsft,
                                          const ZeroCycleWitness& w) {
  const CoreView v(tsft);
  ZeroCycleWitness c = w;
  const auto i = v.Map(w.from), j = v.Map(w.to);
  if (!i) return NotLive(w.from);
  if (!j) return NotLive(w.to);
  c.from = *i;
  c.to = *j;
  for (auto& state : c.trace) {
    for (Symbol& s : state) {
      const auto m = v.Map(s);
      if (!m) return "trace: " + NotLive(s);
      s = *m;
    }
  }
  return CheckZeroCycleOnCore(v.core.tsft, c);
}

std::optional<std::string> CheckTrap(const VertexTsft& tsft,
                                     const TrapWitness& t) {
  const CoreView v(tsft);
  TrapWitness c = t;
  const auto i = v.Map(t.from), j = v.Map(t.to);
  if (!i) return NotLive(t.from);
  if (!j) return NotLive(t.to);
  c.from = *i;
  c.to = *j;
  for (Symbol& s : c.trap) {
    const auto m = v.Map(s);
    if (!m) return "trap: " + NotLive(s);
    s = *m;
  }
  return CheckTrapOnCore(v.core.tsft, c);
}

std::optional<std::string> CheckConnectingTree(const VertexTsft& tsft,
                                               Symbol from, Symbol to,
                                               const Pattern& tree) {
  const CoreView v(tsft);
  const auto i = v.Map(from), j = v.Map(to);
  if (!i) return NotLive(from);
  if (!j) return NotLive(to);
  Pattern c(tree.arity());
  for (const auto& [x, s] : tree.labels()) {
    const auto m = v.Map(s);
    if (!m) return "node " + x.ToString() + ": " + NotLive(s);
    if (x.empty() || c.Contains(x.Prefix(x.size() - 1))) {
      c.Set(x, *m);
    } else {
      return std::string("support is not prefix-closed");
    }
  }
  return CheckConnectingTreeOnCore(v.core.tsft, *i, *j, c);
}

}  // namespace tsft
