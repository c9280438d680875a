// Copyright 2026 The dashmip Authors.
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

#include "dash/heuristics.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "dash/mip_problem.h"

namespace dash {

std::string_view HeuristicName(Heuristic h) {
  switch (h) {
    case Heuristic::kMostFractional: return "mf";
    case Heuristic::kLeastFractional: return "lf";
    case Heuristic::kLeastFracHighObj: return "lfho";
    case Heuristic::kMostFracHighObj: return "mfho";
    case Heuristic::kPseudocostWeighted: return "pw";
    case Heuristic::kPseudocostProduct: return "p";
  }
  return "?";
}

std::optional<Heuristic> ParseHeuristic(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  for (Heuristic h : kAllHeuristics) {
    if (lower == HeuristicName(h)) return h;
  }
  int id = -1;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
  if (ec == std::errc() && ptr == text.data() + text.size() && id >= 0 &&
      id < kNumHeuristics) {
    return static_cast<Heuristic>(id);
  }
  return std::nullopt;
}

Heuristic HeuristicFromId(int id) {
  DASH_CHECK(id >= 0 && id < kNumHeuristics,
             "heuristic id " + std::to_string(id) + " out of range [0, 5]");
  return static_cast<Heuristic>(id);
}

double Candidate::frac_part() const { return value - std::floor(value); }

double Candidate::fractionality() const {
  const double f = frac_part();
  return std::min(f, 1.0 - f);
}

Direction NearestDirection(double frac_part) {
  return frac_part > 0.5 ? Direction::kUp : Direction::kDown;
}

namespace {

// Returns true when `a` should replace the current best `b`, given that
// larger keys are better. Keys compare lexicographically with tolerance, then
// by lower variable index.
template <size_t N>
bool Better(const std::array<double, N>& a, int a_var,
            const std::array<double, N>& b, int b_var) {
  for (size_t k = 0; k < N; ++k) {
    if (a[k] > b[k] + kTieTolerance) return true;
    if (a[k] < b[k] - kTieTolerance) return false;
  }
  return a_var < b_var;
}

template <size_t N, typename KeyFn>
BranchChoice ArgBest(std::span<const Candidate> candidates, KeyFn key) {
  DASH_CHECK(!candidates.empty(), "branching needs at least one candidate");
  size_t best = 0;
  std::array<double, N> best_key = key(candidates[0]);
  for (size_t i = 1; i < candidates.size(); ++i) {
    const std::array<double, N> k = key(candidates[i]);
    if (Better(k, candidates[i].var, best_key, candidates[best].var)) {
      best = i;
      best_key = k;
    }
  }
  const Candidate& c = candidates[best];
  return {c.var, NearestDirection(c.frac_part())};
}

}  // namespace

BranchChoice SelectMostFractional(std::span<const Candidate> candidates) {
  return ArgBest<1>(candidates, [](const Candidate& c) {
    return std::array<double, 1>{-std::abs(c.frac_part() - 0.5)};
  });
}

BranchChoice SelectLeastFractional(std::span<const Candidate> candidates) {
  return ArgBest<1>(candidates, [](const Candidate& c) {
    return std::array<double, 1>{std::abs(c.frac_part() - 0.5)};
  });
}

BranchChoice SelectLeastFracHighObj(std::span<const Candidate> candidates) {
  return ArgBest<2>(candidates, [](const Candidate& c) {
    return std::array<double, 2>{-c.fractionality(), c.obj};
  });
}

BranchChoice SelectMostFracHighObj(std::span<const Candidate> candidates) {
  return ArgBest<2>(candidates, [](const Candidate& c) {
    return std::array<double, 2>{c.fractionality(), c.obj};
  });
}

double ScoreWeighted(double q_minus, double q_plus) {
  return (1.0 - kScoreWeight) * std::min(q_minus, q_plus) +
         kScoreWeight * std::max(q_minus, q_plus);
}

double ScoreProduct(double q_minus, double q_plus) {
  return std::max(q_minus, kProductEpsilon) * std::max(q_plus, kProductEpsilon);
}

PseudocostTable::PseudocostTable(int num_vars) : entries_(num_vars) {}

double PseudocostTable::down(int var) const {
  const Entry& e = entries_[var];
  return e.down_count > 0 ? e.down_sum / e.down_count : kDefaultPseudocost;
}

double PseudocostTable::up(int var) const {
  const Entry& e = entries_[var];
  return e.up_count > 0 ? e.up_sum / e.up_count : kDefaultPseudocost;
}

void PseudocostTable::Update(int var, Direction direction, double parent_obj,
                             double child_obj, double frac_part) {
  DASH_CHECK(frac_part > 0.0 && frac_part < 1.0,
             "pseudocost update needs a fractional part in (0, 1)");
  const double degradation = std::abs(parent_obj - child_obj);
  Entry& e = entries_[var];
  if (direction == Direction::kDown) {
    e.down_sum += degradation / frac_part;
    ++e.down_count;
  } else {
    e.up_sum += degradation / (1.0 - frac_part);
    ++e.up_count;
  }
}

BranchChoice SelectPseudocost(std::span<const Candidate> candidates,
                              const PseudocostTable& table,
                              ScoreFunction score) {
  DASH_CHECK(!candidates.empty(), "branching needs at least one candidate");
  size_t best = 0;
  double best_score = -kInfinity;
  Direction best_first = Direction::kDown;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    const double f = c.frac_part();
    const double down = table.down(c.var) * f;
    const double up = table.up(c.var) * (1.0 - f);
    const double s = score(down, up);
    const bool better =
        i == 0 || s > best_score + kTieTolerance ||
        (s >= best_score - kTieTolerance && c.var < candidates[best].var);
    if (better) {
      best = i;
      best_score = s;
      best_first = up < down ? Direction::kUp : Direction::kDown;
    }
  }
  return {candidates[best].var, best_first};
}

BranchChoice SelectBranch(Heuristic heuristic,
                          std::span<const Candidate> candidates,
                          const PseudocostTable& table) {
  switch (heuristic) {
    case Heuristic::kMostFractional: return SelectMostFractional(candidates);
    case Heuristic::kLeastFractional: return SelectLeastFractional(candidates);
    case Heuristic::kLeastFracHighObj: return SelectLeastFracHighObj(candidates);
    case Heuristic::kMostFracHighObj: return SelectMostFracHighObj(candidates);
    case Heuristic::kPseudocostWeighted:
      return SelectPseudocost(candidates, table, &ScoreWeighted);
    case Heuristic::kPseudocostProduct:
      return SelectPseudocost(candidates, table, &ScoreProduct);
  }
  throw ContractViolation("unknown heuristic");
}

}  // namespace dash
