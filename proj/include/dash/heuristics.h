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

// The six branching heuristics of the portfolio and their shared pseudocost
// bookkeeping.
//
// Every selector returns the branching variable together with the child to
// explore first. All ties break to the lowest variable index; two scores are
// tied when they differ by at most kTieTolerance.

#ifndef DASH_HEURISTICS_H_
#define DASH_HEURISTICS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dash {

// Stable ids; the numeric values appear in model files and logs.
enum class Heuristic : int {
  kMostFractional = 0,       // MF
  kLeastFractional = 1,      // LF
  kLeastFracHighObj = 2,     // LFHO
  kMostFracHighObj = 3,      // MFHO
  kPseudocostWeighted = 4,   // PW
  kPseudocostProduct = 5,    // P
};

inline constexpr int kNumHeuristics = 6;
inline constexpr std::array<Heuristic, kNumHeuristics> kAllHeuristics = {
    Heuristic::kMostFractional,     Heuristic::kLeastFractional,
    Heuristic::kLeastFracHighObj,   Heuristic::kMostFracHighObj,
    Heuristic::kPseudocostWeighted, Heuristic::kPseudocostProduct};

inline constexpr double kTieTolerance = 1e-9;

// Short lowercase names: mf, lf, lfho, mfho, pw, p.
std::string_view HeuristicName(Heuristic h);
// Accepts the short names (case-insensitive) or the numeric id.
std::optional<Heuristic> ParseHeuristic(std::string_view text);
inline int HeuristicId(Heuristic h) { return static_cast<int>(h); }
Heuristic HeuristicFromId(int id);

enum class Direction { kDown, kUp };

struct Candidate {
  int var = 0;
  double value = 0.0;  // LP relaxation value
  double obj = 0.0;    // objective coefficient in maximize form

  double frac_part() const;
  // Distance to the nearest integer, in (0, 0.5].
  double fractionality() const;
};

struct BranchChoice {
  int var = -1;
  Direction first = Direction::kDown;

  friend bool operator==(const BranchChoice&, const BranchChoice&) = default;
};

// Nearest-integer rounding direction for a fractional part (0.5 goes down).
Direction NearestDirection(double frac_part);

BranchChoice SelectMostFractional(std::span<const Candidate> candidates);
BranchChoice SelectLeastFractional(std::span<const Candidate> candidates);
// Lexicographic minimum of (fractionality, -obj).
BranchChoice SelectLeastFracHighObj(std::span<const Candidate> candidates);
// Lexicographic maximum of (fractionality, obj).
BranchChoice SelectMostFracHighObj(std::span<const Candidate> candidates);

inline constexpr double kScoreWeight = 1.0 / 6.0;
inline constexpr double kProductEpsilon = 1e-6;

// (1 - mu) * min(q-, q+) + mu * max(q-, q+) with mu = 1/6.
double ScoreWeighted(double q_minus, double q_plus);
// max(q-, eps) * max(q+, eps).
double ScoreProduct(double q_minus, double q_plus);

using ScoreFunction = double (*)(double, double);

// Running per-unit objective degradation averages for down and up branches.
class PseudocostTable {
 public:
  static constexpr double kDefaultPseudocost = 1.0;

  PseudocostTable() = default;
  explicit PseudocostTable(int num_vars);

  // Averages; kDefaultPseudocost while a side has no observation.
  double down(int var) const;
  double up(int var) const;
  int down_count(int var) const { return entries_[var].down_count; }
  int up_count(int var) const { return entries_[var].up_count; }
  double down_sum(int var) const { return entries_[var].down_sum; }
  double up_sum(int var) const { return entries_[var].up_sum; }

  // Records one branching observation. `frac_part` is the fractional part of
  // the branched value in the parent; objectives are the parent and child
  // relaxation values.
  void Update(int var, Direction direction, double parent_obj,
              double child_obj, double frac_part);

  int size() const { return static_cast<int>(entries_.size()); }

 private:
  struct Entry {
    double down_sum = 0.0;
    double up_sum = 0.0;
    int down_count = 0;
    int up_count = 0;
  };
  std::vector<Entry> entries_;
};

// Estimated degradations are q-(j) * f_j and q+(j) * (1 - f_j); picks the
// argmax of `score` over those pairs and explores the cheaper side first.
BranchChoice SelectPseudocost(std::span<const Candidate> candidates,
                              const PseudocostTable& table,
                              ScoreFunction score);

// Dispatches to the selector for `heuristic`.
BranchChoice SelectBranch(Heuristic heuristic,
                          std::span<const Candidate> candidates,
                          const PseudocostTable& table);

}  // namespace dash

#endif  // DASH_HEURISTICS_H_
