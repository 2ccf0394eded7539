// Copyright 2026 The GraspGym Authors
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
// Cross-entropy-method argmax over the 4-D action box.

#ifndef GRASPGYM_CEM_CEM_H_
#define GRASPGYM_CEM_CEM_H_

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "graspgym/sim/world.h"

namespace graspgym::cem {

struct CemConfig {
  int n_a = 16;  // samples per iteration
  int n_b = 5;   // elites
  int n_n = 2;   // iterations
  double init_std = 0.5;   // fraction of the bound
  double std_floor = 0.02; // fraction of the bound

  static CemConfig train() { return {16, 5, 2, 0.5, 0.02}; }
  static CemConfig test() { return {64, 6, 3, 0.5, 0.02}; }
  void validate() const;
  friend bool operator==(const CemConfig&, const CemConfig&) = default;
};

// Scores a batch of candidate actions for one fixed observation.
using BatchScorer = std::function<std::vector<double>(const std::vector<sim::Action>&)>;

using Vec4 = std::array<double, 4>;

struct CemIteration {
  Vec4 mean_before{}, std_before{};
  std::vector<sim::Action> samples;  // after clipping
  std::vector<double> scores;
  std::vector<int> elites;           // sample indices, best first
  Vec4 mean_after{}, std_after{};
  bool refit = false;                // false when every score tied
};

struct CemResult {
  sim::Action action;
  double q = 0.0;
  std::vector<CemIteration> trace;  // filled only on request
};

// Samples are clipped then scored; elites are chosen by a stable sort on
// descending score, so equal scores keep sample order. When all samples
// of an iteration tie, the distribution is left unchanged. Throws
// NumericError on non-finite scores.
CemResult cem_argmax(const BatchScorer& score, const sim::ActionBounds& bounds,
                     const CemConfig& cfg, uint64_t seed, bool record_trace = false);

// Exhaustive argmax over a regular grid with `points` values per dimension
// spanning the box (points >= 2). First maximum in row-major order wins.
struct GridResult {
  sim::Action action;
  double q = 0.0;
};
GridResult grid_argmax(const BatchScorer& score, const sim::ActionBounds& bounds,
                       int points);

}  // namespace graspgym::cem

#endif  // GRASPGYM_CEM_CEM_H_
