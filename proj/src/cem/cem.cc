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
#include "graspgym/cem/cem.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "graspgym/errors.h"
#include "graspgym/rng.h"

namespace graspgym::cem {

void CemConfig::validate() const {
  if (n_a < 1 || n_b < 1 || n_b > n_a) throw ConfigError("CEM needs 1 <= n_b <= n_a");
  if (n_n < 1) throw ConfigError("CEM needs at least one iteration");
  if (!(init_std >= 0.0) || !(std_floor >= 0.0)) {
    throw ConfigError("CEM std fractions must be >= 0");
  }
}

namespace {

std::vector<double> checked_scores(const BatchScorer& score,
                                   const std::vector<sim::Action>& actions) {
  std::vector<double> s = score(actions);
  if (s.size() != actions.size()) {
    throw ContractError("scorer returned " + std::to_string(s.size()) + " values for " +
                        std::to_string(actions.size()) + " actions");
  }
  for (double v : s) {
    if (!std::isfinite(v)) throw NumericError("scorer returned a non-finite value");
  }
  return s;
}

}  // namespace

CemResult cem_argmax(const BatchScorer& score, const sim::ActionBounds& bounds,
                     const CemConfig& cfg, uint64_t seed, bool record_trace) {
  cfg.validate();
  bounds.validate();
  const Vec4 bound = sim::bound_vector(bounds);
  Vec4 mean{}, sd{};
  for (int d = 0; d < 4; ++d) sd[d] = cfg.init_std * bound[d];

  Rng rng(seed);
  CemResult result;
  std::vector<sim::Action> samples(size_t(cfg.n_a));
  std::vector<int> order(size_t(cfg.n_a));
  for (int it = 0; it < cfg.n_n; ++it) {
    for (auto& s : samples) {
      Vec4 a;
      for (int d = 0; d < 4; ++d) a[d] = mean[d] + sd[d] * rng.normal();
      s = sim::clip(sim::Action::from_array(a), bounds);
    }
    std::vector<double> q = checked_scores(score, samples);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return q[size_t(a)] > q[size_t(b)]; });
    const bool all_tied =
        std::all_of(q.begin(), q.end(), [&](double v) { return v == q[0]; });

    CemIteration rec;
    if (record_trace) {
      rec.mean_before = mean;
      rec.std_before = sd;
      rec.samples = samples;
      rec.scores = q;
      rec.elites.assign(order.begin(), order.begin() + cfg.n_b);
    }
    if (!all_tied) {
      Vec4 m{}, v{};
      for (int e = 0; e < cfg.n_b; ++e) {
        const Vec4 a = samples[size_t(order[size_t(e)])].to_array();
        for (int d = 0; d < 4; ++d) m[d] += a[d];
      }
      for (int d = 0; d < 4; ++d) m[d] /= cfg.n_b;
      for (int e = 0; e < cfg.n_b; ++e) {
        const Vec4 a = samples[size_t(order[size_t(e)])].to_array();
        for (int d = 0; d < 4; ++d) v[d] += (a[d] - m[d]) * (a[d] - m[d]);
      }
      for (int d = 0; d < 4; ++d) {
        mean[d] = m[d];
        sd[d] = std::max(std::sqrt(v[d] / cfg.n_b), cfg.std_floor * bound[d]);
      }
    }
    if (record_trace) {
      rec.mean_after = mean;
      rec.std_after = sd;
      rec.refit = !all_tied;
      result.trace.push_back(std::move(rec));
    }
  }
  result.action = sim::clip(sim::Action::from_array(mean), bounds);
  result.q = checked_scores(score, {result.action})[0];
  return result;
}

GridResult grid_argmax(const BatchScorer& score, const sim::ActionBounds& bounds,
                       int points) {
  if (points < 2) throw ConfigError("grid argmax needs at least 2 points per dimension");
  const Vec4 bound = sim::bound_vector(bounds);
  std::vector<sim::Action> grid;
  grid.reserve(size_t(points) * points * points * points);
  auto value = [&](int d, int i) { return -bound[d] + 2.0 * bound[d] * i / (points - 1); };
  for (int i0 = 0; i0 < points; ++i0)
    for (int i1 = 0; i1 < points; ++i1)
      for (int i2 = 0; i2 < points; ++i2)
        for (int i3 = 0; i3 < points; ++i3)
          grid.push_back({value(0, i0), value(1, i1), value(2, i2), value(3, i3)});
  std::vector<double> q = checked_scores(score, grid);
  const size_t best = size_t(std::max_element(q.begin(), q.end()) - q.begin());
  return {grid[best], q[best]};
}

}  // namespace graspgym::cem
