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

#include "graspgym/ddqn/baselines.h"

#include <cmath>

#include "graspgym/datagen/policy.h"

namespace graspgym::ddqn {

sim::Action scripted_action(const sim::WorldState& state) {
  constexpr double kAligned = 1e-6;
  const sim::Action dir = datagen::grasp_direction(state);
  if (std::abs(dir.dx) > kAligned || std::abs(dir.dy) > kAligned ||
      std::abs(dir.dphi) > kAligned) {
    return {dir.dx, dir.dy, 0.0, dir.dphi};
  }
  return {0.0, 0.0, dir.dz, 0.0};
}

sim::Action random_action(const sim::ActionBounds& b, Rng& rng) {
  return {rng.uniform(-b.delta_tran, b.delta_tran),
          rng.uniform(-b.delta_tran, b.delta_tran),
          rng.uniform(-b.delta_tran, b.delta_tran),
          rng.uniform(-b.delta_rot, b.delta_rot)};
}

}  // namespace graspgym::ddqn
