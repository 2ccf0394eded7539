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

#ifndef GRASPGYM_DATAGEN_POLICY_H_
#define GRASPGYM_DATAGEN_POLICY_H_

#include "graspgym/rng.h"
#include "graspgym/sim/world.h"

namespace graspgym::datagen {

struct BiasedPolicyConfig {
  double bias = 0.6;        // alpha, fraction of the way toward the grasp pose
  double noise_std = 0.3;   // fraction of the per-dimension bound
  double rotation_bias = 1.0;  // scales the pull toward zero rotation offset

  void validate() const;
};

// Direction to the ideal grasp pose in the current gripper frame, clipped
// per component to the action bounds.
sim::Action grasp_direction(const sim::WorldState& state);

sim::Action biased_action(const sim::WorldState& state,
                          const BiasedPolicyConfig& cfg, Rng& rng);

}  // namespace graspgym::datagen

#endif  // GRASPGYM_DATAGEN_POLICY_H_
