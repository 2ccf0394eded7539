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

#include "graspgym/datagen/policy.h"

#include "graspgym/errors.h"

namespace graspgym::datagen {

void BiasedPolicyConfig::validate() const {
  if (!(bias >= 0.0 && bias <= 1.0)) throw ConfigError("bias must be in [0,1]");
  if (!(noise_std >= 0.0)) throw ConfigError("noise_std must be >= 0");
  if (!(rotation_bias >= 0.0 && rotation_bias <= 1.0))
    throw ConfigError("rotation_bias must be in [0,1]");
}

sim::Action grasp_direction(const sim::WorldState& state) {
  const sim::GraspTarget target = sim::ideal_grasp(state);
  const sim::GripperFrame f = sim::gripper_frame(state.gripper);
  const Vec3 d = target.tcp - state.gripper.pose.position;
  return sim::clip({dot(d, f.closing), dot(d, f.pad), dot(d, f.approach),
                    -sim::rotation_offset(state)},
                   state.bounds);
}

sim::Action biased_action(const sim::WorldState& state,
                          const BiasedPolicyConfig& cfg, Rng& rng) {
  const auto dir = grasp_direction(state).to_array();
  const auto bound = sim::bound_vector(state.bounds);
  std::array<double, 4> a{};
  for (int i = 0; i < 4; ++i) {
    const double pull = i == 3 ? cfg.bias * cfg.rotation_bias : cfg.bias;
    a[i] = pull * dir[i] + cfg.noise_std * bound[i] * rng.normal();
  }
  return sim::clip(sim::Action::from_array(a), state.bounds);
}

}  // namespace graspgym::datagen
