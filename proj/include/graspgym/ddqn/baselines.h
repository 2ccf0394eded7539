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

// Reference controllers for evaluation sanity checks.

#ifndef GRASPGYM_DDQN_BASELINES_H_
#define GRASPGYM_DDQN_BASELINES_H_

#include "graspgym/rng.h"
#include "graspgym/sim/world.h"

namespace graspgym::ddqn {

// Privileged controller: aligns laterally and in rotation at the start
// height, then moves straight along the approach axis.
sim::Action scripted_action(const sim::WorldState& state);

// Uniform over the action box.
sim::Action random_action(const sim::ActionBounds& bounds, Rng& rng);

}  // namespace graspgym::ddqn

#endif  // GRASPGYM_DDQN_BASELINES_H_
