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

#ifndef GRASPGYM_SRC_SIM_INTERNAL_H_
#define GRASPGYM_SRC_SIM_INTERNAL_H_

#include <array>
#include <vector>

#include "graspgym/sim/collision.h"
#include "graspgym/sim/world.h"

namespace graspgym::sim {

std::array<ConvexHull, 2> finger_hulls(const GripperState& gripper);
ConvexHull object_hull(const WorldState& state);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Object cut by the plane through the tool-center point normal to the
// approach axis, in (closing, pad) coordinates relative to the TCP.
struct CrossSection {
  bool empty = true;
  bool circle = false;
  std::vector<Vec2> polygon;  // convex, when !circle
  Vec2 center;
  double radius = 0.0;
};

CrossSection cross_section(const WorldState& state);

}  // namespace graspgym::sim

#endif  // GRASPGYM_SRC_SIM_INTERNAL_H_
