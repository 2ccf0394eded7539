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

#ifndef GRASPGYM_SIM_COLLISION_H_
#define GRASPGYM_SIM_COLLISION_H_

#include <optional>
#include <vector>

#include "graspgym/math.h"

namespace graspgym::sim {

struct ConvexHull {
  std::vector<Vec3> vertices;
  std::vector<Vec3> face_normals;  // one per parallel face pair
  std::vector<Vec3> edge_dirs;     // one per parallel edge class
  Vec3 center;
};

struct OrientedBox {
  Vec3 center;
  Vec3 axis_x;
  Vec3 axis_y;
  Vec3 axis_z;
  Vec3 half_extents;
};

ConvexHull make_box_hull(const OrientedBox& box);
ConvexHull make_box_hull(const Vec3& center, const Vec3& axis_x,
                         const Vec3& axis_y, const Vec3& axis_z,
                         const Vec3& half_extents);
// Upright prism standing on z = base_z, circumscribing a circle of `radius`.
// `yaw` turns the polygon with its owner so contacts stay frame-covariant.
ConvexHull make_prism_hull(double cx, double cy, double base_z, double radius,
                           double height, int sides, double yaw = 0.0);

struct Penetration {
  double depth = 0.0;
  Vec3 normal;  // unit, points from `b` toward `a`
};

// Separating-axis test. Returns the minimum-overlap axis when the hulls
// intersect.
std::optional<Penetration> penetration(const ConvexHull& a,
                                       const ConvexHull& b);

}  // namespace graspgym::sim

#endif  // GRASPGYM_SIM_COLLISION_H_
