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

#include "graspgym/sim/collision.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace graspgym::sim {
namespace {

constexpr double kAxisEpsilon = 1e-9;
constexpr double kTieTolerance = 1e-12;
// Overlaps this small count as touching, not penetrating.
constexpr double kContactSlop = 1e-12;

void project(const ConvexHull& hull, const Vec3& axis, double& lo,
             double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Vec3& v : hull.vertices) {
    const double p = dot(v, axis);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
}

}  // namespace

ConvexHull make_box_hull(const Vec3& center, const Vec3& axis_x,
                         const Vec3& axis_y, const Vec3& axis_z,
                         const Vec3& half_extents) {
  ConvexHull hull;
  hull.center = center;
  hull.vertices.reserve(8);
  for (int sx = -1; sx <= 1; sx += 2) {
    for (int sy = -1; sy <= 1; sy += 2) {
      for (int sz = -1; sz <= 1; sz += 2) {
        hull.vertices.push_back(center + axis_x * (sx * half_extents.x) +
                                axis_y * (sy * half_extents.y) +
                                axis_z * (sz * half_extents.z));
      }
    }
  }
  hull.face_normals = {axis_x, axis_y, axis_z};
  hull.edge_dirs = {axis_x, axis_y, axis_z};
  return hull;
}

ConvexHull make_box_hull(const OrientedBox& b) {
  return make_box_hull(b.center, b.axis_x, b.axis_y, b.axis_z, b.half_extents);
}

ConvexHull make_prism_hull(double cx, double cy, double base_z, double radius,
                           double height, int sides, double yaw) {
  ConvexHull hull;
  hull.center = {cx, cy, base_z + height / 2};
  const double r = radius / std::cos(kPi / sides);
  for (int i = 0; i < sides; ++i) {
    const double a = yaw + 2 * kPi * i / sides;
    const double x = cx + r * std::cos(a);
    const double y = cy + r * std::sin(a);
    hull.vertices.push_back({x, y, base_z});
    hull.vertices.push_back({x, y, base_z + height});
  }
  // Parallel classes: with an even side count opposite faces share normals.
  const int classes = sides % 2 == 0 ? sides / 2 : sides;
  for (int i = 0; i < classes; ++i) {
    const double edge = yaw + 2 * kPi * i / sides + kPi / sides;
    hull.face_normals.push_back({std::cos(edge), std::sin(edge), 0.0});
    const double along = edge + kPi / 2;
    hull.edge_dirs.push_back({std::cos(along), std::sin(along), 0.0});
  }
  hull.face_normals.push_back({0.0, 0.0, 1.0});
  hull.edge_dirs.push_back({0.0, 0.0, 1.0});
  return hull;
}

std::optional<Penetration> penetration(const ConvexHull& a,
                                       const ConvexHull& b) {
  std::vector<Vec3> axes;
  axes.reserve(a.face_normals.size() + b.face_normals.size() +
               a.edge_dirs.size() * b.edge_dirs.size());
  axes.insert(axes.end(), a.face_normals.begin(), a.face_normals.end());
  axes.insert(axes.end(), b.face_normals.begin(), b.face_normals.end());
  for (const Vec3& ea : a.edge_dirs) {
    for (const Vec3& eb : b.edge_dirs) {
      const Vec3 c = cross(ea, eb);
      if (norm(c) > kAxisEpsilon) axes.push_back(normalized(c));
    }
  }

  Penetration best;
  best.depth = std::numeric_limits<double>::infinity();
  const Vec3 offset = a.center - b.center;
  for (const Vec3& axis : axes) {
    double a_lo, a_hi, b_lo, b_hi;
    project(a, axis, a_lo, a_hi);
    project(b, axis, b_lo, b_hi);
    // Moving `a` by +axis * up or by -axis * down separates the pair.
    const double up = b_hi - a_lo;
    const double down = a_hi - b_lo;
    const double overlap = std::min(up, down);
    if (overlap <= kContactSlop) return std::nullopt;
    // Near-ties resolve toward the earlier axis and by the center offset,
    // keeping the choice stable under rounding from a change of frame.
    if (overlap < best.depth - kTieTolerance) {
      best.depth = overlap;
      bool positive = up < down;
      if (std::abs(up - down) <= kTieTolerance) positive = dot(offset, axis) >= 0.0;
      best.normal = positive ? axis : -axis;
    }
  }
  return best;
}

}  // namespace graspgym::sim
