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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "graspgym/errors.h"
#include "graspgym/sim/world.h"
#include "sim/internal.h"

namespace graspgym::sim {
namespace {

Vec2 to_gripper(const Vec3& p, const Vec3& tcp, const GripperFrame& f) {
  const Vec3 d = p - tcp;
  return {dot(d, f.closing), dot(d, f.pad)};
}

// Keeps the part of `poly` with sign * y <= limit.
std::vector<Vec2> clip_y(const std::vector<Vec2>& poly, double limit,
                         double sign) {
  std::vector<Vec2> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const bool a_in = sign * a.y <= limit;
    const bool b_in = sign * b.y <= limit;
    if (a_in) out.push_back(a);
    if (a_in != b_in) {
      const double t = (limit - sign * a.y) / (sign * (b.y - a.y));
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

// Parameter interval of the horizontal line p + t * dir inside the object
// footprint; empty when lo >= hi.
void footprint_chord(const WorldState& s, const Vec3& p, const Vec3& dir,
                     double& lo, double& hi) {
  const Vec3& c = s.object_pose.position;
  const Vec3& d = s.object.dimensions;
  lo = -std::numeric_limits<double>::infinity();
  hi = std::numeric_limits<double>::infinity();
  if (s.object.shape == Shape::kCylinder) {
    const double ox = p.x - c.x;
    const double oy = p.y - c.y;
    const double b = ox * dir.x + oy * dir.y;
    const double cc = ox * ox + oy * oy - d.x * d.x;
    const double disc = b * b - cc;
    if (disc <= 0.0) {
      lo = hi = 0.0;
      return;
    }
    lo = -b - std::sqrt(disc);
    hi = -b + std::sqrt(disc);
    return;
  }
  const double cy = std::cos(s.object_pose.yaw);
  const double sy = std::sin(s.object_pose.yaw);
  const Vec3 axes[2] = {{cy, sy, 0.0}, {-sy, cy, 0.0}};
  const double half[2] = {d.x / 2, d.y / 2};
  const Vec3 rel = p - c;
  for (int i = 0; i < 2; ++i) {
    const double o = rel.x * axes[i].x + rel.y * axes[i].y;
    const double v = dir.x * axes[i].x + dir.y * axes[i].y;
    if (std::abs(v) < 1e-15) {
      if (std::abs(o) >= half[i]) {
        lo = hi = 0.0;
        return;
      }
      continue;
    }
    double t0 = (-half[i] - o) / v;
    double t1 = (half[i] - o) / v;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
}

}  // namespace

CrossSection cross_section(const WorldState& s) {
  CrossSection cs;
  const GripperFrame f = gripper_frame(s.gripper);
  const Vec3& tcp = s.gripper.pose.position;
  const Vec3& d = s.object.dimensions;
  const Vec3& c = s.object_pose.position;

  if (s.gripper.approach == ApproachAxis::kTopDown) {
    if (tcp.z < 0.0 || tcp.z >= d.z) return cs;
    cs.empty = false;
    if (s.object.shape == Shape::kCylinder) {
      cs.circle = true;
      cs.center = to_gripper({c.x, c.y, tcp.z}, tcp, f);
      cs.radius = d.x;
      return cs;
    }
    const double cy = std::cos(s.object_pose.yaw);
    const double sy = std::sin(s.object_pose.yaw);
    const double hx = d.x / 2;
    const double hy = d.y / 2;
    const double corners[4][2] = {{hx, hy}, {-hx, hy}, {-hx, -hy}, {hx, -hy}};
    for (const auto& k : corners) {
      const Vec3 p{c.x + cy * k[0] - sy * k[1], c.y + sy * k[0] + cy * k[1],
                   tcp.z};
      cs.polygon.push_back(to_gripper(p, tcp, f));
    }
    cs.center = to_gripper({c.x, c.y, tcp.z}, tcp, f);
    return cs;
  }

  // Side approach: the cutting plane is vertical.
  const Vec3 side{-f.approach.y, f.approach.x, 0.0};
  double lo, hi;
  footprint_chord(s, tcp, side, lo, hi);
  if (!(hi > lo)) return cs;
  cs.empty = false;
  const double ts[4][2] = {{lo, 0.0}, {hi, 0.0}, {hi, d.z}, {lo, d.z}};
  for (const auto& k : ts) {
    const Vec3 p{tcp.x + side.x * k[0], tcp.y + side.y * k[0], k[1]};
    cs.polygon.push_back(to_gripper(p, tcp, f));
  }
  const Vec3 mid{tcp.x + side.x * (lo + hi) / 2,
                 tcp.y + side.y * (lo + hi) / 2, d.z / 2};
  cs.center = to_gripper(mid, tcp, f);
  return cs;
}

bool attempt_grasp(const WorldState& s) {
  if (s.step_index != s.k) {
    throw ProtocolError("grasp attempted at step " +
                        std::to_string(s.step_index) + " of " +
                        std::to_string(s.k));
  }
  if (!(std::abs(rotation_offset(s)) < kFrictionTolerance)) return false;

  const CrossSection cs = cross_section(s);
  if (cs.empty) return false;

  const double half_open = s.gripper.aperture / 2;
  const double half_pad = kGripper.pad_width / 2;
  double width = 0.0;
  double strip_lo = 0.0;
  double strip_hi = 0.0;
  if (cs.circle) {
    width = 2 * cs.radius;
    const double dy = std::max(0.0, std::abs(cs.center.y) - half_pad);
    if (dy >= cs.radius) return false;
    const double half = std::sqrt(cs.radius * cs.radius - dy * dy);
    strip_lo = cs.center.x - half;
    strip_hi = cs.center.x + half;
  } else {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec2& v : cs.polygon) {
      lo = std::min(lo, v.x);
      hi = std::max(hi, v.x);
    }
    width = hi - lo;
    const std::vector<Vec2> strip =
        clip_y(clip_y(cs.polygon, half_pad, 1.0), half_pad, -1.0);
    if (strip.empty()) return false;
    strip_lo = std::numeric_limits<double>::infinity();
    strip_hi = -strip_lo;
    for (const Vec2& v : strip) {
      strip_lo = std::min(strip_lo, v.x);
      strip_hi = std::max(strip_hi, v.x);
    }
  }
  // (a) antipodal width fits the opening.
  if (!(width > 0.0 && width < kGripper.max_aperture)) return false;
  // (b) both fingers start outside the material they close on.
  if (!(strip_lo > -half_open && strip_hi < half_open)) return false;
  // (c) pads centered on the face.
  if (!(std::abs(cs.center.y) < half_pad)) return false;
  return true;
}

}  // namespace graspgym::sim
