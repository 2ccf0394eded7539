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

#include "graspgym/sim/world.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "graspgym/errors.h"
#include "graspgym/rng.h"
#include "graspgym/sim/collision.h"
#include "sim/internal.h"

namespace graspgym::sim {
namespace {

constexpr double kVerticalContact = 0.7;
constexpr int kPrismSides = 24;

double base_yaw_offset(const ObjectModel& object) {
  // Top grasps close across the narrower footprint dimension.
  if (object.shape == Shape::kBox && object.dimensions.x > object.dimensions.y)
    return kPi / 2;
  return 0.0;
}

double lowest_finger_z(const GripperState& gripper) {
  double lo = gripper.pose.position.z;
  for (const ConvexHull& f : finger_hulls(gripper)) {
    for (const Vec3& v : f.vertices) lo = std::min(lo, v.z);
  }
  return lo;
}

double clamp_to_table(GripperState& gripper) {
  const double lo = lowest_finger_z(gripper);
  if (lo < 0.0) {
    gripper.pose.position.z -= lo;
    return -lo;
  }
  return 0.0;
}

// Resolves fingertip/object overlap in place; returns the deepest overlap
// seen before resolution.
double resolve_contacts(WorldState& s, double& lift) {
  double deepest = 0.0;
  for (int it = 0; it < kContact.iterations; ++it) {
    bool touched = false;
    const ConvexHull object = object_hull(s);
    for (const ConvexHull& finger : finger_hulls(s.gripper)) {
      const auto pen = penetration(finger, object);
      if (!pen) continue;
      touched = true;
      deepest = std::max(deepest, pen->depth);
      const Vec3& n = pen->normal;
      if (n.z > kVerticalContact) {
        // The object rests on the table; the finger is lifted instead.
        const double dz = pen->depth / n.z;
        s.gripper.pose.position.z += dz;
        lift += dz;
      } else if (n.z >= -kVerticalContact) {
        const double hh = n.x * n.x + n.y * n.y;
        if (hh > 1e-12) {
          s.object_pose.position.x -= n.x * pen->depth / hh;
          s.object_pose.position.y -= n.y * pen->depth / hh;
        }
      }
      break;  // hulls are stale after a correction
    }
    if (!touched) break;
  }
  return deepest;
}

StepInfo make_info(const WorldState& s) {
  StepInfo info;
  info.centroid_distance = centroid_distance(s);
  info.rotation_offset = rotation_offset(s);
  info.object_displacement = object_displacement(s);
  info.fingertip_force = s.gripper.fingertip_force;
  return info;
}

}  // namespace

void ActionBounds::validate() const {
  if (!(delta_tran > 0.0) || !(delta_rot > 0.0))
    throw ConfigError("action bounds must be strictly positive");
}

Action clip(const Action& a, const ActionBounds& b) {
  return {std::clamp(a.dx, -b.delta_tran, b.delta_tran),
          std::clamp(a.dy, -b.delta_tran, b.delta_tran),
          std::clamp(a.dz, -b.delta_tran, b.delta_tran),
          std::clamp(a.dphi, -b.delta_rot, b.delta_rot)};
}

bool within_bounds(const Action& a, const ActionBounds& b) {
  return std::abs(a.dx) <= b.delta_tran && std::abs(a.dy) <= b.delta_tran &&
         std::abs(a.dz) <= b.delta_tran && std::abs(a.dphi) <= b.delta_rot;
}

std::array<double, 4> bound_vector(const ActionBounds& b) {
  return {b.delta_tran, b.delta_tran, b.delta_tran, b.delta_rot};
}

bool ObjectModel::has_face(Face face) const {
  return std::find(graspable_faces.begin(), graspable_faces.end(), face) !=
         graspable_faces.end();
}

ObjectModel make_box(std::string name, double width, double depth,
                     double height, int texture_id, std::vector<Face> faces) {
  ObjectModel m;
  m.name = std::move(name);
  m.shape = Shape::kBox;
  m.dimensions = {width, depth, height};
  m.yaw_symmetry = kPi;
  m.texture_id = texture_id;
  m.graspable_faces = std::move(faces);
  return m;
}

ObjectModel make_cylinder(std::string name, double radius, double height,
                          int texture_id) {
  ObjectModel m;
  m.name = std::move(name);
  m.shape = Shape::kCylinder;
  m.dimensions = {radius, radius, height};
  m.yaw_symmetry = 0.0;
  m.texture_id = texture_id;
  m.graspable_faces = {Face::kTop, Face::kSideAny};
  return m;
}

ObjectModel catalog_object(std::string_view name) {
  if (name == "box") {
    // Short side face (x) is narrow enough for a side_b grasp; side_a is not.
    return make_box("box", 0.022, 0.05, 0.06, 0, {Face::kTop, Face::kSideB});
  }
  if (name == "can") return make_cylinder("can", 0.017, 0.10, 1);
  if (name == "tall_box") {
    return make_box("tall_box", 0.03, 0.035, 0.12, 2,
                    {Face::kTop, Face::kSideA, Face::kSideB});
  }
  throw ConfigError("unknown object '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() { return {"box", "can", "tall_box"}; }

double closing_width(const ObjectModel& object, Face face) {
  const Vec3& d = object.dimensions;
  if (object.shape == Shape::kCylinder) return 2 * d.x;
  switch (face) {
    case Face::kTop:
      return std::min(d.x, d.y);
    case Face::kSideA:
      return d.y;
    case Face::kSideB:
      return d.x;
    case Face::kSideAny:
      break;
  }
  return d.x;
}

void validate_object(const ObjectModel& object) {
  const Vec3& d = object.dimensions;
  if (!(d.x > 0.0 && d.y > 0.0 && d.z > 0.0))
    throw ConfigError("object dimensions must be positive");
  if (object.graspable_faces.empty())
    throw ConfigError("object '" + object.name + "' has no graspable face");
  for (Face f : object.graspable_faces) {
    const bool cyl = object.shape == Shape::kCylinder;
    if (cyl && (f == Face::kSideA || f == Face::kSideB))
      throw ConfigError("cylinders only support top and side_any faces");
    if (!cyl && f == Face::kSideAny)
      throw ConfigError("boxes do not support side_any");
    if (!(closing_width(object, f) < kGripper.max_aperture)) {
      throw ConfigError("face " + std::string(to_string(f)) + " of '" +
                        object.name + "' is wider than the gripper opening");
    }
  }
}

GripperFrame gripper_frame(const GripperState& g) {
  const double c = std::cos(g.pose.yaw);
  const double s = std::sin(g.pose.yaw);
  GripperFrame f;
  if (g.approach == ApproachAxis::kTopDown) {
    f.closing = {c, s, 0.0};
    f.pad = {s, -c, 0.0};
    f.approach = {0.0, 0.0, -1.0};
  } else {
    const double ch = std::cos(g.approach_heading);
    const double sh = std::sin(g.approach_heading);
    f.approach = {ch, sh, 0.0};
    const Vec3 side{-sh, ch, 0.0};
    const Vec3 up{0.0, 0.0, 1.0};
    f.closing = side * c + up * s;
    f.pad = up * c - side * s;
  }
  return f;
}

std::array<OrientedBox, 2> finger_boxes(const GripperState& g) {
  const GripperFrame f = gripper_frame(g);
  const Vec3 half{kGripper.finger_thickness / 2, kGripper.pad_width / 2,
                  kGripper.finger_length / 2};
  const double off = g.aperture / 2 + kGripper.finger_thickness / 2;
  const Vec3 back = f.approach * (-kGripper.finger_length / 2);
  const Vec3& p = g.pose.position;
  return {OrientedBox{p + f.closing * off + back, f.closing, f.pad, f.approach,
                      half},
          OrientedBox{p - f.closing * off + back, f.closing, f.pad, f.approach,
                      half}};
}

std::array<ConvexHull, 2> finger_hulls(const GripperState& g) {
  const auto boxes = finger_boxes(g);
  return {make_box_hull(boxes[0]), make_box_hull(boxes[1])};
}

ConvexHull object_hull(const WorldState& s) {
  const Vec3& d = s.object.dimensions;
  const Vec3& p = s.object_pose.position;
  if (s.object.shape == Shape::kCylinder)
    return make_prism_hull(p.x, p.y, 0.0, d.x, d.z, kPrismSides,
                           s.object_pose.yaw);
  const double c = std::cos(s.object_pose.yaw);
  const double sn = std::sin(s.object_pose.yaw);
  return make_box_hull({p.x, p.y, d.z / 2}, {c, sn, 0.0}, {-sn, c, 0.0},
                       {0.0, 0.0, 1.0}, d * 0.5);
}

void EpisodeConfig::validate() const {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (!(init_area >= 0.0)) throw ConfigError("init_area must be >= 0");
  if (!(init_height_min >= 0.0) || init_height_max < init_height_min)
    throw ConfigError("init height range is invalid");
  if (!(init_rot_offset_max >= 0.0))
    throw ConfigError("init_rot_offset_max must be >= 0");
  if (!(workspace_half_extent >= 0.0))
    throw ConfigError("workspace_half_extent must be >= 0");
  bounds.validate();
}

WorldState reset_episode(const EpisodeConfig& cfg, const ObjectModel& object,
                         uint64_t seed) {
  cfg.validate();
  validate_object(object);

  std::vector<Face> faces;
  if (cfg.grasp_mode == GraspMode::kTop) {
    if (!object.has_face(Face::kTop))
      throw ConfigError("top grasp mode needs a graspable top face");
    faces = {Face::kTop};
  } else {
    faces = object.graspable_faces;
  }

  Rng rng(seed);
  WorldState s;
  s.object = object;
  s.grasp_mode = cfg.grasp_mode;
  s.k = cfg.k;
  s.bounds = cfg.bounds;
  s.step_index = 0;

  const double w = cfg.workspace_half_extent;
  s.object_pose.position = {rng.uniform(-w, w), rng.uniform(-w, w), 0.0};
  s.object_pose.yaw = wrap_angle(rng.uniform(-kPi, kPi));
  s.object_initial_pose = s.object_pose;

  s.target_face = faces[faces.size() == 1
                            ? 0
                            : rng.uniform_int(0, int(faces.size()) - 1)];
  const double half_area = cfg.init_area / 2;
  const double u = rng.uniform(-half_area, half_area);
  const double v = rng.uniform(-half_area, half_area);
  const double gap = rng.uniform(cfg.init_height_min, cfg.init_height_max);
  const double rot = cfg.init_rot_offset_max > 0.0
                         ? rng.uniform(-cfg.init_rot_offset_max,
                                       cfg.init_rot_offset_max)
                         : 0.0;

  const Vec3 centroid = object_centroid(s);
  const Vec3& dims = object.dimensions;
  GripperState& g = s.gripper;
  g.aperture = kGripper.max_aperture;
  g.fingertip_force = 0.0;
  if (s.target_face == Face::kTop) {
    g.approach = ApproachAxis::kTopDown;
    const Vec3 lateral = rotate_z({u, v, 0.0}, s.object_pose.yaw);
    g.pose.position = {centroid.x + lateral.x, centroid.y + lateral.y,
                       dims.z + gap};
    g.pose.yaw = wrap_angle(s.object_pose.yaw + base_yaw_offset(object) + rot);
  } else {
    g.approach = ApproachAxis::kSide;
    double heading = 0.0;
    double half_depth = 0.0;
    switch (s.target_face) {
      case Face::kSideA:
        heading = s.object_pose.yaw + (rng.bernoulli(0.5) ? 0.0 : kPi);
        half_depth = dims.x / 2;
        break;
      case Face::kSideB:
        heading =
            s.object_pose.yaw + kPi / 2 + (rng.bernoulli(0.5) ? 0.0 : kPi);
        half_depth = dims.y / 2;
        break;
      default:
        heading = rng.uniform(-kPi, kPi);
        half_depth = dims.x;
        break;
    }
    g.approach_heading = wrap_angle(heading);
    const Vec3 fwd{std::cos(g.approach_heading),
                   std::sin(g.approach_heading), 0.0};
    const Vec3 side{-fwd.y, fwd.x, 0.0};
    g.pose.position =
        centroid - fwd * (half_depth + gap) + side * u + Vec3{0.0, 0.0, v};
    g.pose.yaw = wrap_angle(rot);
  }
  clamp_to_table(g);
  return s;
}

StepResult step(const WorldState& state, const Action& action) {
  if (state.step_index >= state.k) {
    throw ProtocolError("step called on a terminal state (step_index " +
                        std::to_string(state.step_index) + ")");
  }
  const Action a = clip(action, state.bounds);
  WorldState s = state;
  const GripperFrame frame = gripper_frame(s.gripper);
  const Vec3 delta =
      frame.closing * a.dx + frame.pad * a.dy + frame.approach * a.dz;
  const Vec3 start = s.gripper.pose.position;
  const double yaw0 = s.gripper.pose.yaw;

  double lift = 0.0;
  double deepest = 0.0;
  const int n = kContact.substeps;
  for (int i = 1; i <= n; ++i) {
    const double t = double(i) / n;
    s.gripper.pose.position = start + delta * t + Vec3{0.0, 0.0, lift};
    s.gripper.pose.yaw = wrap_angle(yaw0 + a.dphi * t);
    lift += clamp_to_table(s.gripper);
    deepest = std::max(deepest, resolve_contacts(s, lift));
  }
  s.gripper.fingertip_force = kContact.stiffness * deepest;
  s.step_index += 1;

  StepInfo info = make_info(s);
  info.terminal = s.step_index == s.k;
  return {std::move(s), info};
}

StepInfo grasp_info(const WorldState& state) {
  StepInfo info = make_info(state);
  info.terminal = true;
  info.grasp_success = attempt_grasp(state);
  return info;
}

double compute_reward(const StepInfo& info, const RewardWeights& w) {
  double r = 0.0;
  if (info.terminal && info.grasp_success) r += w.w_success;
  r -= w.w_dist * info.centroid_distance;
  r -= w.w_disp * std::max(0.0, info.object_displacement - w.disp_tol);
  if (!info.terminal) r -= w.w_contact * info.fingertip_force;
  return r;
}

double compute_move_reward(const StepInfo& info, const RewardWeights& w) {
  StepInfo pre = info;
  pre.terminal = false;
  pre.grasp_success = false;
  return compute_reward(pre, w);
}

Vec3 object_centroid(const WorldState& s) {
  return {s.object_pose.position.x, s.object_pose.position.y,
          s.object.height() / 2};
}

double centroid_distance(const WorldState& s) {
  return norm(s.gripper.pose.position - object_centroid(s));
}

double rotation_offset(const WorldState& s) {
  if (s.gripper.approach == ApproachAxis::kSide)
    return wrap_period(s.gripper.pose.yaw, kPi);
  const double period = s.object.yaw_symmetry;
  if (!(period > 0.0)) return 0.0;
  const double ideal = s.object_pose.yaw + base_yaw_offset(s.object);
  return wrap_period(s.gripper.pose.yaw - ideal, period);
}

double object_displacement(const WorldState& s) {
  const double dx = s.object_pose.position.x - s.object_initial_pose.position.x;
  const double dy = s.object_pose.position.y - s.object_initial_pose.position.y;
  return std::sqrt(dx * dx + dy * dy);
}

GraspTarget ideal_grasp(const WorldState& s) {
  return {object_centroid(s), s.gripper.pose.yaw - rotation_offset(s)};
}

WorldState rotate_world(const WorldState& state, double theta) {
  WorldState s = state;
  s.object_pose.position = rotate_z(s.object_pose.position, theta);
  s.object_pose.yaw = wrap_angle(s.object_pose.yaw + theta);
  s.object_initial_pose.position =
      rotate_z(s.object_initial_pose.position, theta);
  s.object_initial_pose.yaw = wrap_angle(s.object_initial_pose.yaw + theta);
  s.gripper.pose.position = rotate_z(s.gripper.pose.position, theta);
  if (s.gripper.approach == ApproachAxis::kTopDown) {
    s.gripper.pose.yaw = wrap_angle(s.gripper.pose.yaw + theta);
  } else {
    s.gripper.approach_heading = wrap_angle(s.gripper.approach_heading + theta);
  }
  return s;
}

std::string_view to_string(Face face) {
  switch (face) {
    case Face::kTop:
      return "top";
    case Face::kSideA:
      return "side_a";
    case Face::kSideB:
      return "side_b";
    case Face::kSideAny:
      return "side_any";
  }
  return "?";
}

std::string_view to_string(GraspMode mode) {
  return mode == GraspMode::kTop ? "top" : "multi_side";
}

std::string_view to_string(Shape shape) {
  return shape == Shape::kBox ? "box" : "cylinder";
}

Face face_from_string(std::string_view s) {
  if (s == "top") return Face::kTop;
  if (s == "side_a") return Face::kSideA;
  if (s == "side_b") return Face::kSideB;
  if (s == "side_any") return Face::kSideAny;
  throw ConfigError("unknown face '" + std::string(s) + "'");
}

GraspMode grasp_mode_from_string(std::string_view s) {
  if (s == "top") return GraspMode::kTop;
  if (s == "multi_side") return GraspMode::kMultiSide;
  throw ConfigError("unknown grasp mode '" + std::string(s) + "'");
}

}  // namespace graspgym::sim
