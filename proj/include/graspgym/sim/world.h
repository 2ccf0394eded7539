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

// Kinematic grasping world: object and gripper state, the episode protocol,
// the contact model and the reward.

#ifndef GRASPGYM_SIM_WORLD_H_
#define GRASPGYM_SIM_WORLD_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graspgym/math.h"
#include "graspgym/sim/collision.h"

namespace graspgym::sim {

struct ActionBounds {
  double delta_tran = 0.05;     // meters
  double delta_rot = kPi / 4;   // radians

  void validate() const;
};

// Relative motion in the gripper frame: translation (dx, dy, dz) along the
// closing, pad and approach axes, and dphi about the approach axis.
struct Action {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  double dphi = 0.0;

  std::array<double, 4> to_array() const { return {dx, dy, dz, dphi}; }
  static Action from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
  friend bool operator==(const Action&, const Action&) = default;
};

Action clip(const Action& action, const ActionBounds& bounds);
bool within_bounds(const Action& action, const ActionBounds& bounds);
// Per-dimension bound as a 4-vector (tran, tran, tran, rot).
std::array<double, 4> bound_vector(const ActionBounds& bounds);

struct Pose {
  Vec3 position;
  double yaw = 0.0;  // kept in (-pi, pi]
};

enum class Shape { kBox, kCylinder };

// side_a: approach along the object's x axis, close along y.
// side_b: approach along the object's y axis, close along x.
// side_any: any horizontal approach (cylinders).
enum class Face { kTop, kSideA, kSideB, kSideAny };

struct ObjectModel {
  std::string name;
  Shape shape = Shape::kBox;
  // box: width (x), depth (y), height; cylinder: radius, radius, height.
  Vec3 dimensions;
  // Smallest yaw period; 0 means rotationally symmetric.
  double yaw_symmetry = kPi;
  int texture_id = 0;
  std::vector<Face> graspable_faces;

  double height() const { return dimensions.z; }
  bool has_face(Face face) const;
};

ObjectModel make_box(std::string name, double width, double depth,
                     double height, int texture_id,
                     std::vector<Face> faces = {Face::kTop, Face::kSideA,
                                                Face::kSideB});
ObjectModel make_cylinder(std::string name, double radius, double height,
                          int texture_id);
// Built-in objects: "box", "can", "tall_box".
ObjectModel catalog_object(std::string_view name);
std::vector<std::string> catalog_names();

// Width of the object along the closing axis when grasped at `face` with
// zero rotation offset.
double closing_width(const ObjectModel& object, Face face);
// Throws ConfigError if a graspable face is wider than the gripper opening.
void validate_object(const ObjectModel& object);

struct GripperGeometry {
  double max_aperture = 0.04;      // distance between the open fingers
  double finger_thickness = 0.008;
  double pad_width = 0.03;         // finger extent along the pad axis
  double finger_length = 0.05;     // fingertip to palm
};
inline constexpr GripperGeometry kGripper{};

struct ContactModel {
  double stiffness = 100.0;  // force per meter of penetration
  int substeps = 10;
  int iterations = 4;
};
inline constexpr ContactModel kContact{};

// Friction-cone tolerance on the rotation offset at grasp time.
inline constexpr double kFrictionTolerance = 0.25;

enum class ApproachAxis { kTopDown, kSide };

struct GripperState {
  // position: tool-center point, the midpoint between the fingertips.
  // yaw: rotation about the approach axis.
  Pose pose;
  ApproachAxis approach = ApproachAxis::kTopDown;
  // World yaw of the approach direction; only used by side approaches.
  double approach_heading = 0.0;
  double aperture = kGripper.max_aperture;
  double fingertip_force = 0.0;
};

// Orthonormal right-handed gripper axes in world coordinates.
struct GripperFrame {
  Vec3 closing;   // x
  Vec3 pad;       // y
  Vec3 approach;  // z, from the wrist toward the fingertips
};
GripperFrame gripper_frame(const GripperState& gripper);
// Finger plates: +closing side first.
std::array<OrientedBox, 2> finger_boxes(const GripperState& gripper);

enum class GraspMode { kTop, kMultiSide };

struct EpisodeConfig {
  int k = 5;
  double init_area = 0.05;
  double init_height_min = 0.02;
  double init_height_max = 0.045;
  double init_rot_offset_max = kPi / 4;
  GraspMode grasp_mode = GraspMode::kTop;
  ActionBounds bounds;
  // Objects are placed uniformly in [-h, h]^2 on the table.
  double workspace_half_extent = 0.1;

  void validate() const;
};

struct WorldState {
  ObjectModel object;
  Pose object_pose;
  Pose object_initial_pose;
  GripperState gripper;
  Face target_face = Face::kTop;
  GraspMode grasp_mode = GraspMode::kTop;
  int step_index = 0;
  int k = 5;
  ActionBounds bounds;
};

struct RewardWeights {
  double w_success = 1.0;
  double w_dist = 2.0;     // per meter
  double w_disp = 5.0;     // per meter beyond disp_tol
  double w_contact = 0.1;
  double disp_tol = 0.005;
};

struct StepInfo {
  double centroid_distance = 0.0;
  double rotation_offset = 0.0;
  double object_displacement = 0.0;
  double fingertip_force = 0.0;
  bool terminal = false;
  bool grasp_success = false;  // meaningful only for grasp-attempt infos
  friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct StepResult {
  WorldState state;
  StepInfo info;
};

WorldState reset_episode(const EpisodeConfig& cfg, const ObjectModel& object,
                         uint64_t seed);

// Applies one clipped action. `info.terminal` reports that the move budget
// is exhausted (step_index == k) and the next event is the grasp attempt.
StepResult step(const WorldState& state, const Action& action);

bool attempt_grasp(const WorldState& state);

// The info describing the grasp-attempt transition at step_index == k.
StepInfo grasp_info(const WorldState& state);

// Reward of a move transition. The success term never fires here.
double compute_move_reward(const StepInfo& info, const RewardWeights& w);
double compute_reward(const StepInfo& info, const RewardWeights& w);

double centroid_distance(const WorldState& state);
double rotation_offset(const WorldState& state);
double object_displacement(const WorldState& state);
Vec3 object_centroid(const WorldState& state);

struct GraspTarget {
  Vec3 tcp;
  double yaw = 0.0;  // ideal rotation about the approach axis nearest the current one
};
GraspTarget ideal_grasp(const WorldState& state);

// Rotates everything physical about the world origin by `theta`.
WorldState rotate_world(const WorldState& state, double theta);

std::string_view to_string(Face face);
std::string_view to_string(GraspMode mode);
std::string_view to_string(Shape shape);
Face face_from_string(std::string_view s);
GraspMode grasp_mode_from_string(std::string_view s);

}  // namespace graspgym::sim

#endif  // GRASPGYM_SIM_WORLD_H_
