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
#include <cmath>
#include <vector>

#include "doctest.h"
#include "graspgym/errors.h"
#include "graspgym/rng.h"
#include "graspgym/sim/world.h"

using namespace graspgym;
using namespace graspgym::sim;

namespace {

WorldState top_box_state(uint64_t seed = 42) {
  EpisodeConfig cfg;
  return reset_episode(cfg, catalog_object("box"), seed);
}

// Places the TCP at the object centroid with zero rotation offset.
WorldState centered(WorldState s) {
  s.gripper.pose.position = object_centroid(s);
  s.gripper.pose.yaw = ideal_grasp(s).yaw;
  s.step_index = s.k;
  return s;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("reset places the gripper 2 to 4.5 cm above the top") {
  const WorldState s = top_box_state(42);
  const double above = s.gripper.pose.position.z - s.object.height();
  CHECK(above >= 0.02);
  CHECK(above <= 0.045);
  CHECK(s.step_index == 0);
  CHECK(s.gripper.aperture == kGripper.max_aperture);
  CHECK(s.gripper.fingertip_force == 0.0);
}

TEST_CASE("zero rotation offset range gives the ideal yaw") {
  EpisodeConfig cfg;
  cfg.init_rot_offset_max = 0.0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const WorldState s = reset_episode(cfg, catalog_object("box"), seed);
    CHECK(rotation_offset(s) == 0.0);
    CHECK(s.gripper.pose.yaw == ideal_grasp(s).yaw);
  }
}

TEST_CASE("reset covers every randomized coordinate range") {
  EpisodeConfig cfg;
  const ObjectModel box = catalog_object("box");
  const int n = 10000;
  double lo[5], hi[5];
  for (int i = 0; i < 5; ++i) {
    lo[i] = INFINITY;
    hi[i] = -INFINITY;
  }
  for (int i = 0; i < n; ++i) {
    const WorldState s = reset_episode(cfg, box, uint64_t(i) * 7919 + 3);
    const Vec3 rel = rotate_z(s.gripper.pose.position - object_centroid(s),
                              -s.object_pose.yaw);
    const double v[5] = {s.object_pose.position.x, rel.x, rel.y,
                         s.gripper.pose.position.z - box.height(), rotation_offset(s)};
    for (int j = 0; j < 5; ++j) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
  }
  const double want_lo[5] = {-0.1, -0.025, -0.025, 0.02, -kPi / 4};
  const double want_hi[5] = {0.1, 0.025, 0.025, 0.045, kPi / 4};
  for (int j = 0; j < 5; ++j) {
    const double tol = 0.01 * (want_hi[j] - want_lo[j]);
    CHECK(lo[j] >= want_lo[j] - 1e-12);
    CHECK(hi[j] <= want_hi[j] + 1e-12);
    CHECK(lo[j] <= want_lo[j] + tol);
    CHECK(hi[j] >= want_hi[j] - tol);
  }
}

TEST_CASE("reset is deterministic per seed") {
  const WorldState a = top_box_state(9);
  const WorldState b = top_box_state(9);
  CHECK(a.gripper.pose.position == b.gripper.pose.position);
  CHECK(a.gripper.pose.yaw == b.gripper.pose.yaw);
  CHECK(a.object_pose.position == b.object_pose.position);
}

TEST_CASE("invalid mode and face combination is a configuration error") {
  EpisodeConfig cfg;
  const ObjectModel sides_only =
      make_box("sides", 0.02, 0.03, 0.05, 0, {Face::kSideA, Face::kSideB});
  CHECK_THROWS_AS(reset_episode(cfg, sides_only, 1), ConfigError);
  const ObjectModel too_wide = make_box("wide", 0.05, 0.06, 0.05, 0, {Face::kTop});
  CHECK_THROWS_AS(reset_episode(cfg, too_wide, 1), ConfigError);
  cfg.k = 0;
  CHECK_THROWS_AS(reset_episode(cfg, catalog_object("box"), 1), ConfigError);
}

TEST_CASE("multi-side mode picks side faces and approaches horizontally") {
  EpisodeConfig cfg;
  cfg.grasp_mode = GraspMode::kMultiSide;
  int side = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const WorldState s = reset_episode(cfg, catalog_object("tall_box"), seed);
    if (s.target_face != Face::kTop) {
      ++side;
      CHECK(s.gripper.approach == ApproachAxis::kSide);
      CHECK(gripper_frame(s.gripper).approach.z == 0.0);
    }
  }
  CHECK(side > 0);
}

TEST_CASE("identity action leaves the world unchanged") {
  const WorldState s = top_box_state(3);
  const StepResult r = step(s, {0, 0, 0, 0});
  CHECK(r.state.gripper.pose.position == s.gripper.pose.position);
  CHECK(r.state.gripper.pose.yaw == s.gripper.pose.yaw);
  CHECK(r.state.object_pose.position == s.object_pose.position);
  CHECK(r.info.fingertip_force == 0.0);
  CHECK(r.state.step_index == 1);
}

TEST_CASE("translation is clipped to 5 cm") {
  const WorldState s = top_box_state(3);
  const StepResult r = step(s, {0.10, 0, 0, 0});
  const Vec3 d = r.state.gripper.pose.position - s.gripper.pose.position;
  CHECK(norm(d) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(dot(d, gripper_frame(s.gripper).closing) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("rotation is clipped to pi/4") {
  const WorldState s = top_box_state(3);
  const StepResult r = step(s, {0, 0, 0, kPi / 2});
  CHECK(wrap_angle(r.state.gripper.pose.yaw - s.gripper.pose.yaw) ==
        doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("translation follows the gripper frame") {
  WorldState s = top_box_state(5);
  s.object_pose.position = {0.3, 0.3, 0.0};  // out of the way
  s.object_initial_pose = s.object_pose;
  const GripperFrame f = gripper_frame(s.gripper);
  const StepResult r = step(s, {0.01, -0.02, 0.005, 0});
  const Vec3 want = s.gripper.pose.position + f.closing * 0.01 + f.pad * -0.02 +
                    f.approach * 0.005;
  CHECK(norm(r.state.gripper.pose.position - want) < 1e-12);
}

TEST_CASE("stepping a terminal state is a protocol error") {
  WorldState s = top_box_state(1);
  for (int i = 0; i < s.k; ++i) s = step(s, {}).state;
  CHECK(s.step_index == s.k);
  CHECK_THROWS_AS(step(s, {}), ProtocolError);
  CHECK_NOTHROW(attempt_grasp(s));
}

TEST_CASE("terminal flag is raised on the k-th step") {
  WorldState s = top_box_state(1);
  for (int i = 0; i < s.k; ++i) {
    const StepResult r = step(s, {});
    CHECK(r.info.terminal == (i == s.k - 1));
    s = r.state;
  }
}

TEST_CASE("grasp attempt before the final step is a protocol error") {
  CHECK_THROWS_AS(attempt_grasp(top_box_state(1)), ProtocolError);
}

TEST_CASE("gripper never goes below the table") {
  WorldState s = top_box_state(11);
  s.object_pose.position = {0.3, 0.3, 0.0};
  s.object_initial_pose = s.object_pose;
  for (int i = 0; i < s.k; ++i) {
    s = step(s, {0, 0, 0.05, 0}).state;
    for (const OrientedBox& b : finger_boxes(s.gripper)) {
      const ConvexHull h = make_box_hull(b);
      for (const Vec3& v : h.vertices) CHECK(v.z >= -1e-12);
    }
  }
}

TEST_CASE("a finger driven into the object pushes it and records force") {
  WorldState s = top_box_state(2);
  s.gripper.pose.yaw = ideal_grasp(s).yaw;
  const GripperFrame f = gripper_frame(s.gripper);
  // Mid height, far enough along -closing that the +closing finger starts clear.
  s.gripper.pose.position = object_centroid(s) - f.closing * 0.045;
  const StepResult r = step(s, {0.03, 0, 0, 0});
  CHECK(r.info.fingertip_force > 0.0);
  CHECK(r.info.object_displacement > 0.0);
}

TEST_CASE("pressing down on top of the object lifts the gripper") {
  WorldState s = top_box_state(2);
  // Closing along the long footprint axis, one finger fully over the top.
  s.gripper.pose.yaw = ideal_grasp(s).yaw + kPi / 2;
  const GripperFrame f = gripper_frame(s.gripper);
  const double finger_center = kGripper.max_aperture / 2 + kGripper.finger_thickness / 2;
  s.gripper.pose.position = object_centroid(s) - f.closing * finger_center;
  s.gripper.pose.position.z = s.object.height() + 0.01;
  const StepResult r = step(s, {0, 0, 0.05, 0});
  CHECK(r.info.object_displacement == 0.0);
  CHECK(r.state.gripper.pose.position.z >= s.object.height() - 1e-9);
  CHECK(r.info.fingertip_force > 0.0);
}

TEST_CASE("ideal grasp succeeds for every catalog object and face") {
  for (const std::string& name : catalog_names()) {
    const ObjectModel obj = catalog_object(name);
    EpisodeConfig cfg;
    cfg.grasp_mode = GraspMode::kMultiSide;
    for (uint64_t seed = 0; seed < 40; ++seed) {
      const WorldState s = centered(reset_episode(cfg, obj, seed));
      INFO(name, " face ", to_string(s.target_face));
      CHECK(attempt_grasp(s));
    }
    if (obj.has_face(Face::kTop)) {
      EpisodeConfig top;
      const WorldState s = centered(reset_episode(top, obj, 5));
      CHECK(attempt_grasp(s));
    }
  }
}

TEST_CASE("fingers that miss the object fail") {
  WorldState s = centered(top_box_state(4));
  const GripperFrame f = gripper_frame(s.gripper);
  const double miss = s.object.dimensions.x / 2 + kGripper.pad_width / 2 + 0.001;
  s.gripper.pose.position = s.gripper.pose.position + f.closing * miss;
  CHECK_FALSE(attempt_grasp(s));
  s = centered(top_box_state(4));
  s.gripper.pose.position = s.gripper.pose.position + f.pad * (0.03 + 0.016);
  CHECK_FALSE(attempt_grasp(s));
}

TEST_CASE("rotation beyond the friction tolerance fails") {
  WorldState s = centered(top_box_state(4));
  s.gripper.pose.yaw += 0.26;
  CHECK_FALSE(attempt_grasp(s));
  s.gripper.pose.yaw -= 0.26 - 0.2;
  CHECK(attempt_grasp(s));
}

TEST_CASE("gripper above the object fails") {
  WorldState s = centered(top_box_state(4));
  s.gripper.pose.position.z = s.object.height() + 0.001;
  CHECK_FALSE(attempt_grasp(s));
}

TEST_CASE("reward examples") {
  RewardWeights w;
  StepInfo win;
  win.terminal = true;
  win.grasp_success = true;
  CHECK(compute_reward(win, w) == 1.0);

  StepInfo far;
  far.centroid_distance = 0.03;
  CHECK(compute_reward(far, w) == doctest::Approx(-0.06).epsilon(1e-12));

  StepInfo touch = far;
  touch.fingertip_force = 0.2;
  CHECK(compute_reward(touch, w) < compute_reward(far, w));
  // The contact term never applies to the grasp attempt.
  touch.terminal = true;
  CHECK(compute_reward(touch, w) == compute_reward(far, w));
}

TEST_CASE("reward is exactly the four-term formula") {
  RewardWeights w;
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    StepInfo info;
    info.centroid_distance = rng.uniform(0, 0.2);
    info.object_displacement = rng.uniform(0, 0.02);
    info.fingertip_force = rng.uniform(0, 1);
    info.terminal = rng.bernoulli(0.5);
    info.grasp_success = rng.bernoulli(0.5);
    const double want = (info.terminal && info.grasp_success ? 1.0 : 0.0) -
                        2.0 * info.centroid_distance -
                        5.0 * std::max(0.0, info.object_displacement - 0.005) -
                        (info.terminal ? 0.0 : 0.1 * info.fingertip_force);
    CHECK(compute_reward(info, w) == doctest::Approx(want).epsilon(1e-12));
    // Partial derivative signs.
    StepInfo more = info;
    more.centroid_distance += 0.01;
    CHECK(compute_reward(more, w) < compute_reward(info, w));
    more = info;
    more.object_displacement += 0.01;
    CHECK(compute_reward(more, w) < compute_reward(info, w));
    more = info;
    more.fingertip_force += 0.1;
    CHECK(compute_reward(more, w) <= compute_reward(info, w));
  }
}

TEST_CASE("move reward omits the success term") {
  StepInfo info;
  info.terminal = true;
  info.grasp_success = true;
  info.fingertip_force = 1.0;
  CHECK(compute_move_reward(info, RewardWeights{}) == doctest::Approx(-0.1));
}

TEST_CASE("centroid distance") {
  WorldState s = top_box_state(8);
  s.gripper.pose.position = object_centroid(s);
  CHECK(centroid_distance(s) == 0.0);
  s.gripper.pose.position.z += 0.05;
  CHECK(centroid_distance(s) == doctest::Approx(0.05).epsilon(1e-12));
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    s.gripper.pose.position = {rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                               rng.uniform(0, 0.2)};
    s.object_pose.position = {rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), 0.0};
    const double dx = s.gripper.pose.position.x - s.object_pose.position.x;
    const double dy = s.gripper.pose.position.y - s.object_pose.position.y;
    const double dz = s.gripper.pose.position.z - s.object.dimensions.z / 2;
    CHECK(centroid_distance(s) == doctest::Approx(std::sqrt(dx * dx + dy * dy + dz * dz)));
  }
}

TEST_CASE("rotation offset") {
  WorldState s = centered(top_box_state(8));
  CHECK(rotation_offset(s) == doctest::Approx(0.0).epsilon(1e-12));

  const double ideal = s.gripper.pose.yaw;
  s.gripper.pose.yaw = wrap_angle(ideal + 0.9 * kPi);
  CHECK(rotation_offset(s) == doctest::Approx(-0.1 * kPi).epsilon(1e-9));

  // Modular oracle: value congruent to the raw offset modulo pi, in (-pi/2, pi/2].
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const double raw = rng.uniform(-3 * kPi, 3 * kPi);
    s.gripper.pose.yaw = wrap_angle(ideal + raw);
    const double got = rotation_offset(s);
    CHECK(got > -kPi / 2 - 1e-12);
    CHECK(got <= kPi / 2 + 1e-12);
    const double k = (raw - got) / kPi;
    CHECK(std::abs(k - std::round(k)) < 1e-9);
  }

  EpisodeConfig cfg;
  cfg.grasp_mode = GraspMode::kMultiSide;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    WorldState c = reset_episode(cfg, catalog_object("can"), seed);
    c.gripper.pose.yaw = rng.uniform(-kPi, kPi);
    if (c.gripper.approach == ApproachAxis::kTopDown) CHECK(rotation_offset(c) == 0.0);
  }
  EpisodeConfig top;
  WorldState can = reset_episode(top, catalog_object("can"), 2);
  for (int i = 0; i < 20; ++i) {
    can.gripper.pose.yaw = rng.uniform(-kPi, kPi);
    CHECK(rotation_offset(can) == 0.0);
  }
}

TEST_CASE("clip is idempotent and bounded") {
  ActionBounds b;
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Action a{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                   rng.uniform(-3, 3)};
    const Action c = clip(a, b);
    CHECK(clip(c, b) == c);
    CHECK(within_bounds(c, b));
  }
}

TEST_CASE("episodes are covariant under a common world rotation") {
  Rng rng(31);
  for (const std::string name : {"box", "can", "tall_box"}) {
    for (GraspMode mode : {GraspMode::kTop, GraspMode::kMultiSide}) {
      for (int trial = 0; trial < 20; ++trial) {
        EpisodeConfig cfg;
        cfg.grasp_mode = mode;
        WorldState a = reset_episode(cfg, catalog_object(name), uint64_t(trial));
        const double theta = rng.uniform(-kPi, kPi);
        WorldState b = rotate_world(a, theta);
        INFO(name, " mode ", to_string(mode), " trial ", trial);
        for (int t = 0; t < a.k; ++t) {
          const Action act{rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05),
                           rng.uniform(-0.02, 0.05), rng.uniform(-0.5, 0.5)};
          const StepResult ra = step(a, act);
          const StepResult rb = step(b, act);
          CHECK(ra.info.centroid_distance == doctest::Approx(rb.info.centroid_distance).epsilon(1e-9));
          CHECK(ra.info.rotation_offset == doctest::Approx(rb.info.rotation_offset).epsilon(1e-9));
          CHECK(ra.info.object_displacement ==
                doctest::Approx(rb.info.object_displacement).epsilon(1e-9));
          CHECK(ra.info.fingertip_force == doctest::Approx(rb.info.fingertip_force).epsilon(1e-9));
          CHECK(ra.info.terminal == rb.info.terminal);
          a = ra.state;
          b = rb.state;
        }
        CHECK(attempt_grasp(a) == attempt_grasp(b));
      }
    }
  }
}

TEST_CASE("without contact the object never moves") {
  Rng rng(77);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    WorldState s = top_box_state(uint64_t(trial));
    bool touched = false;
    for (int t = 0; t < s.k; ++t) {
      const StepResult r = step(s, {rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05),
                                    rng.uniform(-0.05, 0.05), rng.uniform(-0.8, 0.8)});
      touched = touched || r.info.fingertip_force > 0.0;
      s = r.state;
    }
    if (!touched) {
      ++checked;
      CHECK(object_displacement(s) == 0.0);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("episodes are bit-identical for identical inputs") {
  for (int trial = 0; trial < 10; ++trial) {
    WorldState a = top_box_state(uint64_t(trial));
    WorldState b = top_box_state(uint64_t(trial));
    Rng ra{uint64_t(trial)}, rb{uint64_t(trial)};
    for (int t = 0; t < a.k; ++t) {
      const Action x{ra.uniform(-0.05, 0.05), ra.uniform(-0.05, 0.05), ra.uniform(-0.05, 0.05), 0.1};
      const Action y{rb.uniform(-0.05, 0.05), rb.uniform(-0.05, 0.05), rb.uniform(-0.05, 0.05), 0.1};
      const StepResult sa = step(a, x);
      const StepResult sb = step(b, y);
      CHECK(sa.info == sb.info);
      a = sa.state;
      b = sb.state;
    }
    CHECK(grasp_info(a) == grasp_info(b));
  }
}

}  // TEST_SUITE
