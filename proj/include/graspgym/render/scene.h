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

#ifndef GRASPGYM_RENDER_SCENE_H_
#define GRASPGYM_RENDER_SCENE_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "graspgym/math.h"

namespace graspgym::render {

using Rgb = std::array<double, 3>;

enum class TableKind { kSolid, kChecker, kNoise, kStripes };

struct TableTexture {
  TableKind kind = TableKind::kSolid;
  Rgb color_a{0.5, 0.5, 0.5};
  Rgb color_b{0.5, 0.5, 0.5};
  double scale = 0.03;   // meters per checker cell / stripe period / noise cell
  double angle = 0.0;    // stripe orientation
  uint64_t noise_seed = 0;
  friend bool operator==(const TableTexture&, const TableTexture&) = default;
};

struct Light {
  Vec3 direction{0.0, 0.0, 1.0};  // unit, toward the light
  double intensity = 1.0;         // [0.4, 1.6]
  friend bool operator==(const Light&, const Light&) = default;
};

struct HsvJitter {
  double hue_shift = 0.0;  // turns, [-0.1, 0.1]
  double sat_gain = 1.0;   // [0.6, 1.4]
  double val_gain = 1.0;   // [0.6, 1.4]

  bool identity() const {
    return hue_shift == 0.0 && sat_gain == 1.0 && val_gain == 1.0;
  }
  friend bool operator==(const HsvJitter&, const HsvJitter&) = default;
};

struct SceneRandomization {
  TableTexture table;
  Light light;
  HsvJitter hsv;
  // Gaussian blur size in pixels, sigma = blur_kernel / 3. Sampled scenes
  // use [1, 3]; 0 disables blur.
  double blur_kernel = 1.0;
  // Set only on the reserved held-out evaluation scene.
  bool reserved = false;

  friend bool operator==(const SceneRandomization&,
                         const SceneRandomization&) = default;
};

inline constexpr double kBlurMin = 1.0;
inline constexpr double kBlurMax = 3.0;

// Training-time domain randomization; never yields the reserved scene.
SceneRandomization randomize_scene(uint64_t seed);

// Fixed light-colored table, fixed light, no jitter, blur 1.0.
SceneRandomization heldout_scene();

// Appearance for training with augmentation disabled: fixed and distinct
// from the held-out scene.
SceneRandomization plain_scene();

std::string_view to_string(TableKind kind);

}  // namespace graspgym::render

#endif  // GRASPGYM_RENDER_SCENE_H_
