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

#include "graspgym/render/scene.h"

#include <cmath>

#include "graspgym/rng.h"

namespace graspgym::render {
namespace {

Rgb random_color(Rng& rng) {
  return {rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95),
          rng.uniform(0.05, 0.95)};
}

}  // namespace

SceneRandomization randomize_scene(uint64_t seed) {
  Rng rng(seed);
  SceneRandomization r;
  r.table.kind = static_cast<TableKind>(rng.uniform_int(0, 3));
  r.table.color_a = random_color(rng);
  r.table.color_b = random_color(rng);
  r.table.scale = rng.uniform(0.008, 0.05);
  r.table.angle = rng.uniform(0.0, kPi);
  r.table.noise_seed = rng.next_u64();

  const double azimuth = rng.uniform(-kPi, kPi);
  const double elevation = rng.uniform(0.35 * kPi / 2, kPi / 2);
  r.light.direction = {std::cos(elevation) * std::cos(azimuth),
                       std::cos(elevation) * std::sin(azimuth),
                       std::sin(elevation)};
  r.light.intensity = rng.uniform(0.4, 1.6);

  r.hsv.hue_shift = rng.uniform(-0.1, 0.1);
  r.hsv.sat_gain = rng.uniform(0.6, 1.4);
  r.hsv.val_gain = rng.uniform(0.6, 1.4);
  r.blur_kernel = rng.uniform(kBlurMin, kBlurMax);
  r.reserved = false;
  return r;
}

SceneRandomization heldout_scene() {
  SceneRandomization r;
  r.table.kind = TableKind::kSolid;
  r.table.color_a = {0.82, 0.78, 0.70};
  r.table.color_b = r.table.color_a;
  r.light.direction = normalized(Vec3{0.3, -0.2, 0.93});
  r.light.intensity = 1.0;
  r.hsv = {};
  r.blur_kernel = 1.0;
  r.reserved = true;
  return r;
}

SceneRandomization plain_scene() {
  SceneRandomization r;
  r.table.kind = TableKind::kSolid;
  r.table.color_a = {0.45, 0.50, 0.56};
  r.table.color_b = r.table.color_a;
  r.light.direction = {0.0, 0.0, 1.0};
  r.light.intensity = 1.0;
  r.hsv = {};
  r.blur_kernel = 1.0;
  return r;
}

std::string_view to_string(TableKind kind) {
  switch (kind) {
    case TableKind::kSolid:
      return "solid";
    case TableKind::kChecker:
      return "checker";
    case TableKind::kNoise:
      return "noise";
    case TableKind::kStripes:
      return "stripes";
  }
  return "?";
}

}  // namespace graspgym::render
