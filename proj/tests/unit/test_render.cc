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
#include <vector>

#include "doctest.h"
#include "graspgym/errors.h"
#include "graspgym/render/augment.h"
#include "graspgym/render/raster.h"
#include "graspgym/sim/world.h"

using namespace graspgym;
using namespace graspgym::render;

namespace {

sim::WorldState box_state(uint64_t seed = 7) {
  sim::EpisodeConfig cfg;
  return sim::reset_episode(cfg, sim::catalog_object("box"), seed);
}

// Gripper directly above the object center, axes aligned with the box.
sim::WorldState overhead(double height_above_top) {
  sim::WorldState s = box_state();
  s.object_pose.yaw = 0.0;
  s.gripper.pose.position = {s.object_pose.position.x, s.object_pose.position.y,
                             s.object.height() + height_above_top};
  s.gripper.pose.yaw = 0.0;
  return s;
}

Image ramp_image(int w, int h) {
  Image img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c)
        img.at(x, y, c) = float(std::fmod(0.013 * x + 0.029 * y + 0.31 * c, 1.0));
  return img;
}

SceneRandomization no_augment(SceneRandomization r) {
  r.hsv = {};
  r.blur_kernel = 0.0;
  return r;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("sampled blur kernels lie in [1, 3] and are uniform") {
  const int n = 10000;
  std::vector<double> k;
  for (int i = 0; i < n; ++i) {
    const SceneRandomization r = randomize_scene(uint64_t(i));
    CHECK(r.blur_kernel >= kBlurMin);
    CHECK(r.blur_kernel <= kBlurMax);
    k.push_back(r.blur_kernel);
  }
  std::sort(k.begin(), k.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = (k[size_t(i)] - 1.0) / 2.0;
    d = std::max({d, std::abs(f - double(i) / n), std::abs(f - double(i + 1) / n)});
  }
  // Asymptotic Kolmogorov critical value at the 0.01 level.
  CHECK(d < 1.6276 / std::sqrt(double(n)));
}

TEST_CASE("scene sampling is deterministic and never returns the held-out scene") {
  CHECK(randomize_scene(123) == randomize_scene(123));
  CHECK_FALSE(randomize_scene(123) == randomize_scene(124));
  const SceneRandomization held = heldout_scene();
  CHECK(held.reserved);
  CHECK(held.blur_kernel == 1.0);
  CHECK(held.hsv.identity());
  for (uint64_t s = 0; s < 2000; ++s) {
    const SceneRandomization r = randomize_scene(s);
    CHECK_FALSE(r.reserved);
    CHECK_FALSE(r == held);
    CHECK(r.light.intensity >= 0.4);
    CHECK(r.light.intensity <= 1.6);
    CHECK(r.hsv.sat_gain > 0.0);
    CHECK(r.hsv.val_gain > 0.0);
  }
}

TEST_CASE("bare solid table renders as a single shaded color") {
  sim::WorldState s = overhead(0.05);
  SceneRandomization scene = plain_scene();
  scene.table.color_a = scene.table.color_b = {0.6, 0.3, 0.2};
  scene.light.direction = normalized(Vec3{0.2, 0.1, 0.97});
  scene.light.intensity = 1.2;
  RenderOptions opt;
  opt.draw_fingers = false;
  opt.draw_object = false;
  const RenderOutput out = render_buffers(s, CameraModel{}, scene, opt);
  const double shade = 1.2 * (0.35 + 0.65 * scene.light.direction.z);
  for (size_t i = 0; i < out.surface.size(); ++i) {
    REQUIRE(out.surface[i] == Surface::kTable);
    for (int c = 0; c < 3; ++c) {
      CHECK(out.image.data[i * 3 + c] ==
            doctest::Approx(std::min(1.0, scene.table.color_a[size_t(c)] * shade))
                .epsilon(1e-6));
    }
  }
}

TEST_CASE("object silhouette matches the pinhole projected area") {
  const CameraModel cam;
  for (double above : {0.02, 0.03, 0.045, 0.08}) {
    const sim::WorldState s = overhead(above);
    RenderOptions opt;
    opt.draw_fingers = false;
    const RenderOutput out = render_buffers(s, cam, plain_scene(), opt);
    const double count = double(std::count(out.surface.begin(), out.surface.end(),
                                            Surface::kObject));
    const double z = above + cam.mount_back;
    const double half_x = 0.5 * cam.focal_x * s.object.dimensions.x / z;
    const double half_y = 0.5 * cam.focal_y * s.object.dimensions.y / z;
    CAPTURE(above);
    // Pixel centers inside the projected top face.
    auto covered = [](double center, double half) {
      return std::floor(center + half - 0.5) - std::ceil(center - half - 0.5) + 1.0;
    };
    CHECK(count == covered(cam.principal_x, half_x) * covered(cam.principal_y, half_y));
    if (above <= 0.03) {
      const double expected = 4.0 * half_x * half_y;
      CHECK(std::abs(count - expected) <= 0.05 * expected);
    }
  }
}

TEST_CASE("rendering and the observation pipeline are deterministic") {
  const sim::WorldState s = box_state(99);
  const SceneRandomization scene = randomize_scene(5);
  const Image a = render::render(s, CameraModel{}, scene);
  const Image b = render::render(s, CameraModel{}, scene);
  CHECK(a == b);
  CHECK(a.width == 128);
  CHECK(a.height == 80);
  CHECK(make_observation(a, scene) == make_observation(b, scene));
}

TEST_CASE("identity augmentation is an exact 2x2 box mean") {
  const Image raw = ramp_image(128, 80);
  const Observation obs = make_observation(raw, no_augment(plain_scene()));
  for (int y = 0; y < Observation::kHeight; ++y) {
    for (int x = 0; x < Observation::kWidth; ++x) {
      for (int c = 0; c < 3; ++c) {
        const double mean = (double(raw.at(2 * x, 2 * y, c)) + raw.at(2 * x + 1, 2 * y, c) +
                             raw.at(2 * x, 2 * y + 1, c) + raw.at(2 * x + 1, 2 * y + 1, c)) /
                            4.0;
        CHECK(obs.at(x, y, c) == doctest::Approx(mean).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("identity augmentation commutes with scaling") {
  const Image raw = ramp_image(128, 80);
  Image half = raw;
  for (float& v : half.data) v *= 0.5f;
  const SceneRandomization scene = no_augment(plain_scene());
  const Observation a = make_observation(raw, scene);
  const Observation b = make_observation(half, scene);
  for (size_t i = 0; i < a.data.size(); ++i) {
    CHECK(b.data[i] == doctest::Approx(0.5 * a.data[i]).epsilon(1e-6));
  }
}

TEST_CASE("gray images stay uniform under hsv jitter") {
  const Image gray(128, 80, 0.4f);
  SceneRandomization scene = plain_scene();
  scene.hsv = {0.07, 1.3, 1.2};
  scene.blur_kernel = 2.5;
  const Observation obs = make_observation(gray, scene);
  for (float v : obs.data) CHECK(v == doctest::Approx(0.48).epsilon(1e-6));
}

TEST_CASE("blurred impulse reproduces a normalized gaussian") {
  for (double kernel : {1.0, 1.7, 3.0}) {
    const int radius = int(std::ceil(kernel));
    const double sigma = kernel / 3.0;
    std::vector<double> g;
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
      g.push_back(std::exp(-0.5 * i * i / (sigma * sigma)));
      sum += g.back();
    }
    for (double& v : g) v /= sum;

    const std::vector<double> taps = gaussian_kernel(kernel);
    REQUIRE(taps.size() == size_t(2 * radius + 1));
    double tap_sum = 0.0;
    for (size_t i = 0; i < taps.size(); ++i) {
      CHECK(taps[i] == doctest::Approx(g[i]).epsilon(1e-9));
      tap_sum += taps[i];
    }
    CHECK(std::abs(tap_sum - 1.0) < 1e-6);

    Image impulse(21, 21);
    for (int c = 0; c < 3; ++c) impulse.at(10, 10, c) = 1.0f;
    const Image out = gaussian_blur(impulse, kernel);
    double total = 0.0;
    for (int y = 0; y < 21; ++y) {
      for (int x = 0; x < 21; ++x) {
        const int dx = x - 10;
        const int dy = y - 10;
        const double want = (std::abs(dx) <= radius && std::abs(dy) <= radius)
                                ? g[size_t(dx + radius)] * g[size_t(dy + radius)]
                                : 0.0;
        CHECK(out.at(x, y, 0) == doctest::Approx(want).epsilon(1e-6));
        total += out.at(x, y, 0);
      }
    }
    CHECK(std::abs(total - 1.0) < 1e-6);
  }
}

TEST_CASE("blur preserves constant images") {
  const Image flat(30, 20, 0.37f);
  const Image out = gaussian_blur(flat, 2.3);
  for (float v : out.data) CHECK(v == doctest::Approx(0.37).epsilon(1e-6));
}

TEST_CASE("observations stay in the unit range under random scenes") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const SceneRandomization scene = randomize_scene(seed);
    const Observation obs = make_observation(render::render(box_state(seed), CameraModel{}, scene), scene);
    REQUIRE(obs.data.size() == Observation::kSize);
    for (float v : obs.data) {
      CHECK(v >= 0.0f);
      CHECK(v <= 1.0f);
    }
  }
}

TEST_CASE("observation rejects the wrong input size") {
  CHECK_THROWS_AS(make_observation(Image(64, 40), plain_scene()), ContractError);
}

}  // TEST_SUITE
