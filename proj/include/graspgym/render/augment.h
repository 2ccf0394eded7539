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

#ifndef GRASPGYM_RENDER_AUGMENT_H_
#define GRASPGYM_RENDER_AUGMENT_H_

#include <vector>

#include "graspgym/render/image.h"
#include "graspgym/render/scene.h"

namespace graspgym::render {

// Normalized 1-D Gaussian taps for a blur of size `kernel` pixels:
// sigma = kernel / 3, 2 * ceil(kernel) + 1 taps.
std::vector<double> gaussian_kernel(double kernel);

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v);
void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b);

Image apply_hsv_jitter(const Image& image, const HsvJitter& jitter);
// Separable blur, edge pixels replicated. kernel <= 0 returns the input.
Image gaussian_blur(const Image& image, double kernel);
Image box_downsample2(const Image& image);

// HSV jitter, blur and 2x2 downsample of a 128 x 80 render.
Observation make_observation(const Image& raw, const SceneRandomization& scene);

}  // namespace graspgym::render

#endif  // GRASPGYM_RENDER_AUGMENT_H_
