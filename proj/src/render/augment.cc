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

#include "graspgym/render/augment.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "graspgym/errors.h"

namespace graspgym::render {

std::vector<double> gaussian_kernel(double kernel) {
  if (!(kernel > 0.0)) return {1.0};
  const int radius = int(std::ceil(kernel));
  const double sigma = kernel / 3.0;
  std::vector<double> taps(size_t(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double t = std::exp(-double(i * i) / (2 * sigma * sigma));
    taps[size_t(i + radius)] = t;
    sum += t;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

void rgb_to_hsv(double r, double g, double b, double& h, double& s,
                double& v) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  v = mx;
  s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    h = 0.0;
    return;
  }
  if (mx == r) {
    h = (g - b) / d;
  } else if (mx == g) {
    h = 2.0 + (b - r) / d;
  } else {
    h = 4.0 + (r - g) / d;
  }
  h /= 6.0;
  if (h < 0.0) h += 1.0;
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g,
                double& b) {
  if (s <= 0.0) {
    r = g = b = v;
    return;
  }
  h = (h - std::floor(h)) * 6.0;
  const int sector = std::min(5, int(h));
  const double f = h - sector;
  const double p = v * (1 - s);
  const double q = v * (1 - s * f);
  const double t = v * (1 - s * (1 - f));
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
}

Image apply_hsv_jitter(const Image& image, const HsvJitter& j) {
  if (j.identity()) return image;
  Image out = image;
  for (size_t i = 0; i < out.data.size(); i += 3) {
    double h, s, v;
    rgb_to_hsv(out.data[i], out.data[i + 1], out.data[i + 2], h, s, v);
    h += j.hue_shift;
    s = std::clamp(s * j.sat_gain, 0.0, 1.0);
    v = std::clamp(v * j.val_gain, 0.0, 1.0);
    double r, g, b;
    hsv_to_rgb(h, s, v, r, g, b);
    out.data[i] = float(r);
    out.data[i + 1] = float(g);
    out.data[i + 2] = float(b);
  }
  return out;
}

Image gaussian_blur(const Image& image, double kernel) {
  if (!(kernel > 0.0)) return image;
  const std::vector<double> taps = gaussian_kernel(kernel);
  const int radius = int(taps.size() / 2);
  const int w = image.width;
  const int h = image.height;
  Image tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          const int xx = std::clamp(x + k, 0, w - 1);
          acc += taps[size_t(k + radius)] * image.at(xx, y, c);
        }
        tmp.at(x, y, c) = float(acc);
      }
    }
  }
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          const int yy = std::clamp(y + k, 0, h - 1);
          acc += taps[size_t(k + radius)] * tmp.at(x, yy, c);
        }
        out.at(x, y, c) = float(acc);
      }
    }
  }
  return out;
}

Image box_downsample2(const Image& image) {
  const int w = image.width / 2;
  const int h = image.height / 2;
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        const float s = image.at(2 * x, 2 * y, c) + image.at(2 * x + 1, 2 * y, c) +
                        image.at(2 * x, 2 * y + 1, c) +
                        image.at(2 * x + 1, 2 * y + 1, c);
        out.at(x, y, c) = s * 0.25f;
      }
    }
  }
  return out;
}

Observation make_observation(const Image& raw, const SceneRandomization& scene) {
  if (raw.width != 2 * Observation::kWidth ||
      raw.height != 2 * Observation::kHeight ||
      raw.data.size() != size_t(raw.width) * raw.height * 3) {
    throw ContractError("make_observation expects a 128x80x3 image, got " +
                        std::to_string(raw.width) + "x" +
                        std::to_string(raw.height));
  }
  const Image small =
      box_downsample2(gaussian_blur(apply_hsv_jitter(raw, scene.hsv),
                                    scene.blur_kernel));
  Observation obs;
  for (size_t i = 0; i < Observation::kSize; ++i)
    obs.data[i] = std::clamp(small.data[i], 0.0f, 1.0f);
  return obs;
}

}  // namespace graspgym::render
