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

#ifndef GRASPGYM_RENDER_IMAGE_H_
#define GRASPGYM_RENDER_IMAGE_H_

#include <cstddef>
#include <string>
#include <vector>

namespace graspgym::render {

// Interleaved RGB, row-major, values nominally in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  Image() = default;
  Image(int w, int h, float fill = 0.0f)
      : width(w), height(h), data(size_t(w) * h * 3, fill) {}

  float& at(int x, int y, int c) { return data[(size_t(y) * width + x) * 3 + c]; }
  float at(int x, int y, int c) const {
    return data[(size_t(y) * width + x) * 3 + c];
  }
  friend bool operator==(const Image&, const Image&) = default;
};

// Network input: exactly 64 x 40 x 3, every value in [0, 1].
struct Observation {
  static constexpr int kWidth = 64;
  static constexpr int kHeight = 40;
  static constexpr int kChannels = 3;
  static constexpr size_t kSize = size_t(kWidth) * kHeight * kChannels;

  std::vector<float> data = std::vector<float>(kSize, 0.0f);  // HWC

  float at(int x, int y, int c) const {
    return data[(size_t(y) * kWidth + x) * kChannels + c];
  }
  friend bool operator==(const Observation&, const Observation&) = default;
};

// 8-bit RGB PNG; values are clamped and rounded from [0, 1].
void write_png(const std::string& path, const Image& image);
void write_png(const std::string& path, const Observation& obs);

}  // namespace graspgym::render

#endif  // GRASPGYM_RENDER_IMAGE_H_
