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

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <vector>

#include "graspgym/render/image.h"

namespace graspgym::render {
namespace {

void write_rgb8(const std::string& path, int w, int h,
                const std::vector<float>& data) {
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"),
                                           &std::fclose);
  if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng initialization failed");
  }
  std::vector<png_byte> rows(size_t(w) * h * 3);
  for (size_t i = 0; i < rows.size(); ++i)
    rows[i] = png_byte(std::lround(std::clamp(data[i], 0.0f, 1.0f) * 255.0f));
  std::vector<png_bytep> row_ptrs(static_cast<size_t>(h));
  for (int y = 0; y < h; ++y) row_ptrs[size_t(y)] = &rows[size_t(y) * w * 3];

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng failed writing " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, png_uint_32(w), png_uint_32(h), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png(const std::string& path, const Image& image) {
  write_rgb8(path, image.width, image.height, image.data);
}

void write_png(const std::string& path, const Observation& obs) {
  write_rgb8(path, Observation::kWidth, Observation::kHeight, obs.data);
}

}  // namespace graspgym::render
