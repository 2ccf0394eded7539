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

#ifndef GRASPGYM_RENDER_RASTER_H_
#define GRASPGYM_RENDER_RASTER_H_

#include <cstdint>
#include <vector>

#include "graspgym/render/camera.h"
#include "graspgym/render/image.h"
#include "graspgym/render/scene.h"
#include "graspgym/sim/world.h"

namespace graspgym::render {

enum class Surface : uint8_t { kBackground = 0, kTable, kObject, kFinger };

struct RenderOptions {
  bool draw_fingers = true;
  bool draw_object = true;
};

struct RenderOutput {
  Image image;                   // camera resolution, shaded RGB
  std::vector<Surface> surface;  // per pixel, row-major
};

// Depth-buffered triangle rasterization of table, object and fingers with
// flat Lambert shading.
RenderOutput render_buffers(const sim::WorldState& state,
                            const CameraModel& camera,
                            const SceneRandomization& scene,
                            const RenderOptions& options = {});

Image render(const sim::WorldState& state, const CameraModel& camera,
             const SceneRandomization& scene,
             const RenderOptions& options = {});

// Procedural albedo, exposed for tests.
Rgb table_albedo(const TableTexture& texture, double x, double y);
// `local` is in the object frame with z = 0 on the table.
Rgb object_albedo(int texture_id, const Vec3& local, const Vec3& local_normal,
                  const Vec3& dims);

// Brightness factor for a surface with unit normal `n`.
double lambert(const Light& light, const Vec3& n);

}  // namespace graspgym::render

#endif  // GRASPGYM_RENDER_RASTER_H_
