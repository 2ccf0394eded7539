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

#ifndef GRASPGYM_RENDER_CAMERA_H_
#define GRASPGYM_RENDER_CAMERA_H_

namespace graspgym::render {

// Wrist pinhole camera. It sits `mount_back` meters behind the tool-center
// point on the approach axis and looks along it, between the fingers.
// Image x runs along the closing axis, image y along the pad axis.
struct CameraModel {
  double focal_x = 80.0;  // pixels
  double focal_y = 80.0;
  double principal_x = 64.0;
  double principal_y = 40.0;
  int width = 128;
  int height = 80;
  double mount_back = 0.06;
  double near_plane = 0.004;

  void validate() const;
};

}  // namespace graspgym::render

#endif  // GRASPGYM_RENDER_CAMERA_H_
