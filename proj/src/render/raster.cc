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

#include "graspgym/render/raster.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graspgym/errors.h"
#include "graspgym/rng.h"

namespace graspgym::render {
namespace {

constexpr double kAmbient = 0.35;
constexpr double kTableHalfSize = 2.0;
constexpr int kCylinderSides = 24;
constexpr Rgb kBackground{0.18, 0.18, 0.20};
constexpr Rgb kFingerGray{0.55, 0.55, 0.55};

struct Triangle {
  Vec3 p[3];
  Vec3 normal;
  Surface surface;
};

struct CameraPose {
  Vec3 origin;
  Vec3 right;
  Vec3 down;
  Vec3 forward;
};

CameraPose camera_pose(const sim::GripperState& g, const CameraModel& cam) {
  const sim::GripperFrame f = sim::gripper_frame(g);
  return {g.pose.position - f.approach * cam.mount_back, f.closing, f.pad,
          f.approach};
}

void add_quad(std::vector<Triangle>& out, const Vec3& a, const Vec3& b,
              const Vec3& c, const Vec3& d, const Vec3& n, Surface s) {
  out.push_back({{a, b, c}, n, s});
  out.push_back({{a, c, d}, n, s});
}

void add_box(std::vector<Triangle>& out, const sim::OrientedBox& box,
             Surface s) {
  const Vec3 ax[3] = {box.axis_x, box.axis_y, box.axis_z};
  const double h[3] = {box.half_extents.x, box.half_extents.y,
                       box.half_extents.z};
  for (int i = 0; i < 3; ++i) {
    const Vec3& u = ax[(i + 1) % 3];
    const Vec3& v = ax[(i + 2) % 3];
    const double hu = h[(i + 1) % 3];
    const double hv = h[(i + 2) % 3];
    for (int sign = -1; sign <= 1; sign += 2) {
      const Vec3 n = ax[i] * double(sign);
      const Vec3 c = box.center + n * h[i];
      add_quad(out, c - u * hu - v * hv, c + u * hu - v * hv,
               c + u * hu + v * hv, c - u * hu + v * hv, n, s);
    }
  }
}

std::vector<Triangle> scene_triangles(const sim::WorldState& state,
                                      const RenderOptions& options) {
  std::vector<Triangle> tris;
  const double t = kTableHalfSize;
  add_quad(tris, {-t, -t, 0.0}, {t, -t, 0.0}, {t, t, 0.0}, {-t, t, 0.0},
           {0.0, 0.0, 1.0}, Surface::kTable);

  if (options.draw_object) {
    const Vec3& d = state.object.dimensions;
    const Vec3& p = state.object_pose.position;
    const double c = std::cos(state.object_pose.yaw);
    const double s = std::sin(state.object_pose.yaw);
    if (state.object.shape == sim::Shape::kBox) {
      add_box(tris,
              {{p.x, p.y, d.z / 2}, {c, s, 0.0}, {-s, c, 0.0},
               {0.0, 0.0, 1.0}, d * 0.5},
              Surface::kObject);
    } else {
      const double r = d.x / std::cos(kPi / kCylinderSides);
      const Vec3 top{p.x, p.y, d.z};
      for (int i = 0; i < kCylinderSides; ++i) {
        const double a0 = 2 * kPi * i / kCylinderSides;
        const double a1 = 2 * kPi * (i + 1) / kCylinderSides;
        const double am = (a0 + a1) / 2;
        const Vec3 b0{p.x + r * std::cos(a0), p.y + r * std::sin(a0), 0.0};
        const Vec3 b1{p.x + r * std::cos(a1), p.y + r * std::sin(a1), 0.0};
        const Vec3 t0{b0.x, b0.y, d.z};
        const Vec3 t1{b1.x, b1.y, d.z};
        add_quad(tris, b0, b1, t1, t0, {std::cos(am), std::sin(am), 0.0},
                 Surface::kObject);
        tris.push_back({{top, t0, t1}, {0.0, 0.0, 1.0}, Surface::kObject});
      }
    }
  }
  if (options.draw_fingers) {
    for (const sim::OrientedBox& f : sim::finger_boxes(state.gripper))
      add_box(tris, f, Surface::kFinger);
  }
  return tris;
}

struct ClipVertex {
  Vec3 cam;
  Vec3 world;
};

double edge(double ax, double ay, double bx, double by, double px,
            double py) {
  return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

double fract(double x) { return x - std::floor(x); }

double lattice(uint64_t seed, int64_t i, int64_t j) {
  const uint64_t h = mix64(seed ^ mix64(uint64_t(i) * 0x9E3779B1ULL) ^
                           mix64(uint64_t(j) * 0x85EBCA77ULL + 1));
  return double(h >> 11) * (1.0 / 9007199254740992.0);
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t,
          a[2] + (b[2] - a[2]) * t};
}

}  // namespace

void CameraModel::validate() const {
  if (!(focal_x > 0.0 && focal_y > 0.0))
    throw ContractError("camera focal length must be positive");
  if (width <= 0 || height <= 0)
    throw ContractError("camera resolution must be positive");
  if (!(principal_x >= 0.0 && principal_x <= width && principal_y >= 0.0 &&
        principal_y <= height))
    throw ContractError("principal point must lie inside the image");
  if (!(near_plane > 0.0)) throw ContractError("near plane must be positive");
}

double lambert(const Light& light, const Vec3& n) {
  return light.intensity *
         (kAmbient + (1.0 - kAmbient) * std::max(0.0, dot(n, light.direction)));
}

Rgb table_albedo(const TableTexture& tex, double x, double y) {
  const double c = std::cos(tex.angle);
  const double s = std::sin(tex.angle);
  const double u = (c * x + s * y) / tex.scale;
  const double v = (-s * x + c * y) / tex.scale;
  switch (tex.kind) {
    case TableKind::kSolid:
      return tex.color_a;
    case TableKind::kChecker: {
      const int64_t k = int64_t(std::floor(u)) + int64_t(std::floor(v));
      return (k & 1) ? tex.color_b : tex.color_a;
    }
    case TableKind::kStripes:
      return fract(u) < 0.5 ? tex.color_a : tex.color_b;
    case TableKind::kNoise: {
      const double fu = std::floor(u);
      const double fv = std::floor(v);
      const int64_t i = int64_t(fu);
      const int64_t j = int64_t(fv);
      double tu = u - fu;
      double tv = v - fv;
      tu = tu * tu * (3 - 2 * tu);
      tv = tv * tv * (3 - 2 * tv);
      const double n00 = lattice(tex.noise_seed, i, j);
      const double n10 = lattice(tex.noise_seed, i + 1, j);
      const double n01 = lattice(tex.noise_seed, i, j + 1);
      const double n11 = lattice(tex.noise_seed, i + 1, j + 1);
      const double n = (n00 * (1 - tu) + n10 * tu) * (1 - tv) +
                       (n01 * (1 - tu) + n11 * tu) * tv;
      return lerp(tex.color_a, tex.color_b, n);
    }
  }
  return tex.color_a;
}

Rgb object_albedo(int texture_id, const Vec3& local, const Vec3& n,
                  const Vec3& dims) {
  const bool top = n.z > 0.5;
  const double rel_z = local.z / dims.z;
  switch (((texture_id % 3) + 3) % 3) {
    case 0:  // red carton: white stripe along the long top axis, yellow band
      if (top) {
        return std::abs(local.x) < 0.2 * dims.x ? Rgb{0.95, 0.93, 0.88}
                                                : Rgb{0.78, 0.16, 0.12};
      }
      return (rel_z > 0.35 && rel_z < 0.65) ? Rgb{0.95, 0.80, 0.15}
                                            : Rgb{0.78, 0.16, 0.12};
    case 1: {  // can: blue label, dark rim on the lid
      if (top) {
        const double r = std::hypot(local.x, local.y);
        return r > 0.8 * dims.x ? Rgb{0.35, 0.35, 0.38} : Rgb{0.75, 0.75, 0.78};
      }
      return (rel_z > 0.15 && rel_z < 0.85) ? Rgb{0.12, 0.30, 0.80}
                                            : Rgb{0.80, 0.80, 0.84};
    }
    default:  // blue carton with a green top
      if (top) {
        return std::abs(local.y) < 0.25 * dims.y ? Rgb{0.20, 0.70, 0.30}
                                                 : Rgb{0.20, 0.32, 0.78};
      }
      return rel_z > 0.7 ? Rgb{0.92, 0.92, 0.92} : Rgb{0.20, 0.32, 0.78};
  }
}

RenderOutput render_buffers(const sim::WorldState& state,
                            const CameraModel& cam,
                            const SceneRandomization& scene,
                            const RenderOptions& options) {
  cam.validate();
  const int w = cam.width;
  const int h = cam.height;
  const CameraPose pose = camera_pose(state.gripper, cam);
  const std::vector<Triangle> tris = scene_triangles(state, options);

  std::vector<double> depth(size_t(w) * h,
                            std::numeric_limits<double>::infinity());
  std::vector<int> owner(size_t(w) * h, -1);
  std::vector<Vec3> world(size_t(w) * h);

  for (size_t ti = 0; ti < tris.size(); ++ti) {
    const Triangle& tri = tris[ti];
    std::vector<ClipVertex> poly;
    for (const Vec3& p : tri.p) {
      const Vec3 d = p - pose.origin;
      poly.push_back(
          {{dot(d, pose.right), dot(d, pose.down), dot(d, pose.forward)}, p});
    }
    // Near-plane clip.
    std::vector<ClipVertex> clipped;
    for (size_t i = 0; i < poly.size(); ++i) {
      const ClipVertex& a = poly[i];
      const ClipVertex& b = poly[(i + 1) % poly.size()];
      const bool a_in = a.cam.z >= cam.near_plane;
      const bool b_in = b.cam.z >= cam.near_plane;
      if (a_in) clipped.push_back(a);
      if (a_in != b_in) {
        const double t = (cam.near_plane - a.cam.z) / (b.cam.z - a.cam.z);
        clipped.push_back({a.cam + (b.cam - a.cam) * t,
                           a.world + (b.world - a.world) * t});
      }
    }
    if (clipped.size() < 3) continue;

    for (size_t k = 1; k + 1 < clipped.size(); ++k) {
      const ClipVertex* v[3] = {&clipped[0], &clipped[k], &clipped[k + 1]};
      double sx[3], sy[3], iz[3];
      for (int i = 0; i < 3; ++i) {
        iz[i] = 1.0 / v[i]->cam.z;
        sx[i] = cam.focal_x * v[i]->cam.x * iz[i] + cam.principal_x;
        sy[i] = cam.focal_y * v[i]->cam.y * iz[i] + cam.principal_y;
      }
      const double area = edge(sx[0], sy[0], sx[1], sy[1], sx[2], sy[2]);
      if (std::abs(area) < 1e-12) continue;
      const int x0 = std::max(0, int(std::floor(std::min({sx[0], sx[1], sx[2]}))));
      const int x1 = std::min(w - 1, int(std::ceil(std::max({sx[0], sx[1], sx[2]}))));
      const int y0 = std::max(0, int(std::floor(std::min({sy[0], sy[1], sy[2]}))));
      const int y1 = std::min(h - 1, int(std::ceil(std::max({sy[0], sy[1], sy[2]}))));
      for (int py = y0; py <= y1; ++py) {
        const double cy = py + 0.5;
        for (int px = x0; px <= x1; ++px) {
          const double cx = px + 0.5;
          const double b0 = edge(sx[1], sy[1], sx[2], sy[2], cx, cy) / area;
          const double b1 = edge(sx[2], sy[2], sx[0], sy[0], cx, cy) / area;
          const double b2 = edge(sx[0], sy[0], sx[1], sy[1], cx, cy) / area;
          if (b0 < 0.0 || b1 < 0.0 || b2 < 0.0) continue;
          const double inv = b0 * iz[0] + b1 * iz[1] + b2 * iz[2];
          const double z = 1.0 / inv;
          const size_t idx = size_t(py) * w + px;
          if (!(z < depth[idx])) continue;
          depth[idx] = z;
          owner[idx] = int(ti);
          world[idx] = (v[0]->world * (b0 * iz[0]) + v[1]->world * (b1 * iz[1]) +
                        v[2]->world * (b2 * iz[2])) *
                       z;
        }
      }
    }
  }

  RenderOutput out;
  out.image = Image(w, h);
  out.surface.assign(size_t(w) * h, Surface::kBackground);
  const double oc = std::cos(state.object_pose.yaw);
  const double os = std::sin(state.object_pose.yaw);
  const Vec3& op = state.object_pose.position;
  for (size_t idx = 0; idx < owner.size(); ++idx) {
    Rgb color = kBackground;
    if (owner[idx] >= 0) {
      const Triangle& tri = tris[size_t(owner[idx])];
      out.surface[idx] = tri.surface;
      const Vec3& p = world[idx];
      Rgb albedo = kFingerGray;
      if (tri.surface == Surface::kTable) {
        albedo = table_albedo(scene.table, p.x, p.y);
      } else if (tri.surface == Surface::kObject) {
        const double dx = p.x - op.x;
        const double dy = p.y - op.y;
        const Vec3 local{oc * dx + os * dy, -os * dx + oc * dy, p.z};
        const Vec3 ln{oc * tri.normal.x + os * tri.normal.y,
                      -os * tri.normal.x + oc * tri.normal.y, tri.normal.z};
        albedo = object_albedo(state.object.texture_id, local, ln,
                               state.object.dimensions);
      }
      const double shade = lambert(scene.light, tri.normal);
      for (int c = 0; c < 3; ++c) color[c] = albedo[c] * shade;
    }
    for (int c = 0; c < 3; ++c)
      out.image.data[idx * 3 + c] = float(std::clamp(color[c], 0.0, 1.0));
  }
  return out;
}

Image render(const sim::WorldState& state, const CameraModel& camera,
             const SceneRandomization& scene, const RenderOptions& options) {
  return render_buffers(state, camera, scene, options).image;
}

}  // namespace graspgym::render
