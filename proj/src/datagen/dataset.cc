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
#include "graspgym/datagen/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "common/bytes.h"
#include "graspgym/errors.h"
#include "graspgym/render/augment.h"
#include "graspgym/render/raster.h"
#include "graspgym/rng.h"

namespace graspgym::datagen {

namespace {

constexpr std::string_view kMagic = "GRTD";

void check_obs(const ObsBytes& obs, const char* what) {
  if (obs.size() != kObsBytes) {
    throw ContractError(std::string(what) + " must hold " + std::to_string(kObsBytes) +
                        " bytes");
  }
}

DatasetHeader parse_header(internal::ByteReader& r) {
  if (r.raw(4) != kMagic) r.fail("bad magic (expected GRTD)");
  DatasetHeader h;
  h.version = r.u16();
  if (h.version != 1) r.fail("unsupported version " + std::to_string(h.version));
  h.width = r.u16();
  h.height = r.u16();
  if (h.width != render::Observation::kWidth || h.height != render::Observation::kHeight) {
    r.fail("unsupported observation size " + std::to_string(h.width) + "x" +
           std::to_string(h.height));
  }
  h.count = r.u32();
  h.seed = r.u64();
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace

ObsBytes quantize(const render::Observation& obs) {
  ObsBytes out(kObsBytes);
  for (size_t i = 0; i < kObsBytes; ++i) {
    const double v = std::clamp(double(obs.data[i]), 0.0, 1.0);
    out[i] = uint8_t(std::lround(255.0 * v));
  }
  return out;
}

std::vector<float> dequantize(const ObsBytes& bytes) {
  std::vector<float> out(bytes.size());
  for (size_t i = 0; i < bytes.size(); ++i) out[i] = float(bytes[i]) / 255.0f;
  return out;
}

std::string encode_dataset(const Dataset& dataset) {
  std::string out;
  out.reserve(kHeaderBytes + dataset.transitions.size() * kRecordBytes);
  internal::ByteWriter w(&out);
  w.raw(kMagic);
  w.u16(1);
  w.u16(render::Observation::kWidth);
  w.u16(render::Observation::kHeight);
  w.u32(uint32_t(dataset.transitions.size()));
  w.u64(dataset.header.seed);
  for (const Transition& t : dataset.transitions) {
    check_obs(t.obs, "obs");
    check_obs(t.next_obs, "next_obs");
    out.append(reinterpret_cast<const char*>(t.obs.data()), kObsBytes);
    for (float a : t.action) w.f32(a);
    w.f32(t.reward);
    out.append(reinterpret_cast<const char*>(t.next_obs.data()), kObsBytes);
    w.u8(t.done ? 1 : 0);
    w.f32(t.aux[0]);
    w.f32(t.aux[1]);
    w.u32(t.episode_id);
  }
  return out;
}

Dataset decode_dataset(std::string_view bytes) {
  internal::ByteReader r(bytes, "dataset");
  Dataset d;
  d.header = parse_header(r);
  if (r.remaining() != size_t(d.header.count) * kRecordBytes) {
    r.fail("header declares " + std::to_string(d.header.count) + " transitions but " +
           std::to_string(r.remaining()) + " record bytes follow (" +
           std::to_string(kRecordBytes) + " per record)");
  }
  d.transitions.resize(d.header.count);
  for (Transition& t : d.transitions) {
    std::string_view o = r.raw(kObsBytes);
    t.obs.assign(o.begin(), o.end());
    for (float& a : t.action) a = r.f32();
    t.reward = r.f32();
    std::string_view n = r.raw(kObsBytes);
    t.next_obs.assign(n.begin(), n.end());
    const uint8_t done = r.u8();
    if (done > 1) r.fail("done flag must be 0 or 1");
    t.done = done == 1;
    t.aux[0] = r.f32();
    t.aux[1] = r.f32();
    t.episode_id = r.u32();
  }
  return d;
}

DatasetHeader read_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw FormatError("cannot open " + path);
  const auto size = size_t(in.tellg());
  in.seekg(0);
  std::string head(std::min(size, kHeaderBytes), '\0');
  in.read(head.data(), std::streamsize(head.size()));
  internal::ByteReader r(head, path);
  DatasetHeader h = parse_header(r);
  if (size != kHeaderBytes + size_t(h.count) * kRecordBytes) {
    throw FormatError(path + ": file size " + std::to_string(size) +
                      " does not match header count " + std::to_string(h.count));
  }
  return h;
}

void write_dataset(const std::string& path, const Dataset& dataset) {
  const std::string bytes = encode_dataset(dataset);
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw FormatError("cannot write " + path);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw FormatError("cannot move dataset into place at " + path);
  }
}

Dataset read_dataset(const std::string& path) {
  try {
    return decode_dataset(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Dataset merge_datasets(const std::vector<Dataset>& parts, uint64_t master_seed) {
  Dataset out;
  out.header.seed = master_seed;
  uint64_t offset = 0;
  for (const Dataset& part : parts) {
    uint64_t next = offset;
    for (const Transition& t : part.transitions) {
      Transition c = t;
      const uint64_t id = offset + t.episode_id;
      if (id > UINT32_MAX) throw FormatError("episode id overflow while merging");
      c.episode_id = uint32_t(id);
      next = std::max(next, id + 1);
      out.transitions.push_back(std::move(c));
    }
    offset = next;
  }
  out.header.count = uint32_t(out.transitions.size());
  return out;
}

uint64_t episode_seed(uint64_t master_seed, uint64_t global_episode) {
  return derive_seed(master_seed, global_episode);
}

render::SceneRandomization collect_scene(const CollectConfig& cfg, uint64_t ep_seed) {
  return cfg.augment ? render::randomize_scene(derive_seed(ep_seed, 1)) : render::plain_scene();
}

render::Observation observe(const sim::WorldState& state, const render::CameraModel& camera,
                            const render::SceneRandomization& scene) {
  return render::make_observation(render::render(state, camera, scene), scene);
}

std::vector<Transition> run_episode(const CollectConfig& cfg, uint64_t master_seed,
                                    uint64_t global_episode, uint32_t episode_id) {
  const uint64_t ep_seed = episode_seed(master_seed, global_episode);
  const render::SceneRandomization scene = collect_scene(cfg, ep_seed);
  sim::WorldState state = sim::reset_episode(cfg.episode, cfg.object, derive_seed(ep_seed, 0));
  Rng rng(derive_seed(ep_seed, 2));

  std::vector<Transition> out;
  ObsBytes obs = quantize(observe(state, cfg.camera, scene));
  auto record = [&](const sim::Action& a) {
    Transition t;
    t.obs = obs;
    t.action = {float(a.dx), float(a.dy), float(a.dz), float(a.dphi)};
    t.aux = {float(sim::centroid_distance(state)), float(sim::rotation_offset(state))};
    t.episode_id = episode_id;
    return t;
  };
  for (int i = 0; i < cfg.episode.k; ++i) {
    const sim::Action a = biased_action(state, cfg.policy, rng);
    Transition t = record(a);
    sim::StepResult r = sim::step(state, a);
    state = std::move(r.state);
    t.reward = float(sim::compute_move_reward(r.info, cfg.weights));
    obs = quantize(observe(state, cfg.camera, scene));
    t.next_obs = obs;
    t.done = false;
    out.push_back(std::move(t));
  }
  const sim::Action a = biased_action(state, cfg.policy, rng);
  Transition t = record(a);
  t.reward = float(sim::compute_reward(sim::grasp_info(state), cfg.weights));
  t.next_obs = obs;
  t.done = true;
  out.push_back(std::move(t));
  return out;
}

Dataset collect(const CollectConfig& cfg, uint64_t master_seed, uint64_t first,
                uint64_t count) {
  cfg.episode.validate();
  Dataset d;
  d.header.seed = master_seed;
  d.transitions.reserve(count * size_t(cfg.episode.k + 1));
  for (uint64_t e = 0; e < count; ++e) {
    for (Transition& t : run_episode(cfg, master_seed, first + e, uint32_t(e))) {
      d.transitions.push_back(std::move(t));
    }
  }
  d.header.count = uint32_t(d.transitions.size());
  return d;
}

Dataset collect_parallel(const CollectConfig& cfg, uint64_t master_seed, uint64_t episodes,
                         int workers) {
  if (workers < 1) throw ConfigError("need at least one worker");
  const uint64_t w = std::min<uint64_t>(uint64_t(workers), std::max<uint64_t>(episodes, 1));
  std::vector<Dataset> parts(w);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(w);
  for (uint64_t i = 0; i < w; ++i) {
    const uint64_t first = episodes * i / w;
    const uint64_t last = episodes * (i + 1) / w;
    threads.emplace_back([&, i, first, last] {
      try {
        parts[i] = collect(cfg, master_seed, first, last - first);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return merge_datasets(parts, master_seed);
}

}  // namespace graspgym::datagen
