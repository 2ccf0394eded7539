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
// Transition records, the "GRTD" dataset file and off-policy collection.

#ifndef GRASPGYM_DATAGEN_DATASET_H_
#define GRASPGYM_DATAGEN_DATASET_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graspgym/datagen/policy.h"
#include "graspgym/render/camera.h"
#include "graspgym/render/image.h"
#include "graspgym/render/scene.h"
#include "graspgym/sim/world.h"

namespace graspgym::datagen {

// Observations are kept as 8-bit HWC, value = round(255 * v).
using ObsBytes = std::vector<uint8_t>;

struct Transition {
  ObsBytes obs;
  std::array<float, 4> action{};
  float reward = 0.0f;
  ObsBytes next_obs;
  bool done = false;
  std::array<float, 2> aux{};  // centroid distance (m), rotation offset (rad)
  uint32_t episode_id = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct DatasetHeader {
  uint16_t version = 1;
  uint16_t width = render::Observation::kWidth;
  uint16_t height = render::Observation::kHeight;
  uint32_t count = 0;
  uint64_t seed = 0;
  friend bool operator==(const DatasetHeader&, const DatasetHeader&) = default;
};

inline constexpr size_t kObsBytes = render::Observation::kSize;
inline constexpr size_t kHeaderBytes = 4 + 2 + 2 + 2 + 4 + 8;
inline constexpr size_t kRecordBytes = kObsBytes + 16 + 4 + kObsBytes + 1 + 8 + 4;

ObsBytes quantize(const render::Observation& obs);
// Bytes -> [0, 1] floats, HWC.
std::vector<float> dequantize(const ObsBytes& bytes);

struct Dataset {
  DatasetHeader header;
  std::vector<Transition> transitions;
};

std::string encode_dataset(const Dataset& dataset);
Dataset decode_dataset(std::string_view bytes);
// Reads only the header and validates the file size against the count.
DatasetHeader read_header(const std::string& path);
// Written through a temporary file that is removed on failure.
void write_dataset(const std::string& path, const Dataset& dataset);
Dataset read_dataset(const std::string& path);

// Concatenates parts, shifting each part's episode ids past the previous
// part's largest id.
Dataset merge_datasets(const std::vector<Dataset>& parts, uint64_t master_seed);

struct CollectConfig {
  sim::EpisodeConfig episode;
  sim::ObjectModel object = sim::catalog_object("box");
  render::CameraModel camera;
  sim::RewardWeights weights;
  BiasedPolicyConfig policy;
  bool augment = true;  // false renders every episode with plain_scene()
};

// Scene of a collected episode.
render::SceneRandomization collect_scene(const CollectConfig& cfg, uint64_t episode_seed);

// Renders the post-augmentation observation of a state.
render::Observation observe(const sim::WorldState& state, const render::CameraModel& camera,
                            const render::SceneRandomization& scene);

// One episode: k move transitions and the terminal grasp-attempt
// transition. The grasp transition records the policy's action at the
// final state without executing it; its next_obs repeats obs.
std::vector<Transition> run_episode(const CollectConfig& cfg, uint64_t master_seed,
                                    uint64_t global_episode, uint32_t episode_id);

// Episodes [first, first + count) of the stream defined by master_seed,
// with episode ids 0..count-1.
Dataset collect(const CollectConfig& cfg, uint64_t master_seed, uint64_t first,
                uint64_t count);

// Episodes split across `workers` threads, each producing a part that is
// then merged; the result does not depend on the worker count.
Dataset collect_parallel(const CollectConfig& cfg, uint64_t master_seed, uint64_t episodes,
                         int workers);

uint64_t episode_seed(uint64_t master_seed, uint64_t global_episode);

}  // namespace graspgym::datagen

#endif  // GRASPGYM_DATAGEN_DATASET_H_
