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
#ifndef GRASPGYM_HARNESS_RUN_CONFIG_H_
#define GRASPGYM_HARNESS_RUN_CONFIG_H_

#include <cstdint>
#include <string>

#include "graspgym/datagen/dataset.h"
#include "graspgym/ddqn/evaluate.h"
#include "graspgym/ddqn/trainer.h"
#include "graspgym/qnet/qnetwork.h"

namespace graspgym::harness {

struct Ablation {
  bool disable_augmentation = false;
  bool disable_dropout = false;
  bool disable_aux = false;
  friend bool operator==(const Ablation&, const Ablation&) = default;
};

// Everything a gen/train/eval run depends on.
struct RunConfig {
  std::string object = "box";
  sim::EpisodeConfig episode;
  render::CameraModel camera;
  sim::RewardWeights rewards;
  datagen::BiasedPolicyConfig policy;
  ddqn::TrainerConfig trainer;
  qnet::QNetConfig network;
  Ablation ablation;
  uint64_t seed = 0;

  void validate() const;

  datagen::CollectConfig collect_config() const;
  // Network config after ablation flags are applied.
  qnet::QNetConfig effective_network() const;
  ddqn::EvalEnv eval_env() const;
};

std::string to_json(const RunConfig& cfg, int indent = 2);
// Missing keys keep their defaults; unknown keys and bad values raise
// ConfigError. Parse errors report line and column.
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace graspgym::harness

#endif  // GRASPGYM_HARNESS_RUN_CONFIG_H_
