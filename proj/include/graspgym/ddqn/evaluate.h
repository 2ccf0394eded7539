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
// Episode rollouts for held-out evaluation.

#ifndef GRASPGYM_DDQN_EVALUATE_H_
#define GRASPGYM_DDQN_EVALUATE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "graspgym/cem/cem.h"
#include "graspgym/nn/params.h"
#include "graspgym/qnet/qnetwork.h"
#include "graspgym/render/camera.h"
#include "graspgym/render/scene.h"
#include "graspgym/sim/world.h"

namespace graspgym::ddqn {

class Policy {
 public:
  virtual ~Policy() = default;
  // obs: dequantized HWC observation of `state`.
  virtual sim::Action act(const sim::WorldState& state, const std::vector<float>& obs,
                          uint64_t seed) = 0;
};

// Each evaluation worker builds its own policy instance.
using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

class GreedyQPolicy : public Policy {
 public:
  // `params` must outlive the policy and stay unmodified while it is used.
  GreedyQPolicy(const qnet::QNetConfig& cfg, const nn::ParamStore<float>& params,
                const cem::CemConfig& cem);
  sim::Action act(const sim::WorldState& state, const std::vector<float>& obs,
                  uint64_t seed) override;

 private:
  qnet::QNetwork<float> net_;
  const nn::ParamStore<float>& params_;
  cem::CemConfig cem_;
};

class ScriptedPolicy : public Policy {
 public:
  sim::Action act(const sim::WorldState& state, const std::vector<float>&, uint64_t) override;
};

class RandomPolicy : public Policy {
 public:
  sim::Action act(const sim::WorldState& state, const std::vector<float>&,
                  uint64_t seed) override;
};

struct EvalEnv {
  sim::EpisodeConfig episode;
  sim::ObjectModel object = sim::catalog_object("box");
  render::CameraModel camera;
  sim::RewardWeights weights;
  // Scene of episode e.
  std::function<render::SceneRandomization(int)> scene = [](int) {
    return render::heldout_scene();
  };
};

struct EpisodeOutcome {
  int episode = 0;
  bool success = false;
  double total_reward = 0.0;
  double final_distance = 0.0;
  double final_rotation = 0.0;
};

struct EvalReport {
  double success_rate = 0.0;
  double mean_reward = 0.0;
  std::vector<EpisodeOutcome> episodes;
};

// N full episodes: reset, k policy steps, grasp attempt. Episodes are
// spread over `threads` workers; results do not depend on the count.
// N = 0 yields success rate 0 and a warning on stderr.
EvalReport evaluate(const EvalEnv& env, const PolicyFactory& policy, int episodes,
                    uint64_t seed, int threads = 1);

// GRASPGYM_THREADS if set and positive, else the hardware concurrency.
int default_threads();

}  // namespace graspgym::ddqn

#endif  // GRASPGYM_DDQN_EVALUATE_H_
