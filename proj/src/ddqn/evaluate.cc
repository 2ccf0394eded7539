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
#include "graspgym/ddqn/evaluate.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "graspgym/datagen/dataset.h"
#include "graspgym/ddqn/baselines.h"
#include "graspgym/ddqn/trainer.h"
#include "graspgym/rng.h"

namespace graspgym::ddqn {

GreedyQPolicy::GreedyQPolicy(const qnet::QNetConfig& cfg, const nn::ParamStore<float>& params,
                             const cem::CemConfig& cem)
    : net_(cfg), params_(params), cem_(cem) {}

sim::Action GreedyQPolicy::act(const sim::WorldState& state, const std::vector<float>& obs,
                               uint64_t seed) {
  return greedy_policy(net_, params_, obs, state.bounds, cem_, seed).action;
}

sim::Action ScriptedPolicy::act(const sim::WorldState& state, const std::vector<float>&,
                                uint64_t) {
  return scripted_action(state);
}

sim::Action RandomPolicy::act(const sim::WorldState& state, const std::vector<float>&,
                              uint64_t seed) {
  Rng rng(seed);
  return random_action(state.bounds, rng);
}

namespace {

EpisodeOutcome run_eval_episode(const EvalEnv& env, Policy& policy, int e, uint64_t seed) {
  const uint64_t ep_seed = derive_seed(seed, uint64_t(e));
  const render::SceneRandomization scene = env.scene(e);
  sim::WorldState state = sim::reset_episode(env.episode, env.object, derive_seed(ep_seed, 0));
  EpisodeOutcome out;
  out.episode = e;
  for (int t = 0; t < env.episode.k; ++t) {
    const std::vector<float> obs =
        datagen::dequantize(datagen::quantize(datagen::observe(state, env.camera, scene)));
    const sim::Action a = policy.act(state, obs, derive_seed(ep_seed, 10 + uint64_t(t)));
    sim::StepResult r = sim::step(state, a);
    state = std::move(r.state);
    out.total_reward += sim::compute_move_reward(r.info, env.weights);
  }
  const sim::StepInfo info = sim::grasp_info(state);
  out.success = info.grasp_success;
  out.total_reward += sim::compute_reward(info, env.weights);
  out.final_distance = info.centroid_distance;
  out.final_rotation = info.rotation_offset;
  return out;
}

}  // namespace

EvalReport evaluate(const EvalEnv& env, const PolicyFactory& policy, int episodes,
                    uint64_t seed, int threads) {
  EvalReport report;
  if (episodes <= 0) {
    std::cerr << "warning: evaluation with 0 episodes; success rate defined as 0.0\n";
    return report;
  }
  env.episode.validate();
  report.episodes.resize(size_t(episodes));
  const int workers = std::clamp(threads, 1, episodes);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  auto work = [&](int w) {
    try {
      std::unique_ptr<Policy> p = policy();
      for (int e = next++; e < episodes; e = next++) {
        report.episodes[size_t(e)] = run_eval_episode(env, *p, e, seed);
      }
    } catch (...) {
      errors[size_t(w)] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  int wins = 0;
  for (const EpisodeOutcome& o : report.episodes) {
    wins += o.success ? 1 : 0;
    report.mean_reward += o.total_reward;
  }
  report.success_rate = double(wins) / episodes;
  report.mean_reward /= episodes;
  return report;
}

int default_threads() {
  if (const char* env = std::getenv("GRASPGYM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1, int(std::thread::hardware_concurrency()));
}

}  // namespace graspgym::ddqn
