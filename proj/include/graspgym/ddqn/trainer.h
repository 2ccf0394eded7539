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
// Off-policy double-DQN training.

#ifndef GRASPGYM_DDQN_TRAINER_H_
#define GRASPGYM_DDQN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "graspgym/cem/cem.h"
#include "graspgym/datagen/dataset.h"
#include "graspgym/ddqn/replay.h"
#include "graspgym/nn/params.h"
#include "graspgym/qnet/qnetwork.h"
#include "graspgym/rng.h"
#include "graspgym/sim/world.h"

namespace graspgym::ddqn {

struct TrainerConfig {
  double gamma = 0.9;
  int batch = 64;
  double lr = 1e-4;
  int sync_period = 500;  // C
  int total_steps = 15000;
  cem::CemConfig cem_train = cem::CemConfig::train();
  cem::CemConfig cem_test = cem::CemConfig::test();
  int eval_episodes = 200;
  int eval_interval = 0;  // 0: evaluate once at the end
  uint64_t seed = 0;

  void validate() const;
};

// Batch-level hooks the trainer drives. Row indices refer to the model's
// transition store.
class DdqnModel {
 public:
  virtual ~DdqnModel() = default;
  virtual size_t size() const = 0;
  virtual double reward(size_t row) const = 0;
  virtual bool done(size_t row) const = 0;
  // a' maximizing the ONLINE network at next_obs of each row.
  virtual std::vector<sim::Action> select_online(const std::vector<size_t>& rows,
                                                 uint64_t seed) = 0;
  // Q_TARGET(next_obs, a') for each row.
  virtual std::vector<double> evaluate_target(const std::vector<size_t>& rows,
                                              const std::vector<sim::Action>& actions) = 0;
  struct FitStats {
    double loss = 0.0;
    double mean_q = 0.0;
    double aux_loss = 0.0;
  };
  // One optimizer step on the regression of Q(obs, action) toward y.
  virtual FitStats fit(const std::vector<size_t>& rows, const std::vector<double>& y) = 0;
  // Hard copy online -> target.
  virtual void sync_target() = 0;
};

// y = r + gamma * (1 - done) * Q_target(s', argmax_a Q_online(s', a)).
// Rows that do not bootstrap never reach the networks.
std::vector<double> compute_targets(DdqnModel& model, const std::vector<size_t>& rows,
                                    double gamma, uint64_t seed);

struct StepMetrics {
  int64_t step = 0;
  double loss = 0.0;
  double mean_q = 0.0;
  double mean_target = 0.0;
  double aux_loss = 0.0;
  bool synced = false;
};

class DdqnTrainer {
 public:
  // Copies online into target before the first step.
  DdqnTrainer(DdqnModel& model, const TrainerConfig& cfg);
  StepMetrics train_step();
  int64_t step() const { return step_; }

 private:
  DdqnModel& model_;
  TrainerConfig cfg_;
  Rng rng_;
  int64_t step_ = 0;
};

// Scores `actions` for one precomputed image embedding row.
cem::BatchScorer embedding_scorer(qnet::QNetwork<float>& net, const nn::ParamStore<float>& store,
                                  const float* embedding, const sim::ActionBounds& bounds);

// CEM argmax of Q for one HWC observation under `store`, eval mode.
cem::CemResult greedy_policy(qnet::QNetwork<float>& net, const nn::ParamStore<float>& store,
                             const std::vector<float>& obs_hwc, const sim::ActionBounds& bounds,
                             const cem::CemConfig& cfg, uint64_t seed);

// u8 HWC observations -> [B, 3, H, W] floats.
nn::Tensor<float> obs_batch(const std::vector<const datagen::ObsBytes*>& obs,
                            const qnet::QNetConfig& cfg);

// The image Q-network over a transition buffer.
class QNetModel : public DdqnModel {
 public:
  QNetModel(const qnet::QNetConfig& net_cfg, const ReplayBuffer<datagen::Transition>& data,
            const sim::ActionBounds& bounds, const cem::CemConfig& cem_train,
            const nn::AdamConfig& adam, uint64_t seed);

  size_t size() const override { return data_.size(); }
  double reward(size_t row) const override { return data_[row].reward; }
  bool done(size_t row) const override { return data_[row].done; }
  std::vector<sim::Action> select_online(const std::vector<size_t>& rows,
                                         uint64_t seed) override;
  std::vector<double> evaluate_target(const std::vector<size_t>& rows,
                                      const std::vector<sim::Action>& actions) override;
  FitStats fit(const std::vector<size_t>& rows, const std::vector<double>& y) override;
  void sync_target() override { target_.copy_values_from(online_); }

  qnet::QNetwork<float>& net() { return online_net_; }
  nn::ParamStore<float>& online() { return online_; }
  nn::ParamStore<float>& target() { return target_; }

 private:
  qnet::QNetwork<float> online_net_, target_net_;
  nn::ParamStore<float> online_, target_;
  const ReplayBuffer<datagen::Transition>& data_;
  sim::ActionBounds bounds_;
  cem::CemConfig cem_;
  nn::AdamConfig adam_;
  Rng dropout_rng_;
};

}  // namespace graspgym::ddqn

#endif  // GRASPGYM_DDQN_TRAINER_H_
