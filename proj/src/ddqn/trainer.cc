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
#include "graspgym/ddqn/trainer.h"

#include <cmath>

#include "graspgym/errors.h"

namespace graspgym::ddqn {

void TrainerConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (batch < 1) throw ConfigError("batch must be >= 1");
  if (!(lr > 0.0)) throw ConfigError("lr must be > 0");
  if (sync_period < 1) throw ConfigError("sync period must be >= 1");
  if (total_steps < 0) throw ConfigError("total steps must be >= 0");
  if (eval_episodes < 0 || eval_interval < 0) {
    throw ConfigError("eval episodes and interval must be >= 0");
  }
  cem_train.validate();
  cem_test.validate();
}

std::vector<double> compute_targets(DdqnModel& model, const std::vector<size_t>& rows,
                                    double gamma, uint64_t seed) {
  std::vector<double> y(rows.size());
  std::vector<size_t> boot, pos;
  for (size_t i = 0; i < rows.size(); ++i) {
    y[i] = model.reward(rows[i]);
    if (!model.done(rows[i]) && gamma != 0.0) {
      boot.push_back(rows[i]);
      pos.push_back(i);
    }
  }
  if (boot.empty()) return y;
  const std::vector<sim::Action> a = model.select_online(boot, seed);
  const std::vector<double> q = model.evaluate_target(boot, a);
  for (size_t j = 0; j < boot.size(); ++j) y[pos[j]] += gamma * q[j];
  return y;
}

DdqnTrainer::DdqnTrainer(DdqnModel& model, const TrainerConfig& cfg)
    : model_(model), cfg_(cfg), rng_(derive_seed(cfg.seed, 200)) {
  cfg_.validate();
  model_.sync_target();
}

StepMetrics DdqnTrainer::train_step() {
  if (model_.size() == 0) throw ProtocolError("train_step on an empty buffer");
  std::vector<size_t> rows(size_t(cfg_.batch));
  for (auto& r : rows) r = size_t(rng_.uniform_int(0, int(model_.size()) - 1));
  const uint64_t seed = derive_seed(derive_seed(cfg_.seed, 300), uint64_t(step_));
  const std::vector<double> y = compute_targets(model_, rows, cfg_.gamma, seed);
  const DdqnModel::FitStats fit = model_.fit(rows, y);
  ++step_;
  StepMetrics m;
  m.step = step_;
  m.loss = fit.loss;
  m.mean_q = fit.mean_q;
  m.aux_loss = fit.aux_loss;
  for (double v : y) m.mean_target += v;
  m.mean_target /= double(y.size());
  if (step_ % cfg_.sync_period == 0) {
    model_.sync_target();
    m.synced = true;
  }
  return m;
}

cem::BatchScorer embedding_scorer(qnet::QNetwork<float>& net, const nn::ParamStore<float>& store,
                                  const float* embedding, const sim::ActionBounds& bounds) {
  return [&net, &store, embedding, bounds](const std::vector<sim::Action>& actions) {
    const int n = int(actions.size());
    const int e = net.embed_dim();
    nn::Tensor<float> emb({n, e});
    nn::Tensor<float> act({n, 4});
    for (int i = 0; i < n; ++i) {
      std::copy_n(embedding, e, emb.ptr() + size_t(i) * e);
      qnet::normalized_action(actions[size_t(i)], bounds, act.ptr() + size_t(i) * 4);
    }
    const qnet::QBatchOutput<float> out = net.heads(store, emb, act);
    return std::vector<double>(out.q.begin(), out.q.end());
  };
}

cem::CemResult greedy_policy(qnet::QNetwork<float>& net, const nn::ParamStore<float>& store,
                             const std::vector<float>& obs_hwc, const sim::ActionBounds& bounds,
                             const cem::CemConfig& cfg, uint64_t seed) {
  const qnet::QNetConfig& c = net.config();
  if (obs_hwc.size() != net.obs_size()) throw ContractError("observation has the wrong size");
  nn::Tensor<float> obs({1, 3, c.obs_height, c.obs_width});
  qnet::hwc_to_chw(obs_hwc.data(), c.obs_width, c.obs_height, obs.ptr());
  const nn::Tensor<float> emb = net.embed_images(store, obs, nn::Mode::kEval);
  return cem::cem_argmax(embedding_scorer(net, store, emb.ptr(), bounds), bounds, cfg, seed);
}

nn::Tensor<float> obs_batch(const std::vector<const datagen::ObsBytes*>& obs,
                            const qnet::QNetConfig& cfg) {
  const int n = int(obs.size());
  const int px = cfg.obs_width * cfg.obs_height;
  nn::Tensor<float> t({n, 3, cfg.obs_height, cfg.obs_width});
  for (int b = 0; b < n; ++b) {
    const datagen::ObsBytes& o = *obs[size_t(b)];
    if (o.size() != size_t(px) * 3) throw ContractError("observation has the wrong size");
    float* dst = t.ptr() + size_t(b) * 3 * px;
    for (int i = 0; i < px; ++i) {
      for (int c = 0; c < 3; ++c) dst[c * px + i] = float(o[size_t(i) * 3 + c]) / 255.0f;
    }
  }
  return t;
}

QNetModel::QNetModel(const qnet::QNetConfig& net_cfg,
                     const ReplayBuffer<datagen::Transition>& data,
                     const sim::ActionBounds& bounds, const cem::CemConfig& cem_train,
                     const nn::AdamConfig& adam, uint64_t seed)
    : online_net_(net_cfg),
      target_net_(net_cfg),
      online_(online_net_.init_params(derive_seed(seed, 100))),
      target_(online_),
      data_(data),
      bounds_(bounds),
      cem_(cem_train),
      adam_(adam),
      dropout_rng_(derive_seed(seed, 101)) {}

std::vector<sim::Action> QNetModel::select_online(const std::vector<size_t>& rows,
                                                  uint64_t seed) {
  std::vector<const datagen::ObsBytes*> obs;
  for (size_t r : rows) obs.push_back(&data_[r].next_obs);
  const nn::Tensor<float> emb =
      online_net_.embed_images(online_, obs_batch(obs, online_net_.config()), nn::Mode::kEval);
  std::vector<sim::Action> out;
  const int e = online_net_.embed_dim();
  for (size_t i = 0; i < rows.size(); ++i) {
    auto score = embedding_scorer(online_net_, online_, emb.ptr() + i * size_t(e), bounds_);
    out.push_back(cem::cem_argmax(score, bounds_, cem_, derive_seed(seed, i)).action);
  }
  return out;
}

std::vector<double> QNetModel::evaluate_target(const std::vector<size_t>& rows,
                                               const std::vector<sim::Action>& actions) {
  std::vector<const datagen::ObsBytes*> obs;
  for (size_t r : rows) obs.push_back(&data_[r].next_obs);
  const nn::Tensor<float> emb =
      target_net_.embed_images(target_, obs_batch(obs, target_net_.config()), nn::Mode::kEval);
  nn::Tensor<float> act({int(rows.size()), 4});
  for (size_t i = 0; i < rows.size(); ++i) {
    qnet::normalized_action(actions[i], bounds_, act.ptr() + i * 4);
  }
  const qnet::QBatchOutput<float> out = target_net_.heads(target_, emb, act);
  return std::vector<double>(out.q.begin(), out.q.end());
}

DdqnModel::FitStats QNetModel::fit(const std::vector<size_t>& rows,
                                   const std::vector<double>& y) {
  const qnet::QNetConfig& cfg = online_net_.config();
  std::vector<const datagen::ObsBytes*> obs;
  nn::Tensor<float> act({int(rows.size()), 4});
  std::vector<float> yt(rows.size()), aux(2 * rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const datagen::Transition& t = data_[rows[i]];
    obs.push_back(&t.obs);
    const sim::Action a{t.action[0], t.action[1], t.action[2], t.action[3]};
    qnet::normalized_action(a, bounds_, act.ptr() + i * 4);
    yt[i] = float(y[i]);
    const auto na = qnet::normalized_aux(t.aux[0], t.aux[1], cfg);
    aux[2 * i] = na[0];
    aux[2 * i + 1] = na[1];
  }
  const qnet::LossResult lr = online_net_.loss(online_, obs_batch(obs, cfg), act, yt, aux,
                                               nn::Mode::kTrain, &dropout_rng_);
  nn::adam_step(online_, adam_);
  return {lr.loss, lr.mean_q, lr.aux};
}

}  // namespace graspgym::ddqn
