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
// Two-stream Q-network: image conv stack and action embedding, concatenated
// into a shared layer that feeds a Q head and a 2-value auxiliary head.

#ifndef GRASPGYM_QNET_QNETWORK_H_
#define GRASPGYM_QNET_QNETWORK_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graspgym/math.h"
#include "graspgym/nn/layers.h"
#include "graspgym/nn/params.h"
#include "graspgym/sim/world.h"

namespace graspgym::qnet {

struct ConvSpec {
  int out_channels = 8;
  int kernel = 5;
  int stride = 2;
  int padding = 2;
  friend bool operator==(const ConvSpec&, const ConvSpec&) = default;
};

struct QNetConfig {
  int obs_width = 64;
  int obs_height = 40;
  std::vector<ConvSpec> conv = {{8, 5, 2, 2}, {16, 3, 2, 1}, {16, 3, 2, 1}};
  int image_embed = 128;
  int action_embed = 32;
  int shared = 64;
  int aux_dim = 2;
  double dropout = 0.1;  // after the first conv; 0 disables
  double lambda_aux = 0.5;
  double dist_scale = 0.3;      // meters
  double rot_scale = kPi / 2;   // radians

  void validate() const;
  friend bool operator==(const QNetConfig&, const QNetConfig&) = default;
};

std::string qnet_config_to_json(const QNetConfig& cfg);
QNetConfig qnet_config_from_json(const std::string& text);

struct QOutput {
  double q = 0.0;
  std::array<double, 2> aux{};
};

template <typename T>
struct QBatchOutput {
  std::vector<T> q;    // [B]
  std::vector<T> aux;  // [B, 2]
};

struct LossResult {
  double loss = 0.0;
  double bellman = 0.0;
  double aux = 0.0;
  double mean_q = 0.0;
};

// Aux targets as stored in transitions, scaled to roughly [-1, 1].
std::array<float, 2> normalized_aux(double centroid_distance, double rotation_offset,
                                    const QNetConfig& cfg);

template <typename T>
class QNetwork {
 public:
  QNetwork() = default;
  explicit QNetwork(const QNetConfig& cfg);

  const QNetConfig& config() const { return cfg_; }
  int embed_dim() const { return cfg_.image_embed; }
  size_t obs_size() const { return size_t(cfg_.obs_width) * cfg_.obs_height * 3; }

  // Zero-valued store with this network's layout.
  nn::ParamStore<T> zero_params() const { return layout_; }
  // He-uniform weights for ReLU layers, variance-1/fan_in heads, zero biases.
  nn::ParamStore<T> init_params(uint64_t seed) const;

  // obs: [B, 3, H, W] in [0, 1]. Returns [B, image_embed].
  nn::Tensor<T> embed_images(const nn::ParamStore<T>& store, const nn::Tensor<T>& obs,
                             nn::Mode mode, Rng* rng = nullptr);
  // Heads for precomputed embeddings. actions: [B, 4] already divided by the
  // action bounds.
  QBatchOutput<T> heads(const nn::ParamStore<T>& store, const nn::Tensor<T>& embed,
                        const nn::Tensor<T>& actions);
  // Full batched forward (keeps caches for backward).
  QBatchOutput<T> forward(const nn::ParamStore<T>& store, const nn::Tensor<T>& obs,
                          const nn::Tensor<T>& actions, nn::Mode mode,
                          Rng* rng = nullptr);

  // mean((q - y)^2) + lambda_aux * mean(|aux - aux_target|^2). Gradients are
  // written (not accumulated) into store.grad. Train mode uses rng for dropout.
  LossResult loss(nn::ParamStore<T>& store, const nn::Tensor<T>& obs,
                  const nn::Tensor<T>& actions, const std::vector<T>& y,
                  const std::vector<T>& aux_targets, nn::Mode mode,
                  Rng* rng = nullptr);

 private:
  QNetConfig cfg_;
  nn::ParamStore<T> layout_;
  nn::Sequential<T> image_, action_, shared_, q_head_, aux_head_;
  nn::Tensor<T> embed_cache_;
};

// Action scaled by the bounds, the form the network consumes.
template <typename T>
void normalized_action(const sim::Action& a, const sim::ActionBounds& b, T* out) {
  out[0] = T(a.dx / b.delta_tran);
  out[1] = T(a.dy / b.delta_tran);
  out[2] = T(a.dz / b.delta_tran);
  out[3] = T(a.dphi / b.delta_rot);
}

// HWC floats -> CHW.
template <typename T>
void hwc_to_chw(const float* hwc, int width, int height, T* chw) {
  const int n = width * height;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) chw[c * n + i] = T(hwc[i * 3 + c]);
  }
}

// Eval-mode Q for one observation (HWC floats) and action.
template <typename T>
QOutput q_forward(QNetwork<T>& net, const nn::ParamStore<T>& store,
                  const std::vector<float>& obs_hwc, const sim::Action& action,
                  const sim::ActionBounds& bounds, nn::Mode mode = nn::Mode::kEval,
                  Rng* rng = nullptr);

}  // namespace graspgym::qnet

#endif  // GRASPGYM_QNET_QNETWORK_H_
