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
#include "graspgym/qnet/qnetwork.h"

#include <cmath>

#include "json.hpp"

namespace graspgym::qnet {

using nn::LayerSpec;
using nn::Mode;
using nn::ParamStore;
using nn::Tensor;
using json = nlohmann::json;

void QNetConfig::validate() const {
  if (obs_width < 1 || obs_height < 1) throw ConfigError("observation size must be positive");
  if (conv.empty()) throw ConfigError("conv stack must have at least one layer");
  for (const ConvSpec& c : conv) {
    if (c.out_channels < 1 || c.kernel < 1 || c.stride < 1 || c.padding < 0) {
      throw ConfigError("bad conv layer spec");
    }
  }
  if (image_embed < 1 || action_embed < 1 || shared < 1) {
    throw ConfigError("embedding sizes must be positive");
  }
  if (aux_dim != 2) throw ConfigError("aux head must have exactly 2 outputs");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  if (!(lambda_aux >= 0.0)) throw ConfigError("lambda_aux must be >= 0");
  if (!(dist_scale > 0.0 && rot_scale > 0.0)) throw ConfigError("aux scales must be > 0");
}

std::string qnet_config_to_json(const QNetConfig& cfg) {
  json j;
  j["obs_width"] = cfg.obs_width;
  j["obs_height"] = cfg.obs_height;
  j["conv"] = json::array();
  for (const ConvSpec& c : cfg.conv) {
    j["conv"].push_back({{"out_channels", c.out_channels},
                         {"kernel", c.kernel},
                         {"stride", c.stride},
                         {"padding", c.padding}});
  }
  j["image_embed"] = cfg.image_embed;
  j["action_embed"] = cfg.action_embed;
  j["shared"] = cfg.shared;
  j["aux_dim"] = cfg.aux_dim;
  j["dropout"] = cfg.dropout;
  j["lambda_aux"] = cfg.lambda_aux;
  j["dist_scale"] = cfg.dist_scale;
  j["rot_scale"] = cfg.rot_scale;
  return j.dump(2);
}

QNetConfig qnet_config_from_json(const std::string& text) {
  QNetConfig cfg;
  try {
    json j = json::parse(text);
    cfg.obs_width = j.value("obs_width", cfg.obs_width);
    cfg.obs_height = j.value("obs_height", cfg.obs_height);
    if (j.contains("conv")) {
      cfg.conv.clear();
      for (const auto& c : j.at("conv")) {
        cfg.conv.push_back({c.at("out_channels").get<int>(), c.at("kernel").get<int>(),
                            c.at("stride").get<int>(), c.at("padding").get<int>()});
      }
    }
    cfg.image_embed = j.value("image_embed", cfg.image_embed);
    cfg.action_embed = j.value("action_embed", cfg.action_embed);
    cfg.shared = j.value("shared", cfg.shared);
    cfg.aux_dim = j.value("aux_dim", cfg.aux_dim);
    cfg.dropout = j.value("dropout", cfg.dropout);
    cfg.lambda_aux = j.value("lambda_aux", cfg.lambda_aux);
    cfg.dist_scale = j.value("dist_scale", cfg.dist_scale);
    cfg.rot_scale = j.value("rot_scale", cfg.rot_scale);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("network config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::array<float, 2> normalized_aux(double centroid_distance, double rotation_offset,
                                    const QNetConfig& cfg) {
  return {float(centroid_distance / cfg.dist_scale), float(rotation_offset / cfg.rot_scale)};
}

template <typename T>
QNetwork<T>::QNetwork(const QNetConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  std::vector<LayerSpec> img;
  for (size_t i = 0; i < cfg_.conv.size(); ++i) {
    const ConvSpec& c = cfg_.conv[i];
    img.push_back(LayerSpec::conv2d(c.out_channels, c.kernel, c.stride, c.padding));
    img.push_back(LayerSpec::relu());
    if (i == 0) img.push_back(LayerSpec::dropout(cfg_.dropout));
  }
  img.push_back(LayerSpec::flatten());
  img.push_back(LayerSpec::linear(cfg_.image_embed));
  img.push_back(LayerSpec::relu());
  image_ = nn::Sequential<T>(img, {3, cfg_.obs_height, cfg_.obs_width}, layout_, "image");
  action_ = nn::Sequential<T>({LayerSpec::linear(cfg_.action_embed), LayerSpec::relu()},
                              {4}, layout_, "action");
  shared_ = nn::Sequential<T>({LayerSpec::linear(cfg_.shared), LayerSpec::relu()},
                              {cfg_.image_embed + cfg_.action_embed}, layout_, "shared");
  q_head_ = nn::Sequential<T>({LayerSpec::linear(1)}, {cfg_.shared}, layout_, "q");
  aux_head_ = nn::Sequential<T>({LayerSpec::linear(cfg_.aux_dim)}, {cfg_.shared}, layout_, "aux");
}

template <typename T>
ParamStore<T> QNetwork<T>::init_params(uint64_t seed) const {
  ParamStore<T> store = layout_;
  Rng rng(seed);
  auto init_chain = [&](const nn::Sequential<T>& seq, bool head) {
    for (size_t i = 0; i < seq.specs().size(); ++i) {
      const int w = seq.param_index(int(i)).first;
      if (w < 0) continue;
      const nn::Shape& s = store[w].value.shape;
      const double fan_in = double(nn::shape_size(s) / size_t(s[0]));
      const double bound = head ? std::sqrt(3.0 / fan_in) : std::sqrt(6.0 / fan_in);
      nn::init_uniform(store, w, bound, rng);
    }
  };
  init_chain(image_, false);
  init_chain(action_, false);
  init_chain(shared_, false);
  init_chain(q_head_, true);
  init_chain(aux_head_, true);
  return store;
}

template <typename T>
Tensor<T> QNetwork<T>::embed_images(const ParamStore<T>& store, const Tensor<T>& obs,
                                    Mode mode, Rng* rng) {
  return image_.forward(store, obs, mode, rng);
}

template <typename T>
QBatchOutput<T> QNetwork<T>::heads(const ParamStore<T>& store, const Tensor<T>& embed,
                                   const Tensor<T>& actions) {
  if (embed.rank() != 2 || actions.rank() != 2 || embed.dim(0) != actions.dim(0)) {
    throw ContractError("embedding and action batches differ");
  }
  Tensor<T> a = action_.forward(store, actions, Mode::kEval);
  Tensor<T> h = shared_.forward(store, nn::concat_features(embed, a), Mode::kEval);
  QBatchOutput<T> out;
  out.q = q_head_.forward(store, h, Mode::kEval).data;
  out.aux = aux_head_.forward(store, h, Mode::kEval).data;
  return out;
}

template <typename T>
QBatchOutput<T> QNetwork<T>::forward(const ParamStore<T>& store, const Tensor<T>& obs,
                                     const Tensor<T>& actions, Mode mode, Rng* rng) {
  if (obs.rank() < 1 || actions.rank() != 2 || obs.dim(0) != actions.dim(0) ||
      actions.dim(1) != 4) {
    throw ContractError("observation and action batches are inconsistent");
  }
  embed_cache_ = image_.forward(store, obs, mode, rng);
  return heads(store, embed_cache_, actions);
}

template <typename T>
LossResult QNetwork<T>::loss(ParamStore<T>& store, const Tensor<T>& obs,
                             const Tensor<T>& actions, const std::vector<T>& y,
                             const std::vector<T>& aux_targets, Mode mode, Rng* rng) {
  const int B = obs.rank() > 0 ? obs.dim(0) : 0;
  if (B < 1 || y.size() != size_t(B) || aux_targets.size() != size_t(2 * B)) {
    throw ContractError("loss targets do not match the batch");
  }
  for (T v : y) {
    if (!std::isfinite(double(v))) throw NumericError("non-finite Bellman target");
  }
  for (T v : aux_targets) {
    if (!std::isfinite(double(v))) throw NumericError("non-finite aux target");
  }
  QBatchOutput<T> out = forward(store, obs, actions, mode, rng);
  LossResult res;
  Tensor<T> gq({B, 1}), gaux({B, 2});
  const double lam = cfg_.lambda_aux;
  for (int b = 0; b < B; ++b) {
    const double e = double(out.q[size_t(b)]) - double(y[size_t(b)]);
    res.bellman += e * e;
    res.mean_q += double(out.q[size_t(b)]);
    gq[size_t(b)] = T(2.0 * e / B);
    for (int j = 0; j < 2; ++j) {
      const size_t k = size_t(2 * b + j);
      const double ea = double(out.aux[k]) - double(aux_targets[k]);
      res.aux += ea * ea;
      gaux[k] = T(2.0 * lam * ea / B);
    }
  }
  res.bellman /= B;
  res.aux = lam * res.aux / B;
  res.mean_q /= B;
  res.loss = res.bellman + res.aux;

  store.zero_grad();
  Tensor<T> gh = q_head_.backward(store, gq);
  Tensor<T> gh_aux = aux_head_.backward(store, gaux);
  for (size_t i = 0; i < gh.size(); ++i) gh[i] += gh_aux[i];
  Tensor<T> gcat = shared_.backward(store, gh);
  auto [g_img, g_act] = nn::split_features(gcat, cfg_.image_embed);
  image_.backward(store, g_img);
  action_.backward(store, g_act);
  return res;
}

template <typename T>
QOutput q_forward(QNetwork<T>& net, const ParamStore<T>& store,
                  const std::vector<float>& obs_hwc, const sim::Action& action,
                  const sim::ActionBounds& bounds, Mode mode, Rng* rng) {
  const QNetConfig& cfg = net.config();
  if (obs_hwc.size() != net.obs_size()) {
    throw ContractError("observation must be " + std::to_string(cfg.obs_width) + "x" +
                        std::to_string(cfg.obs_height) + "x3");
  }
  Tensor<T> obs({1, 3, cfg.obs_height, cfg.obs_width});
  hwc_to_chw(obs_hwc.data(), cfg.obs_width, cfg.obs_height, obs.ptr());
  Tensor<T> act({1, 4});
  normalized_action(action, bounds, act.ptr());
  QBatchOutput<T> out = net.forward(store, obs, act, mode, rng);
  return {double(out.q[0]), {double(out.aux[0]), double(out.aux[1])}};
}

template class QNetwork<float>;
template class QNetwork<double>;
template QOutput q_forward(QNetwork<float>&, const ParamStore<float>&,
                           const std::vector<float>&, const sim::Action&,
                           const sim::ActionBounds&, Mode, Rng*);
template QOutput q_forward(QNetwork<double>&, const ParamStore<double>&,
                           const std::vector<float>&, const sim::Action&,
                           const sim::ActionBounds&, Mode, Rng*);

}  // namespace graspgym::qnet
