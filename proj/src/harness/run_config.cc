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
#include "graspgym/harness/run_config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "graspgym/errors.h"
#include "json.hpp"

namespace graspgym::harness {

using json = nlohmann::ordered_json;

namespace {

// Reads typed fields from one object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown key " + path_ + "." + it.key());
    }
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_ + "." + key + " has the wrong type");
    }
  }
  const json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }
  std::string path(const char* key) const { return path_ + "." + key; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json cem_json(const cem::CemConfig& c) {
  return {{"n_a", c.n_a}, {"n_b", c.n_b}, {"n_n", c.n_n}, {"init_std", c.init_std},
          {"std_floor", c.std_floor}};
}

void read_cem(const json& j, const std::string& path, cem::CemConfig& c) {
  Section s(j, path);
  s.get("n_a", c.n_a);
  s.get("n_b", c.n_b);
  s.get("n_n", c.n_n);
  s.get("init_std", c.init_std);
  s.get("std_floor", c.std_floor);
}

std::string line_col(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

void RunConfig::validate() const {
  sim::catalog_object(object);
  episode.validate();
  camera.validate();
  policy.validate();
  trainer.validate();
  network.validate();
  if (rewards.w_success < 0 || rewards.w_dist < 0 || rewards.w_disp < 0 ||
      rewards.w_contact < 0 || rewards.disp_tol < 0) {
    throw ConfigError("reward weights must be >= 0");
  }
}

datagen::CollectConfig RunConfig::collect_config() const {
  datagen::CollectConfig c;
  c.episode = episode;
  c.object = sim::catalog_object(object);
  c.camera = camera;
  c.weights = rewards;
  c.policy = policy;
  c.augment = !ablation.disable_augmentation;
  return c;
}

qnet::QNetConfig RunConfig::effective_network() const {
  qnet::QNetConfig n = network;
  if (ablation.disable_dropout) n.dropout = 0.0;
  if (ablation.disable_aux) n.lambda_aux = 0.0;
  return n;
}

ddqn::EvalEnv RunConfig::eval_env() const {
  ddqn::EvalEnv env;
  env.episode = episode;
  env.object = sim::catalog_object(object);
  env.camera = camera;
  env.weights = rewards;
  return env;
}

std::string to_json(const RunConfig& c, int indent) {
  json j;
  j["object"] = c.object;
  j["grasp_mode"] = std::string(sim::to_string(c.episode.grasp_mode));
  const sim::EpisodeConfig& e = c.episode;
  j["episode"] = {{"k", e.k},
                  {"init_area", e.init_area},
                  {"init_height_min", e.init_height_min},
                  {"init_height_max", e.init_height_max},
                  {"init_rot_offset_max", e.init_rot_offset_max},
                  {"workspace_half_extent", e.workspace_half_extent},
                  {"delta_tran", e.bounds.delta_tran},
                  {"delta_rot", e.bounds.delta_rot}};
  const render::CameraModel& m = c.camera;
  j["camera"] = {{"focal_x", m.focal_x},         {"focal_y", m.focal_y},
                 {"principal_x", m.principal_x}, {"principal_y", m.principal_y},
                 {"width", m.width},             {"height", m.height},
                 {"mount_back", m.mount_back},   {"near_plane", m.near_plane}};
  const sim::RewardWeights& w = c.rewards;
  j["rewards"] = {{"w_success", w.w_success}, {"w_dist", w.w_dist}, {"w_disp", w.w_disp},
                  {"w_contact", w.w_contact}, {"disp_tol", w.disp_tol}};
  j["policy"] = {{"bias", c.policy.bias},
                 {"noise_std", c.policy.noise_std},
                 {"rotation_bias", c.policy.rotation_bias}};
  const ddqn::TrainerConfig& t = c.trainer;
  j["trainer"] = {{"gamma", t.gamma},
                  {"batch", t.batch},
                  {"lr", t.lr},
                  {"sync_period", t.sync_period},
                  {"total_steps", t.total_steps},
                  {"eval_episodes", t.eval_episodes},
                  {"eval_interval", t.eval_interval},
                  {"cem_train", cem_json(t.cem_train)},
                  {"cem_test", cem_json(t.cem_test)}};
  j["network"] = json::parse(qnet::qnet_config_to_json(c.network));
  j["ablation"] = {{"disable_augmentation", c.ablation.disable_augmentation},
                   {"disable_dropout", c.ablation.disable_dropout},
                   {"disable_aux", c.ablation.disable_aux}};
  j["seed"] = c.seed;
  return j.dump(indent);
}

RunConfig run_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) +
                      ": " + e.what());
  }
  RunConfig c;
  {
    Section s(j, "config");
    s.get("object", c.object);
    std::string mode(sim::to_string(c.episode.grasp_mode));
    s.get("grasp_mode", mode);
    c.episode.grasp_mode = sim::grasp_mode_from_string(mode);
    if (const json* e = s.child("episode")) {
      Section es(*e, s.path("episode"));
      es.get("k", c.episode.k);
      es.get("init_area", c.episode.init_area);
      es.get("init_height_min", c.episode.init_height_min);
      es.get("init_height_max", c.episode.init_height_max);
      es.get("init_rot_offset_max", c.episode.init_rot_offset_max);
      es.get("workspace_half_extent", c.episode.workspace_half_extent);
      es.get("delta_tran", c.episode.bounds.delta_tran);
      es.get("delta_rot", c.episode.bounds.delta_rot);
    }
    if (const json* m = s.child("camera")) {
      Section ms(*m, s.path("camera"));
      ms.get("focal_x", c.camera.focal_x);
      ms.get("focal_y", c.camera.focal_y);
      ms.get("principal_x", c.camera.principal_x);
      ms.get("principal_y", c.camera.principal_y);
      ms.get("width", c.camera.width);
      ms.get("height", c.camera.height);
      ms.get("mount_back", c.camera.mount_back);
      ms.get("near_plane", c.camera.near_plane);
    }
    if (const json* w = s.child("rewards")) {
      Section ws(*w, s.path("rewards"));
      ws.get("w_success", c.rewards.w_success);
      ws.get("w_dist", c.rewards.w_dist);
      ws.get("w_disp", c.rewards.w_disp);
      ws.get("w_contact", c.rewards.w_contact);
      ws.get("disp_tol", c.rewards.disp_tol);
    }
    if (const json* p = s.child("policy")) {
      Section ps(*p, s.path("policy"));
      ps.get("bias", c.policy.bias);
      ps.get("noise_std", c.policy.noise_std);
      ps.get("rotation_bias", c.policy.rotation_bias);
    }
    if (const json* t = s.child("trainer")) {
      Section ts(*t, s.path("trainer"));
      ts.get("gamma", c.trainer.gamma);
      ts.get("batch", c.trainer.batch);
      ts.get("lr", c.trainer.lr);
      ts.get("sync_period", c.trainer.sync_period);
      ts.get("total_steps", c.trainer.total_steps);
      ts.get("eval_episodes", c.trainer.eval_episodes);
      ts.get("eval_interval", c.trainer.eval_interval);
      if (const json* x = ts.child("cem_train")) read_cem(*x, ts.path("cem_train"), c.trainer.cem_train);
      if (const json* x = ts.child("cem_test")) read_cem(*x, ts.path("cem_test"), c.trainer.cem_test);
    }
    if (const json* n = s.child("network")) c.network = qnet::qnet_config_from_json(n->dump());
    if (const json* a = s.child("ablation")) {
      Section as(*a, s.path("ablation"));
      as.get("disable_augmentation", c.ablation.disable_augmentation);
      as.get("disable_dropout", c.ablation.disable_dropout);
      as.get("disable_aux", c.ablation.disable_aux);
    }
    s.get("seed", c.seed);
  }
  c.trainer.seed = c.seed;
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return run_config_from_json(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace graspgym::harness
