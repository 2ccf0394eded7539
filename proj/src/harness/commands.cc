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
#include "graspgym/harness/commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "graspgym/ddqn/evaluate.h"
#include "graspgym/ddqn/replay.h"
#include "graspgym/ddqn/trainer.h"
#include "graspgym/errors.h"
#include "graspgym/nn/params.h"
#include "graspgym/render/augment.h"
#include "graspgym/render/raster.h"
#include "json.hpp"

namespace graspgym::harness {

using json = nlohmann::ordered_json;

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sidecar(const std::string& path) { return path + ".config.json"; }

json config_echo(const RunConfig& cfg) { return json::parse(to_json(cfg)); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Network layout a model file was trained with.
qnet::QNetConfig model_network(const RunConfig& cfg, const std::string& model) {
  if (!std::filesystem::exists(sidecar(model))) return cfg.effective_network();
  try {
    const json j = json::parse(read_file(sidecar(model)));
    return qnet::qnet_config_from_json(j.at("network").dump());
  } catch (const json::exception& e) {
    throw FormatError(sidecar(model) + ": " + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(sidecar(model) + ": " + e.what());
  }
}

nn::ParamStore<float> load_model(const qnet::QNetConfig& net_cfg, const std::string& model) {
  qnet::QNetwork<float> net(net_cfg);
  nn::ParamStore<float> store = net.zero_params();
  try {
    nn::load_params_into(store, read_file(model));
  } catch (const FormatError& e) {
    throw FormatError(model + ": " + e.what());
  }
  return store;
}

}  // namespace

datagen::DatasetHeader cmd_gen(const RunConfig& cfg, int64_t episodes, int workers,
                               const std::string& out) {
  if (episodes < 0) throw ConfigError("--episodes must be >= 0");
  if (workers < 1) workers = ddqn::default_threads();
  const datagen::Dataset d =
      datagen::collect_parallel(cfg.collect_config(), cfg.seed, uint64_t(episodes), workers);
  datagen::write_dataset(out, d);
  json echo;
  echo["run"] = config_echo(cfg);
  echo["episodes"] = episodes;
  echo["transitions"] = d.transitions.size();
  write_file(sidecar(out), echo.dump(2) + "\n");
  return d.header;
}

TrainOutputs cmd_train(const RunConfig& cfg, const std::string& data, const std::string& out,
                       int64_t steps, const std::string& metrics, std::ostream* log) {
  if (steps < 0) steps = cfg.trainer.total_steps;
  TrainOutputs res;
  res.model = out;
  res.best = out + ".best";
  res.metrics = metrics.empty() ? out + ".csv" : metrics;

  const datagen::Dataset d = datagen::read_dataset(data);
  ddqn::ReplayBuffer<datagen::Transition> buf(std::max<size_t>(1, d.transitions.size()));
  for (const datagen::Transition& t : d.transitions) buf.push(t);

  const qnet::QNetConfig net_cfg = cfg.effective_network();
  nn::AdamConfig adam;
  adam.lr = cfg.trainer.lr;
  ddqn::TrainerConfig tcfg = cfg.trainer;
  tcfg.seed = cfg.seed;
  ddqn::QNetModel model(net_cfg, buf, cfg.episode.bounds, tcfg.cem_train, adam, cfg.seed);
  ddqn::DdqnTrainer trainer(model, tcfg);

  json echo;
  echo["run"] = config_echo(cfg);
  echo["network"] = json::parse(qnet::qnet_config_to_json(net_cfg));
  echo["steps"] = steps;
  echo["dataset"] = {{"transitions", d.transitions.size()}, {"seed", d.header.seed}};
  write_file(sidecar(out), echo.dump(2) + "\n");
  write_file(sidecar(res.best), echo.dump(2) + "\n");

  std::ofstream csv(res.metrics, std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + res.metrics);
  csv << "step,loss,mean_q,eval_success_rate,aux_loss,mean_target\n";

  const ddqn::EvalEnv env = cfg.eval_env();
  const int threads = ddqn::default_threads();
  const uint64_t eval_seed = derive_seed(cfg.seed, 400);
  std::string best_bytes = nn::save_params(model.online());
  for (int64_t i = 1; i <= steps; ++i) {
    const ddqn::StepMetrics m = trainer.train_step();
    const bool eval_now = cfg.trainer.eval_episodes > 0 &&
                          ((cfg.trainer.eval_interval > 0 && i % cfg.trainer.eval_interval == 0) ||
                           i == steps);
    std::string eval_col;
    if (eval_now) {
      const nn::ParamStore<float>& params = model.online();
      auto policy = [&] {
        return std::make_unique<ddqn::GreedyQPolicy>(net_cfg, params, tcfg.cem_test);
      };
      const ddqn::EvalReport r =
          ddqn::evaluate(env, policy, cfg.trainer.eval_episodes, eval_seed, threads);
      res.last_eval = r.success_rate;
      eval_col = fmt(r.success_rate);
      if (r.success_rate > res.best_eval) {
        res.best_eval = r.success_rate;
        best_bytes = nn::save_params(model.online());
      }
      if (log) {
        *log << "step " << i << " loss " << fmt(m.loss) << " mean_q " << fmt(m.mean_q)
             << " eval_success_rate " << eval_col << std::endl;
      }
    }
    csv << i << ',' << fmt(m.loss) << ',' << fmt(m.mean_q) << ',' << eval_col << ','
        << fmt(m.aux_loss) << ',' << fmt(m.mean_target) << '\n';
    if (eval_now) csv.flush();
  }
  csv.close();
  if (!csv) throw std::runtime_error("cannot write " + res.metrics);

  const std::string final_bytes = nn::save_params(model.online());
  write_file(out, final_bytes);
  write_file(res.best, res.best_eval < 0.0 ? final_bytes : best_bytes);
  return res;
}

PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "greedy") return PolicyKind::kGreedy;
  if (s == "scripted") return PolicyKind::kScripted;
  if (s == "random") return PolicyKind::kRandom;
  throw ConfigError("unknown policy '" + s + "' (greedy, scripted, random)");
}

render::SceneRandomization eval_texture(uint64_t seed, int slot) {
  return render::randomize_scene(derive_seed(derive_seed(seed, 500), uint64_t(slot)));
}

std::string cmd_eval(const RunConfig& cfg, const std::string& model, const EvalOptions& opt,
                     const std::string& report) {
  ddqn::EvalEnv env = cfg.eval_env();
  if (opt.randomized_scenes > 0) {
    const uint64_t seed = opt.seed;
    const int n = opt.randomized_scenes;
    env.scene = [seed, n](int e) { return eval_texture(seed, e % n); };
  }
  const int threads = opt.threads > 0 ? opt.threads : ddqn::default_threads();

  std::string policy_name;
  qnet::QNetConfig net_cfg;
  nn::ParamStore<float> params;
  ddqn::PolicyFactory factory;
  switch (opt.policy) {
    case PolicyKind::kGreedy:
      policy_name = "greedy";
      net_cfg = model_network(cfg, model);
      params = load_model(net_cfg, model);
      factory = [&] {
        return std::make_unique<ddqn::GreedyQPolicy>(net_cfg, params, cfg.trainer.cem_test);
      };
      break;
    case PolicyKind::kScripted:
      policy_name = "scripted";
      factory = [] { return std::make_unique<ddqn::ScriptedPolicy>(); };
      break;
    case PolicyKind::kRandom:
      policy_name = "random";
      factory = [] { return std::make_unique<ddqn::RandomPolicy>(); };
      break;
  }
  const ddqn::EvalReport r = ddqn::evaluate(env, factory, opt.episodes, opt.seed, threads);

  json j;
  j["success_rate"] = r.success_rate;
  j["mean_reward"] = r.mean_reward;
  j["episodes_run"] = r.episodes.size();
  j["policy"] = policy_name;
  j["seed"] = opt.seed;
  j["scenes"] = opt.randomized_scenes > 0
                    ? "randomized:" + std::to_string(opt.randomized_scenes)
                    : std::string("heldout");
  json eps = json::array();
  for (const ddqn::EpisodeOutcome& e : r.episodes) {
    eps.push_back({{"episode", e.episode},
                   {"success", e.success},
                   {"total_reward", e.total_reward},
                   {"final_distance", e.final_distance},
                   {"final_rotation", e.final_rotation}});
  }
  j["outcomes"] = eps;
  j["config"] = config_echo(cfg);
  if (opt.policy == PolicyKind::kGreedy) {
    j["network"] = json::parse(qnet::qnet_config_to_json(net_cfg));
  }
  const std::string text = j.dump(2) + "\n";
  if (!report.empty()) write_file(report, text);
  return text;
}

RenderPaths cmd_render(const RunConfig& cfg, uint64_t seed, const std::string& out_prefix,
                       bool heldout) {
  const datagen::CollectConfig cc = cfg.collect_config();
  const sim::WorldState state = sim::reset_episode(cc.episode, cc.object, derive_seed(seed, 0));
  const render::SceneRandomization scene =
      heldout ? render::heldout_scene() : datagen::collect_scene(cc, seed);
  const render::Image raw = render::render(state, cc.camera, scene);
  const render::Observation obs = render::make_observation(raw, scene);
  RenderPaths p{out_prefix + "_raw.png", out_prefix + "_obs.png"};
  render::write_png(p.raw, raw);
  render::write_png(p.obs, obs);
  return p;
}

}  // namespace graspgym::harness
