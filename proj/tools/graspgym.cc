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
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "graspgym/errors.h"
#include "graspgym/harness/commands.h"
#include "graspgym/harness/run_config.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kRuntime = 3 };

using graspgym::harness::RunConfig;

struct Common {
  std::string config;
  int64_t seed = -1;
  bool disable_augmentation = false;
  bool disable_dropout = false;
  bool disable_aux = false;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config, "Run config JSON");
    app->add_option("--seed", seed, "Master seed (overrides the config)");
    app->add_flag("--disable-augmentation", disable_augmentation, "Render with one plain scene");
    app->add_flag("--disable-dropout", disable_dropout, "Train without dropout");
    app->add_flag("--disable-aux", disable_aux, "Train without the auxiliary loss");
  }

  RunConfig resolve() const {
    RunConfig cfg = config.empty() ? RunConfig{} : graspgym::harness::load_run_config(config);
    if (seed >= 0) cfg.seed = uint64_t(seed);
    cfg.trainer.seed = cfg.seed;
    cfg.ablation.disable_augmentation |= disable_augmentation;
    cfg.ablation.disable_dropout |= disable_dropout;
    cfg.ablation.disable_aux |= disable_aux;
    cfg.validate();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graspgym: directional semantic grasping in a kinematic simulator"};
  app.require_subcommand(1);

  Common gen_c, train_c, eval_c, render_c;

  CLI::App* gen = app.add_subcommand("gen", "Collect a dataset with the biased policy");
  gen_c.attach(gen);
  int64_t gen_episodes = 100;
  int gen_workers = 0;
  std::string gen_out;
  gen->add_option("--episodes", gen_episodes, "Episodes to collect");
  gen->add_option("--workers", gen_workers, "Worker threads (default GRASPGYM_THREADS or all cores)");
  gen->add_option("-o,--out", gen_out, "Output dataset file")->required();

  CLI::App* train = app.add_subcommand("train", "Train the Q-network on a dataset");
  train_c.attach(train);
  std::string train_data, train_out, train_metrics;
  int64_t train_steps = -1;
  train->add_option("--data", train_data, "Dataset file")->required();
  train->add_option("-o,--out", train_out, "Output model file")->required();
  train->add_option("--steps", train_steps, "Train steps (default from the config)");
  train->add_option("--metrics", train_metrics, "Metrics CSV (default <out>.csv)");

  CLI::App* ev = app.add_subcommand("eval", "Evaluate a policy on the held-out scene");
  eval_c.attach(ev);
  std::string eval_model, eval_report, eval_policy = "greedy";
  graspgym::harness::EvalOptions eval_opt;
  int64_t eval_seed = 0;
  ev->add_option("--model", eval_model, "Model file (greedy policy)");
  ev->add_option("--episodes", eval_opt.episodes, "Evaluation episodes");
  ev->add_option("--eval-seed", eval_seed, "Evaluation seed");
  ev->add_option("--policy", eval_policy, "greedy, scripted or random");
  ev->add_flag("--scripted", [&](int64_t) { eval_policy = "scripted"; }, "Use the scripted oracle");
  ev->add_flag("--random", [&](int64_t) { eval_policy = "random"; }, "Use the uniform random policy");
  ev->add_option("--randomized-scenes", eval_opt.randomized_scenes,
                 "Cycle through N randomized scenes instead of the held-out one");
  ev->add_option("--report", eval_report, "Write the JSON report here");

  CLI::App* rd = app.add_subcommand("render", "Write one raw and one augmented observation");
  render_c.attach(rd);
  int64_t render_seed = 0;
  std::string render_out = "frame";
  bool render_heldout = false;
  rd->add_option("--frame-seed", render_seed, "Episode seed of the frame");
  rd->add_option("-o,--out", render_out, "Output prefix (<prefix>_raw.png, <prefix>_obs.png)");
  rd->add_flag("--heldout", render_heldout, "Use the reserved evaluation scene");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      const RunConfig cfg = gen_c.resolve();
      const auto h = graspgym::harness::cmd_gen(cfg, gen_episodes, gen_workers, gen_out);
      std::cout << "wrote " << gen_out << ": " << h.count << " transitions, " << h.width << "x"
                << h.height << " obs, seed " << h.seed << "\n";
    } else if (*train) {
      const RunConfig cfg = train_c.resolve();
      const auto r = graspgym::harness::cmd_train(cfg, train_data, train_out, train_steps,
                                                  train_metrics, &std::cerr);
      std::cout << "wrote " << r.model << ", " << r.best << " and " << r.metrics << "\n";
      if (r.last_eval >= 0.0) std::cout << "final held-out success rate " << r.last_eval << "\n";
    } else if (*ev) {
      const RunConfig cfg = eval_c.resolve();
      eval_opt.policy = graspgym::harness::policy_kind_from_string(eval_policy);
      eval_opt.seed = uint64_t(eval_seed);
      if (eval_opt.policy == graspgym::harness::PolicyKind::kGreedy && eval_model.empty()) {
        std::cerr << "error: --model is required for the greedy policy\n";
        return kUsage;
      }
      const std::string text = graspgym::harness::cmd_eval(cfg, eval_model, eval_opt, eval_report);
      if (eval_report.empty()) std::cout << text;
      else std::cout << "wrote " << eval_report << "\n";
    } else if (*rd) {
      const RunConfig cfg = render_c.resolve();
      const auto p = graspgym::harness::cmd_render(cfg, uint64_t(render_seed), render_out,
                                                   render_heldout);
      std::cout << "wrote " << p.raw << " and " << p.obs << "\n";
    }
  } catch (const graspgym::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const graspgym::FormatError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}
