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
#ifndef GRASPGYM_HARNESS_COMMANDS_H_
#define GRASPGYM_HARNESS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "graspgym/datagen/dataset.h"
#include "graspgym/harness/run_config.h"

namespace graspgym::harness {

// Writes the merged dataset to `out` and the config echo to out + ".config.json".
datagen::DatasetHeader cmd_gen(const RunConfig& cfg, int64_t episodes, int workers,
                               const std::string& out);

struct TrainOutputs {
  std::string model;    // final parameters
  std::string best;     // best held-out checkpoint (final when never evaluated)
  std::string metrics;  // CSV
  double last_eval = -1.0;
  double best_eval = -1.0;
};

// steps < 0 uses cfg.trainer.total_steps. An empty metrics path defaults to
// out + ".csv". Progress lines go to `log` when given.
TrainOutputs cmd_train(const RunConfig& cfg, const std::string& data, const std::string& out,
                       int64_t steps, const std::string& metrics = "",
                       std::ostream* log = nullptr);

enum class PolicyKind { kGreedy, kScripted, kRandom };
PolicyKind policy_kind_from_string(const std::string& s);

struct EvalOptions {
  int episodes = 200;
  uint64_t seed = 0;
  PolicyKind policy = PolicyKind::kGreedy;
  // 0 evaluates on the held-out scene; n > 0 cycles through n randomized
  // training-distribution scenes.
  int randomized_scenes = 0;
  int threads = 0;  // 0 reads GRASPGYM_THREADS
};

// Returns the JSON report and writes it to `report` when non-empty. The
// model path is ignored for scripted and random policies.
std::string cmd_eval(const RunConfig& cfg, const std::string& model, const EvalOptions& opt,
                     const std::string& report = "");

// Scene used for randomized evaluation slot i.
render::SceneRandomization eval_texture(uint64_t seed, int slot);

struct RenderPaths {
  std::string raw;
  std::string obs;
};
RenderPaths cmd_render(const RunConfig& cfg, uint64_t seed, const std::string& out_prefix,
                       bool heldout);

}  // namespace graspgym::harness

#endif  // GRASPGYM_HARNESS_COMMANDS_H_
