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
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "graspgym/errors.h"
#include "graspgym/harness/commands.h"
#include "graspgym/harness/run_config.h"

using namespace graspgym;
using namespace graspgym::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "graspgym_harness_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

RunConfig quick_config() {
  RunConfig cfg;
  cfg.seed = 3;
  cfg.trainer.batch = 8;
  cfg.trainer.sync_period = 5;
  cfg.trainer.eval_episodes = 4;
  cfg.trainer.eval_interval = 0;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("run config json round-trips") {
  RunConfig cfg;
  cfg.seed = 77;
  cfg.policy.bias = 0.4;
  cfg.trainer.sync_period = 250;
  cfg.ablation.disable_aux = true;
  cfg.network.dropout = 0.2;
  const RunConfig back = run_config_from_json(to_json(cfg));
  CHECK(to_json(back) == to_json(cfg));
  CHECK(back.seed == 77);
  CHECK(back.trainer.seed == 77);
  CHECK(back.ablation.disable_aux);
}

TEST_CASE("missing keys keep defaults") {
  const RunConfig cfg = run_config_from_json(R"({"seed": 5})");
  CHECK(to_json(cfg) == to_json([] {
          RunConfig c;
          c.seed = 5;
          c.trainer.seed = 5;
          return c;
        }()));
}

TEST_CASE("bad configs raise config errors") {
  CHECK_THROWS_AS(run_config_from_json(R"({"sede": 5})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(R"({"trainer": {"batchsize": 5}})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(R"({"trainer": {"batch": 0}})"), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(R"({"object": "teapot"})"), ConfigError);
  try {
    run_config_from_json("{\n  \"seed\": 1,\n  \"oops\"\n}");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(load_run_config("/nonexistent/graspgym.json"), ConfigError);
}

TEST_CASE("ablation flags reach the network and collection configs") {
  RunConfig cfg;
  CHECK(cfg.effective_network().dropout == doctest::Approx(0.1));
  CHECK(cfg.effective_network().lambda_aux == doctest::Approx(0.5));
  CHECK(cfg.collect_config().augment);
  cfg.ablation = {true, true, true};
  CHECK(cfg.effective_network().dropout == 0.0);
  CHECK(cfg.effective_network().lambda_aux == 0.0);
  CHECK_FALSE(cfg.collect_config().augment);
}

TEST_CASE("gen merges workers into k plus one transitions per episode") {
  const fs::path dir = scratch("gen");
  const RunConfig cfg = quick_config();
  const datagen::DatasetHeader two = cmd_gen(cfg, 10, 2, (dir / "two.grtd").string());
  const datagen::DatasetHeader one = cmd_gen(cfg, 10, 1, (dir / "one.grtd").string());
  CHECK(two.count == 60);
  CHECK(one == two);
  CHECK(slurp(dir / "one.grtd") == slurp(dir / "two.grtd"));
  const nlohmann::json echo = nlohmann::json::parse(slurp(dir / "two.grtd.config.json"));
  CHECK(echo.at("transitions").get<int>() == 60);
}

TEST_CASE("zero train steps write only the csv header") {
  const fs::path dir = scratch("train0");
  const RunConfig cfg = quick_config();
  cmd_gen(cfg, 2, 1, (dir / "d.grtd").string());
  const TrainOutputs out = cmd_train(cfg, (dir / "d.grtd").string(), (dir / "m.gqnw").string(), 0);
  const auto rows = csv_rows(out.metrics);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == std::vector<std::string>{"step", "loss", "mean_q", "eval_success_rate",
                                            "aux_loss", "mean_target"});
  CHECK(fs::exists(out.model));
  CHECK(slurp(out.best) == slurp(out.model));
}

TEST_CASE("train metrics carry one row per step and eval only at eval points") {
  const fs::path dir = scratch("train");
  RunConfig cfg = quick_config();
  cfg.trainer.eval_interval = 3;
  cmd_gen(cfg, 3, 1, (dir / "d.grtd").string());
  const TrainOutputs out = cmd_train(cfg, (dir / "d.grtd").string(), (dir / "m.gqnw").string(), 7);
  const auto rows = csv_rows(out.metrics);
  REQUIRE(rows.size() == 8);
  for (int i = 1; i <= 7; ++i) {
    CAPTURE(i);
    REQUIRE(rows[size_t(i)].size() == 6);
    CHECK(rows[size_t(i)][0] == std::to_string(i));
    CHECK(rows[size_t(i)][3].empty() == !(i % 3 == 0 || i == 7));
    CHECK(std::stod(rows[size_t(i)][4]) > 0.0);
  }
  CHECK(out.last_eval >= 0.0);
  CHECK(out.best_eval >= out.last_eval);
}

TEST_CASE("disabled aux loss writes a zero aux column") {
  const fs::path dir = scratch("noaux");
  RunConfig cfg = quick_config();
  cfg.ablation.disable_aux = true;
  cfg.trainer.eval_episodes = 0;
  cmd_gen(cfg, 2, 1, (dir / "d.grtd").string());
  const TrainOutputs out = cmd_train(cfg, (dir / "d.grtd").string(), (dir / "m.gqnw").string(), 4);
  const auto rows = csv_rows(out.metrics);
  REQUIRE(rows.size() == 5);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][4]) == 0.0);
    CHECK(rows[i][3].empty());
  }
}

TEST_CASE("eval reports scripted, random and greedy policies") {
  const fs::path dir = scratch("eval");
  const RunConfig cfg = quick_config();
  EvalOptions opt;
  opt.episodes = 10;
  opt.policy = PolicyKind::kScripted;
  const nlohmann::json s = nlohmann::json::parse(cmd_eval(cfg, "", opt));
  CHECK(s.at("success_rate").get<double>() == 1.0);
  CHECK(s.at("episodes_run").get<int>() == 10);
  CHECK(s.at("outcomes").size() == 10);

  cmd_gen(cfg, 2, 1, (dir / "d.grtd").string());
  cmd_train(cfg, (dir / "d.grtd").string(), (dir / "m.gqnw").string(), 2);
  opt.policy = PolicyKind::kGreedy;
  opt.episodes = 3;
  opt.randomized_scenes = 2;
  const std::string report = (dir / "r.json").string();
  const std::string json = cmd_eval(cfg, (dir / "m.gqnw").string(), opt, report);
  CHECK(slurp(report) == json);
  CHECK(cmd_eval(cfg, (dir / "m.gqnw").string(), opt) == json);
  CHECK(nlohmann::json::parse(json).at("policy") == "greedy");
  CHECK_THROWS_AS(cmd_eval(cfg, (dir / "missing.gqnw").string(), opt), FormatError);
  CHECK_THROWS_AS(policy_kind_from_string("best"), ConfigError);
}

TEST_CASE("render writes deterministic pngs") {
  const fs::path dir = scratch("render");
  const RunConfig cfg;
  const RenderPaths a = cmd_render(cfg, 4, (dir / "a").string(), false);
  const RenderPaths b = cmd_render(cfg, 4, (dir / "b").string(), false);
  const RenderPaths h = cmd_render(cfg, 4, (dir / "h").string(), true);
  CHECK(slurp(a.raw) == slurp(b.raw));
  CHECK(slurp(a.obs) == slurp(b.obs));
  CHECK(slurp(a.raw).substr(1, 3) == "PNG");
  CHECK(slurp(h.raw) != slurp(a.raw));
}

TEST_CASE("randomized evaluation textures are distinct") {
  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j) CHECK_FALSE(eval_texture(0, i) == eval_texture(0, j));
  CHECK(eval_texture(0, 3) == eval_texture(0, 3));
  CHECK_FALSE(eval_texture(0, 3).reserved);
}

}  // TEST_SUITE
