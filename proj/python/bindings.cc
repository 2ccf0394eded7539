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
// Python bindings for the gen, train, eval and render commands plus dataset
// loading. Configs cross the boundary as JSON text.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "graspgym/datagen/dataset.h"
#include "graspgym/errors.h"
#include "graspgym/harness/commands.h"
#include "graspgym/harness/run_config.h"
#include "graspgym/rng.h"

namespace py = pybind11;
using namespace graspgym;

namespace {

harness::RunConfig parse(const std::string& config) {
  return config.empty() ? harness::RunConfig{} : harness::run_config_from_json(config);
}

py::dict header_dict(const datagen::DatasetHeader& h) {
  py::dict d;
  d["version"] = h.version;
  d["width"] = h.width;
  d["height"] = h.height;
  d["count"] = h.count;
  d["seed"] = h.seed;
  return d;
}

py::dict dataset_dict(const datagen::Dataset& ds) {
  const py::ssize_t n = py::ssize_t(ds.transitions.size());
  const py::ssize_t h = ds.header.height, w = ds.header.width;
  py::array_t<uint8_t> obs({n, h, w, py::ssize_t(3)});
  py::array_t<uint8_t> next_obs({n, h, w, py::ssize_t(3)});
  py::array_t<float> action({n, py::ssize_t(4)});
  py::array_t<float> reward(std::vector<py::ssize_t>{n});
  py::array_t<uint8_t> done(std::vector<py::ssize_t>{n});
  py::array_t<float> aux({n, py::ssize_t(2)});
  py::array_t<uint32_t> episode(std::vector<py::ssize_t>{n});
  const size_t frame = size_t(h * w * 3);
  for (py::ssize_t i = 0; i < n; ++i) {
    const datagen::Transition& t = ds.transitions[size_t(i)];
    std::memcpy(obs.mutable_data() + size_t(i) * frame, t.obs.data(), frame);
    std::memcpy(next_obs.mutable_data() + size_t(i) * frame, t.next_obs.data(), frame);
    std::copy(t.action.begin(), t.action.end(), action.mutable_data() + i * 4);
    reward.mutable_data()[i] = t.reward;
    done.mutable_data()[i] = t.done ? 1 : 0;
    std::copy(t.aux.begin(), t.aux.end(), aux.mutable_data() + i * 2);
    episode.mutable_data()[i] = t.episode_id;
  }
  py::dict d;
  d["header"] = header_dict(ds.header);
  d["obs"] = obs;
  d["next_obs"] = next_obs;
  d["action"] = action;
  d["reward"] = reward;
  d["done"] = done.attr("astype")("bool");
  d["aux"] = aux;
  d["episode_id"] = episode;
  return d;
}

}  // namespace

PYBIND11_MODULE(_graspgym, m) {
  m.doc() = "Directional semantic grasping simulator, Q-network trainer and evaluator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_IOError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);

  m.def("default_config", [] { return harness::to_json(harness::RunConfig{}); },
        "Default run configuration as JSON text.");
  m.def("normalize_config", [](const std::string& config) { return harness::to_json(parse(config)); },
        py::arg("config"), "Validated configuration with every key filled in.");
  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));

  m.def(
      "gen",
      [](const std::string& config, int64_t episodes, int workers, const std::string& out) {
        const harness::RunConfig cfg = parse(config);
        datagen::DatasetHeader h;
        {
          py::gil_scoped_release release;
          h = harness::cmd_gen(cfg, episodes, workers, out);
        }
        return header_dict(h);
      },
      py::arg("config"), py::arg("episodes"), py::arg("workers"), py::arg("out"));

  m.def(
      "train",
      [](const std::string& config, const std::string& data, const std::string& out,
         int64_t steps, const std::string& metrics) {
        const harness::RunConfig cfg = parse(config);
        harness::TrainOutputs r;
        {
          py::gil_scoped_release release;
          r = harness::cmd_train(cfg, data, out, steps, metrics);
        }
        py::dict d;
        d["model"] = r.model;
        d["best"] = r.best;
        d["metrics"] = r.metrics;
        d["last_eval"] = r.last_eval;
        d["best_eval"] = r.best_eval;
        return d;
      },
      py::arg("config"), py::arg("data"), py::arg("out"), py::arg("steps") = -1,
      py::arg("metrics") = "");

  m.def(
      "evaluate",
      [](const std::string& config, const std::string& model, int episodes, uint64_t seed,
         const std::string& policy, int randomized_scenes, const std::string& report) {
        const harness::RunConfig cfg = parse(config);
        harness::EvalOptions opt;
        opt.episodes = episodes;
        opt.seed = seed;
        opt.policy = harness::policy_kind_from_string(policy);
        opt.randomized_scenes = randomized_scenes;
        py::gil_scoped_release release;
        return harness::cmd_eval(cfg, model, opt, report);
      },
      py::arg("config"), py::arg("model"), py::arg("episodes") = 200, py::arg("seed") = 0,
      py::arg("policy") = "greedy", py::arg("randomized_scenes") = 0, py::arg("report") = "",
      "Returns the evaluation report as JSON text.");

  m.def(
      "render",
      [](const std::string& config, uint64_t seed, const std::string& prefix, bool heldout) {
        const harness::RenderPaths p = harness::cmd_render(parse(config), seed, prefix, heldout);
        return py::make_tuple(p.raw, p.obs);
      },
      py::arg("config"), py::arg("seed"), py::arg("prefix"), py::arg("heldout") = false);

  m.def("read_header", [](const std::string& path) { return header_dict(datagen::read_header(path)); },
        py::arg("path"));
  m.def("read_dataset", [](const std::string& path) { return dataset_dict(datagen::read_dataset(path)); },
        py::arg("path"));
}
