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
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "graspgym/datagen/dataset.h"
#include "graspgym/ddqn/evaluate.h"
#include "graspgym/ddqn/trainer.h"
#include "graspgym/errors.h"
#include "support/oracles.h"

using namespace graspgym;
using namespace graspgym::ddqn;

namespace {

// Online Q(a) = a.dx maximized by CEM; target Q = c everywhere.
class SplitModel : public DdqnModel {
 public:
  explicit SplitModel(double c) : c_(c) {}
  size_t size() const override { return 4; }
  double reward(size_t r) const override { return 0.1 * double(r); }
  bool done(size_t r) const override { return r == 3; }
  std::vector<sim::Action> select_online(const std::vector<size_t>& rows, uint64_t seed) override {
    std::vector<sim::Action> out;
    for (size_t i = 0; i < rows.size(); ++i) {
      auto dx = [](const std::vector<sim::Action>& as) {
        std::vector<double> q;
        for (const auto& a : as) q.push_back(a.dx);
        return q;
      };
      out.push_back(cem::cem_argmax(dx, sim::ActionBounds{}, cem::CemConfig::test(),
                                    derive_seed(seed, i))
                        .action);
    }
    selected.insert(selected.end(), out.begin(), out.end());
    return out;
  }
  std::vector<double> evaluate_target(const std::vector<size_t>& rows,
                                      const std::vector<sim::Action>& a) override {
    evaluated.insert(evaluated.end(), a.begin(), a.end());
    return std::vector<double>(rows.size(), c_);
  }
  FitStats fit(const std::vector<size_t>&, const std::vector<double>&) override { return {}; }
  void sync_target() override {}

  std::vector<sim::Action> selected, evaluated;

 private:
  double c_;
};

std::vector<datagen::Transition> toy_transitions(int episodes) {
  datagen::CollectConfig cc;
  return datagen::collect(cc, 21, 0, uint64_t(episodes)).transitions;
}

ReplayBuffer<datagen::Transition> buffer_of(const std::vector<datagen::Transition>& ts) {
  ReplayBuffer<datagen::Transition> buf(ts.size());
  for (const auto& t : ts) buf.push(t);
  return buf;
}

nn::AdamConfig adam_lr(double lr) {
  nn::AdamConfig a;
  a.lr = lr;
  return a;
}

}  // namespace

TEST_SUITE("ddqn") {

TEST_CASE("terminal rows and zero discount give the reward exactly") {
  SplitModel model(5.0);
  const std::vector<double> y0 = compute_targets(model, {0, 1, 2, 3}, 0.0, 1);
  CHECK(y0 == std::vector<double>{0.0, 0.1, 0.2, 0.30000000000000004});
  CHECK(model.selected.empty());
  const std::vector<double> y = compute_targets(model, {3, 3}, 0.9, 1);
  CHECK(y == std::vector<double>{0.1 * 3, 0.1 * 3});
  CHECK(model.selected.empty());
}

TEST_CASE("online network selects and target network evaluates") {
  SplitModel model(2.0);
  const std::vector<size_t> rows = {0, 1, 2, 3, 1};
  const std::vector<double> y = compute_targets(model, rows, 0.9, 7);
  REQUIRE(model.selected.size() == 4);
  for (size_t i = 0; i < rows.size(); ++i) {
    const double want = model.reward(rows[i]) + (model.done(rows[i]) ? 0.0 : 0.9 * 2.0);
    CHECK(y[i] == doctest::Approx(want).epsilon(1e-15));
  }
  for (size_t i = 0; i < model.selected.size(); ++i) {
    CHECK(model.selected[i].dx == doctest::Approx(sim::ActionBounds{}.delta_tran).epsilon(0.05));
    CHECK(model.evaluated[i].dx == model.selected[i].dx);
  }
}

TEST_CASE("tabular targets match hand-computed double-q targets") {
  const testing::TabularMdp mdp = testing::make_test_mdp();
  testing::TabularModel model(mdp, 0.5);
  Rng rng(3);
  for (double& v : model.mutable_online()) v = rng.uniform(-1.0, 1.0);
  for (double& v : model.mutable_target()) v = rng.uniform(-1.0, 1.0);
  std::vector<size_t> rows;
  for (size_t r = 0; r < model.size(); ++r) rows.push_back(r);
  const std::vector<double> y = compute_targets(model, rows, 0.9, 0);
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto [s, a] = model.row(r);
    const int i = mdp.at(s, a);
    const int s2 = mdp.next[size_t(i)];
    int best = 0;
    for (int b = 1; b < mdp.actions; ++b)
      if (model.online()[size_t(mdp.at(s2, b))] > model.online()[size_t(mdp.at(s2, best))]) best = b;
    const double want = mdp.reward[size_t(i)] +
                        (mdp.done[size_t(i)] ? 0.0 : 0.9 * model.target()[size_t(mdp.at(s2, best))]);
    CHECK(y[r] == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("tabular training converges to value iteration") {
  const testing::TabularMdp mdp = testing::make_test_mdp();
  const std::vector<double> q_star = testing::value_iteration(mdp, 0.9);
  testing::TabularModel model(mdp, 0.2);
  TrainerConfig cfg;
  cfg.batch = 16;
  cfg.sync_period = 50;
  cfg.seed = 4;
  DdqnTrainer trainer(model, cfg);
  for (int i = 0; i < 20000; ++i) trainer.train_step();
  double worst = 0.0;
  for (size_t i = 0; i < q_star.size(); ++i)
    worst = std::max(worst, std::abs(model.online()[i] - q_star[i]));
  CHECK(worst < 1e-2);
}

TEST_CASE("target sync is a bitwise copy every C steps") {
  const auto ts = toy_transitions(3);
  const auto buf = buffer_of(ts);
  qnet::QNetConfig qc;
  TrainerConfig cfg;
  cfg.batch = 4;
  cfg.sync_period = 3;
  QNetModel model(qc, buf, sim::ActionBounds{}, cfg.cem_train, adam_lr(1e-3), 1);
  DdqnTrainer trainer(model, cfg);
  CHECK(save_params(model.target()) == save_params(model.online()));
  for (int i = 1; i <= 6; ++i) {
    const StepMetrics m = trainer.train_step();
    CHECK(m.step == i);
    CHECK(m.synced == (i % 3 == 0));
    CHECK(std::isfinite(m.loss));
    CHECK(m.loss >= 0.0);
    const bool equal = save_params(model.target()) == save_params(model.online());
    CHECK(equal == (i % 3 == 0));
  }
}

TEST_CASE("single terminal transition converges to its reward") {
  auto ts = toy_transitions(1);
  datagen::Transition t = ts.back();
  REQUIRE(t.done);
  t.reward = 1.0f;
  const auto buf = buffer_of({t});
  const sim::ActionBounds bounds;
  const std::vector<float> obs = datagen::dequantize(t.obs);
  const sim::Action a{t.action[0], t.action[1], t.action[2], t.action[3]};
  TrainerConfig cfg;
  cfg.batch = 8;
  cfg.seed = 2;

  SUBCASE("deterministic network reaches the fixed point") {
    qnet::QNetConfig qc;
    qc.dropout = 0.0;
    QNetModel model(qc, buf, bounds, cfg.cem_train, nn::AdamConfig{}, 3);
    DdqnTrainer trainer(model, cfg);
    for (int i = 0; i < 2000; ++i) {
      const StepMetrics m = trainer.train_step();
      REQUIRE(std::isfinite(m.loss));
      REQUIRE(m.loss >= 0.0);
      REQUIRE(m.mean_target == 1.0);
    }
    const double q = qnet::q_forward(model.net(), model.online(), obs, a, bounds).q;
    CHECK(std::abs(q - 1.0) < 1e-2);

    const cem::CemResult g1 = greedy_policy(model.net(), model.online(), obs, bounds, cfg.cem_test, 9);
    const cem::CemResult g2 = greedy_policy(model.net(), model.online(), obs, bounds, cfg.cem_test, 9);
    CHECK(g1.action.dx == g2.action.dx);
    CHECK(g1.action.dphi == g2.action.dphi);
    CHECK(g1.q == g2.q);
  }

  SUBCASE("with dropout the mask-averaged estimate reaches the fixed point") {
    qnet::QNetConfig qc;
    QNetModel model(qc, buf, bounds, cfg.cem_train, nn::AdamConfig{}, 3);
    DdqnTrainer trainer(model, cfg);
    for (int i = 0; i < 2000; ++i) trainer.train_step();
    Rng drop(77);
    double mean = 0.0;
    const int masks = 500;
    for (int i = 0; i < masks; ++i) {
      mean += qnet::q_forward(model.net(), model.online(), obs, a, bounds, nn::Mode::kTrain, &drop).q /
              masks;
    }
    CHECK(std::abs(mean - 1.0) < 1e-2);
  }
}

TEST_CASE("uniform zero network picks the initial cem mean") {
  qnet::QNetwork<float> net{qnet::QNetConfig{}};
  const nn::ParamStore<float> zero = net.zero_params();
  const std::vector<float> obs(net.obs_size(), 0.5f);
  const cem::CemResult r = greedy_policy(net, zero, obs, sim::ActionBounds{}, cem::CemConfig::test(), 3);
  CHECK(r.action.dx == 0.0);
  CHECK(r.action.dy == 0.0);
  CHECK(r.action.dz == 0.0);
  CHECK(r.action.dphi == 0.0);
  CHECK(r.q == 0.0);
}

TEST_CASE("training is reproducible from the seed") {
  const auto ts = toy_transitions(4);
  const auto buf = buffer_of(ts);
  qnet::QNetConfig qc;
  TrainerConfig cfg;
  cfg.batch = 4;
  cfg.sync_period = 5;
  cfg.seed = 11;
  auto run = [&] {
    QNetModel model(qc, buf, sim::ActionBounds{}, cfg.cem_train, adam_lr(1e-3), 5);
    DdqnTrainer trainer(model, cfg);
    std::vector<double> trace;
    for (int i = 0; i < 12; ++i) {
      const StepMetrics m = trainer.train_step();
      trace.insert(trace.end(), {m.loss, m.mean_q, m.mean_target, m.aux_loss});
    }
    return trace;
  };
  CHECK(run() == run());
}

TEST_CASE("trainer errors") {
  ReplayBuffer<datagen::Transition> empty(4);
  qnet::QNetConfig qc;
  TrainerConfig cfg;
  QNetModel model(qc, empty, sim::ActionBounds{}, cfg.cem_train, nn::AdamConfig{}, 1);
  DdqnTrainer trainer(model, cfg);
  CHECK_THROWS_AS(trainer.train_step(), ProtocolError);
  TrainerConfig bad = cfg;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.sync_period = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("replay buffer is a ring that samples with replacement") {
  ReplayBuffer<int> buf(3);
  for (int i = 0; i < 5; ++i) buf.push(i);
  CHECK(buf.size() == 3);
  CHECK(buf[0] == 3);
  CHECK(buf[1] == 4);
  CHECK(buf[2] == 2);
  Rng rng(1);
  const auto s = buf.sample(rng, 10);
  CHECK(s.size() == 10);
}

TEST_CASE("scripted policy always succeeds on the box") {
  EvalEnv env;
  const EvalReport r = evaluate(env, [] { return std::make_unique<ScriptedPolicy>(); }, 100, 1, 1);
  CHECK(r.success_rate == 1.0);
  CHECK(r.episodes.size() == 100);
}

TEST_CASE("random policy rarely succeeds") {
  EvalEnv env;
  const EvalReport r = evaluate(env, [] { return std::make_unique<RandomPolicy>(); }, 200, 1, 1);
  CHECK(r.success_rate <= 0.10);
}

TEST_CASE("evaluation over zero episodes is zero") {
  EvalEnv env;
  const EvalReport r = evaluate(env, [] { return std::make_unique<RandomPolicy>(); }, 0, 1, 1);
  CHECK(r.success_rate == 0.0);
  CHECK(r.episodes.empty());
}

TEST_CASE("evaluation is independent of the thread count") {
  EvalEnv env;
  auto f = [] { return std::make_unique<RandomPolicy>(); };
  const EvalReport a = evaluate(env, f, 24, 5, 1);
  const EvalReport b = evaluate(env, f, 24, 5, 3);
  REQUIRE(a.episodes.size() == b.episodes.size());
  for (size_t i = 0; i < a.episodes.size(); ++i) {
    CHECK(a.episodes[i].success == b.episodes[i].success);
    CHECK(a.episodes[i].total_reward == b.episodes[i].total_reward);
  }
}

}  // TEST_SUITE
