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
#include "doctest.h"
#include "graspgym/sim/world.h"
#include "support/oracles.h"

using namespace graspgym;

TEST_SUITE("grasp_oracle") {

TEST_CASE("oracle agrees with itself on obvious cells") {
  const testing::BoxGraspOracle o{0.03, 0.06};
  CHECK(o.success(0.0, 0.0, 0.0));
  CHECK_FALSE(o.success(0.0, 0.0, 0.3));
  CHECK_FALSE(o.success(0.006, 0.0, 0.0));
  CHECK_FALSE(o.success(0.0, 0.046, 0.0));
}

TEST_CASE("attempt_grasp matches the geometric oracle on every grid cell") {
  const testing::GraspSweepReport rep = testing::grasp_oracle_sweep();
  CHECK(rep.cells == 100 * 100 * 21);
  CHECK(rep.successes > 100);
  CHECK(rep.successes < rep.cells / 2);
  CHECK(rep.mismatches == 0);
}

}  // TEST_SUITE
