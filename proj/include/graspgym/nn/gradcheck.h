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
// Central finite differences for verifying analytic gradients.

#ifndef GRASPGYM_NN_GRADCHECK_H_
#define GRASPGYM_NN_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <vector>

namespace graspgym::nn {

// d f / d x_i for every entry of `x`, perturbing in place and restoring.
template <typename F>
std::vector<double> numeric_gradient(F&& f, std::vector<double>& x, double h = 1e-5) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double fp = f();
    x[i] = orig - h;
    const double fm = f();
    x[i] = orig;
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

// Largest |a - b| / max(|a|, |b|, floor). The floor keeps vanishing
// gradients from turning rounding noise into a large ratio.
inline double max_relative_error(const std::vector<double>& a,
                                 const std::vector<double>& b,
                                 double floor = 1e-4) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const double denom = std::max({std::abs(a[i]), std::abs(b[i]), floor});
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  if (a.size() != b.size()) return INFINITY;
  return worst;
}

}  // namespace graspgym::nn

#endif  // GRASPGYM_NN_GRADCHECK_H_
