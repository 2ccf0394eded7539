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
#ifndef GRASPGYM_NN_PARAMS_H_
#define GRASPGYM_NN_PARAMS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graspgym/nn/tensor.h"

namespace graspgym::nn {

template <typename T>
struct Param {
  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
  Tensor<T> m;  // Adam first moment
  Tensor<T> v;  // Adam second moment
};

template <typename T>
class ParamStore {
 public:
  // Registers a zero-initialized parameter and returns its index.
  int add(const std::string& name, const Shape& shape);

  int size() const { return int(params_.size()); }
  Param<T>& operator[](int i) { return params_[size_t(i)]; }
  const Param<T>& operator[](int i) const { return params_[size_t(i)]; }
  // -1 when absent.
  int find(std::string_view name) const;

  void zero_grad();
  // Overwrites values from a store with the same layout. Moments untouched.
  void copy_values_from(const ParamStore& other);
  bool same_layout(const ParamStore& other) const;
  size_t num_values() const;

  int64_t step = 0;  // Adam updates applied

  template <typename U>
  ParamStore<U> cast() const;

 private:
  std::vector<Param<T>> params_;
};

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Applies one bias-corrected Adam update from the accumulated gradients.
// Throws NumericError and leaves the store untouched if any gradient is
// not finite.
template <typename T>
void adam_step(ParamStore<T>& store, const AdamConfig& cfg);

// "GQNW" v1 parameter file, little-endian f32 payload.
inline constexpr uint16_t kParamFormatVersion = 1;

template <typename T>
std::string save_params(const ParamStore<T>& store);
template <typename T>
ParamStore<T> load_params(std::string_view bytes);
// Loads into an existing store; names and shapes must match exactly.
template <typename T>
void load_params_into(ParamStore<T>& store, std::string_view bytes);

}  // namespace graspgym::nn

#endif  // GRASPGYM_NN_PARAMS_H_
