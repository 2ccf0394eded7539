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
#ifndef GRASPGYM_NN_LAYERS_H_
#define GRASPGYM_NN_LAYERS_H_

#include <string>
#include <utility>
#include <vector>

#include "graspgym/nn/params.h"
#include "graspgym/nn/tensor.h"
#include "graspgym/rng.h"

namespace graspgym::nn {

enum class Mode { kTrain, kEval };

struct LayerSpec {
  enum class Kind { kConv2d, kLinear, kReLU, kDropout, kFlatten, kConcat };
  Kind kind = Kind::kReLU;
  int out = 0;  // channels for conv, features for linear
  int kernel = 1;
  int stride = 1;
  int padding = 0;
  double p = 0.0;

  static LayerSpec conv2d(int out_channels, int kernel, int stride, int padding) {
    return {Kind::kConv2d, out_channels, kernel, stride, padding, 0.0};
  }
  static LayerSpec linear(int out_features) {
    return {Kind::kLinear, out_features, 1, 1, 0, 0.0};
  }
  static LayerSpec relu() { return {Kind::kReLU, 0, 1, 1, 0, 0.0}; }
  static LayerSpec dropout(double p) { return {Kind::kDropout, 0, 1, 1, 0, p}; }
  static LayerSpec flatten() { return {Kind::kFlatten, 0, 1, 1, 0, 0.0}; }
  static LayerSpec concat() { return {Kind::kConcat, 0, 1, 1, 0, 0.0}; }

  void validate() const;
  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

std::string to_string(LayerSpec::Kind kind);
LayerSpec::Kind layer_kind_from_string(const std::string& s);

// A chain of single-input layers. Parameters live in an external ParamStore
// so that online and target networks can share one layout. Activations from
// the last forward are cached on the instance; backward consumes them.
template <typename T>
class Sequential {
 public:
  Sequential() = default;
  // `input_shape` excludes the batch dimension. Registers parameters named
  // "<prefix>.<layer index>.weight" / ".bias" in `store`.
  Sequential(std::vector<LayerSpec> specs, Shape input_shape,
             ParamStore<T>& store, const std::string& prefix);

  // x: [batch, input_shape...]. rng is required when mode is kTrain and the
  // chain contains dropout with p > 0.
  Tensor<T> forward(const ParamStore<T>& store, const Tensor<T>& x, Mode mode,
                    Rng* rng = nullptr);
  // Accumulates parameter gradients into `store` and returns dL/dx.
  Tensor<T> backward(ParamStore<T>& store, const Tensor<T>& grad_out);

  const Shape& input_shape() const { return input_shape_; }
  const Shape& output_shape() const { return output_shape_; }
  const std::vector<LayerSpec>& specs() const { return specs_; }
  // Parameter indices of layer i: {weight, bias} or {-1, -1}.
  std::pair<int, int> param_index(int i) const { return params_[size_t(i)]; }
  bool has_cache() const { return cached_; }

 private:
  struct Cache {
    Tensor<T> input;
    std::vector<T> cols;  // conv im2col
    std::vector<T> mask;  // dropout scale per element; empty means identity
  };

  std::vector<LayerSpec> specs_;
  std::vector<Shape> shapes_;  // per-sample input shape of each layer, plus output
  std::vector<std::pair<int, int>> params_;
  std::vector<Cache> cache_;
  Shape input_shape_, output_shape_;
  bool cached_ = false;
};

// Concatenation of two [batch, n] tensors along features.
template <typename T>
Tensor<T> concat_features(const Tensor<T>& a, const Tensor<T>& b);
// Inverse of concat_features for gradients: splits off the first n_a columns.
template <typename T>
std::pair<Tensor<T>, Tensor<T>> split_features(const Tensor<T>& g, int n_a);

// Fills parameter `index` with Uniform(-bound, bound) draws.
template <typename T>
void init_uniform(ParamStore<T>& store, int index, double bound, Rng& rng);

}  // namespace graspgym::nn

#endif  // GRASPGYM_NN_LAYERS_H_
