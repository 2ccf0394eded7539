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
#ifndef GRASPGYM_NN_TENSOR_H_
#define GRASPGYM_NN_TENSOR_H_

#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "graspgym/errors.h"

namespace graspgym::nn {

using Shape = std::vector<int>;

inline size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), size_t{1},
                         [](size_t a, int d) { return a * size_t(d); });
}

inline std::string shape_string(const Shape& shape);

// Dense row-major tensor.
template <typename T>
struct Tensor {
  Shape shape;
  std::vector<T> data;

  Tensor() = default;
  explicit Tensor(Shape s, T fill = T(0))
      : shape(std::move(s)), data(shape_size(shape), fill) {
    for (int d : shape) {
      if (d <= 0) throw ContractError("tensor dims must be positive");
    }
  }
  Tensor(Shape s, std::vector<T> values) : shape(std::move(s)), data(std::move(values)) {
    if (data.size() != shape_size(shape)) {
      throw ContractError("tensor data length does not match shape " +
                          shape_string(shape));
    }
  }

  size_t size() const { return data.size(); }
  int rank() const { return int(shape.size()); }
  int dim(int i) const { return shape.at(size_t(i)); }
  T* ptr() { return data.data(); }
  const T* ptr() const { return data.data(); }
  T& operator[](size_t i) { return data[i]; }
  const T& operator[](size_t i) const { return data[i]; }

  Tensor reshaped(Shape s) const {
    Tensor out;
    out.shape = std::move(s);
    if (shape_size(out.shape) != data.size()) {
      throw ContractError("cannot reshape " + shape_string(shape) + " to " +
                          shape_string(out.shape));
    }
    out.data = data;
    return out;
  }

  template <typename U>
  Tensor<U> cast() const {
    return Tensor<U>(shape, std::vector<U>(data.begin(), data.end()));
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

inline std::string shape_string(const Shape& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace graspgym::nn

#endif  // GRASPGYM_NN_TENSOR_H_
