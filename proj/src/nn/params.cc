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
#include "graspgym/nn/params.h"

#include <cmath>

#include "common/bytes.h"

namespace graspgym::nn {

template <typename T>
int ParamStore<T>::add(const std::string& name, const Shape& shape) {
  if (find(name) >= 0) throw ContractError("duplicate parameter " + name);
  Param<T> p;
  p.name = name;
  p.value = Tensor<T>(shape);
  p.grad = Tensor<T>(shape);
  p.m = Tensor<T>(shape);
  p.v = Tensor<T>(shape);
  params_.push_back(std::move(p));
  return int(params_.size()) - 1;
}

template <typename T>
int ParamStore<T>::find(std::string_view name) const {
  for (size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return int(i);
  }
  return -1;
}

template <typename T>
void ParamStore<T>::zero_grad() {
  for (auto& p : params_) std::fill(p.grad.data.begin(), p.grad.data.end(), T(0));
}

template <typename T>
bool ParamStore<T>::same_layout(const ParamStore& other) const {
  if (other.params_.size() != params_.size()) return false;
  for (size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name != other.params_[i].name ||
        params_[i].value.shape != other.params_[i].value.shape) {
      return false;
    }
  }
  return true;
}

template <typename T>
void ParamStore<T>::copy_values_from(const ParamStore& other) {
  if (!same_layout(other)) throw ContractError("parameter layouts differ");
  for (size_t i = 0; i < params_.size(); ++i) {
    params_[i].value.data = other.params_[i].value.data;
  }
}

template <typename T>
size_t ParamStore<T>::num_values() const {
  size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

template <typename T>
template <typename U>
ParamStore<U> ParamStore<T>::cast() const {
  ParamStore<U> out;
  for (const auto& p : params_) {
    int i = out.add(p.name, p.value.shape);
    out[i].value = p.value.template cast<U>();
    out[i].grad = p.grad.template cast<U>();
    out[i].m = p.m.template cast<U>();
    out[i].v = p.v.template cast<U>();
  }
  out.step = step;
  return out;
}

template <typename T>
void adam_step(ParamStore<T>& store, const AdamConfig& cfg) {
  for (int i = 0; i < store.size(); ++i) {
    for (T g : store[i].grad.data) {
      if (!std::isfinite(double(g))) {
        throw NumericError("non-finite gradient in parameter " + store[i].name +
                           "; update rejected");
      }
    }
  }
  store.step += 1;
  const double t = double(store.step);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  const T b1 = T(cfg.beta1), b2 = T(cfg.beta2);
  const T step_size = T(cfg.lr / c1);
  const T inv_c2 = T(1.0 / c2);
  const T eps = T(cfg.eps);
  for (int i = 0; i < store.size(); ++i) {
    Param<T>& p = store[i];
    for (size_t j = 0; j < p.value.size(); ++j) {
      const T g = p.grad[j];
      p.m[j] = b1 * p.m[j] + (T(1) - b1) * g;
      p.v[j] = b2 * p.v[j] + (T(1) - b2) * g * g;
      p.value[j] -= step_size * p.m[j] / (std::sqrt(p.v[j] * inv_c2) + eps);
    }
  }
}

namespace {

constexpr std::string_view kMagic = "GQNW";

struct Record {
  std::string name;
  Shape shape;
  std::vector<float> values;
};

std::vector<Record> parse(std::string_view bytes) {
  internal::ByteReader r(bytes, "parameter file");
  if (r.raw(4) != kMagic) r.fail("bad magic");
  const uint16_t version = r.u16();
  if (version != kParamFormatVersion) {
    r.fail("unsupported version " + std::to_string(version));
  }
  const uint32_t count = r.u32();
  std::vector<Record> out;
  for (uint32_t t = 0; t < count; ++t) {
    Record rec;
    const uint16_t len = r.u16();
    rec.name = std::string(r.raw(len));
    const uint8_t rank = r.u8();
    if (rank == 0) r.fail("tensor " + rec.name + " has rank 0");
    for (uint8_t d = 0; d < rank; ++d) {
      const uint32_t dim = r.u32();
      if (dim == 0 || dim > (1u << 30)) r.fail("bad dim in tensor " + rec.name);
      rec.shape.push_back(int(dim));
    }
    const size_t n = shape_size(rec.shape);
    r.need(4 * n);
    rec.values.resize(n);
    for (size_t j = 0; j < n; ++j) rec.values[j] = r.f32();
    out.push_back(std::move(rec));
  }
  if (r.remaining() != 0) r.fail("trailing bytes");
  return out;
}

}  // namespace

template <typename T>
std::string save_params(const ParamStore<T>& store) {
  std::string out;
  internal::ByteWriter w(&out);
  w.raw(kMagic);
  w.u16(kParamFormatVersion);
  w.u32(uint32_t(store.size()));
  for (int i = 0; i < store.size(); ++i) {
    const Param<T>& p = store[i];
    w.u16(uint16_t(p.name.size()));
    w.raw(p.name);
    w.u8(uint8_t(p.value.rank()));
    for (int d : p.value.shape) w.u32(uint32_t(d));
    for (T v : p.value.data) w.f32(float(v));
  }
  return out;
}

template <typename T>
ParamStore<T> load_params(std::string_view bytes) {
  ParamStore<T> store;
  for (auto& rec : parse(bytes)) {
    int i = store.add(rec.name, rec.shape);
    store[i].value.data.assign(rec.values.begin(), rec.values.end());
  }
  return store;
}

template <typename T>
void load_params_into(ParamStore<T>& store, std::string_view bytes) {
  std::vector<Record> recs = parse(bytes);
  if (int(recs.size()) != store.size()) {
    throw FormatError("parameter file has " + std::to_string(recs.size()) +
                      " tensors, model expects " + std::to_string(store.size()));
  }
  for (size_t i = 0; i < recs.size(); ++i) {
    const Param<T>& p = store[int(i)];
    if (recs[i].name != p.name || recs[i].shape != p.value.shape) {
      throw FormatError("tensor " + std::to_string(i) + " is " + recs[i].name +
                        shape_string(recs[i].shape) + ", model expects " +
                        p.name + shape_string(p.value.shape));
    }
  }
  for (size_t i = 0; i < recs.size(); ++i) {
    store[int(i)].value.data.assign(recs[i].values.begin(), recs[i].values.end());
  }
}

template class ParamStore<float>;
template class ParamStore<double>;
template ParamStore<double> ParamStore<float>::cast<double>() const;
template ParamStore<float> ParamStore<double>::cast<float>() const;
template void adam_step(ParamStore<float>&, const AdamConfig&);
template void adam_step(ParamStore<double>&, const AdamConfig&);
template std::string save_params(const ParamStore<float>&);
template std::string save_params(const ParamStore<double>&);
template ParamStore<float> load_params(std::string_view);
template ParamStore<double> load_params(std::string_view);
template void load_params_into(ParamStore<float>&, std::string_view);
template void load_params_into(ParamStore<double>&, std::string_view);

}  // namespace graspgym::nn
