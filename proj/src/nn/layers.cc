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
#include "graspgym/nn/layers.h"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace graspgym::nn {

namespace {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using CMapMat = Eigen::Map<const Mat<T>>;

using Kind = LayerSpec::Kind;

// Eigen picks its vectorized summation order from buffer alignment, and
// std::vector storage is not over-aligned. Products therefore run on owned
// (aligned) copies so results do not depend on where the heap placed data.
template <typename T>
Mat<T> owned(const T* p, int rows, int cols) {
  return CMapMat<T>(p, rows, cols);
}

template <typename T>
void add_into(T* dst, const Mat<T>& m) {
  const T* src = m.data();
  for (Eigen::Index j = 0; j < m.size(); ++j) dst[j] += src[j];
}

int conv_out(int in, int k, int s, int p) { return (in + 2 * p - k) / s + 1; }

Shape sample_shape(const Shape& batched) {
  return Shape(batched.begin() + 1, batched.end());
}

// cols: (C*k*k) x (B*Ho*Wo)
template <typename T>
void im2col(const T* x, int B, int C, int H, int W, int k, int s, int p, int Ho,
            int Wo, T* cols) {
  const size_t ncol = size_t(B) * Ho * Wo;
  for (int c = 0; c < C; ++c) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        T* row = cols + (size_t(c * k + ky) * k + kx) * ncol;
        for (int b = 0; b < B; ++b) {
          const T* xc = x + (size_t(b) * C + c) * H * W;
          T* rb = row + size_t(b) * Ho * Wo;
          for (int oy = 0; oy < Ho; ++oy) {
            const int iy = oy * s - p + ky;
            T* r = rb + oy * Wo;
            if (iy < 0 || iy >= H) {
              std::fill(r, r + Wo, T(0));
              continue;
            }
            for (int ox = 0; ox < Wo; ++ox) {
              const int ix = ox * s - p + kx;
              r[ox] = (ix >= 0 && ix < W) ? xc[iy * W + ix] : T(0);
            }
          }
        }
      }
    }
  }
}

template <typename T>
void col2im(const T* cols, int B, int C, int H, int W, int k, int s, int p,
            int Ho, int Wo, T* dx) {
  const size_t ncol = size_t(B) * Ho * Wo;
  for (int c = 0; c < C; ++c) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const T* row = cols + (size_t(c * k + ky) * k + kx) * ncol;
        for (int b = 0; b < B; ++b) {
          T* xc = dx + (size_t(b) * C + c) * H * W;
          const T* rb = row + size_t(b) * Ho * Wo;
          for (int oy = 0; oy < Ho; ++oy) {
            const int iy = oy * s - p + ky;
            if (iy < 0 || iy >= H) continue;
            const T* r = rb + oy * Wo;
            for (int ox = 0; ox < Wo; ++ox) {
              const int ix = ox * s - p + kx;
              if (ix >= 0 && ix < W) xc[iy * W + ix] += r[ox];
            }
          }
        }
      }
    }
  }
}

}  // namespace

void LayerSpec::validate() const {
  switch (kind) {
    case Kind::kConv2d:
      if (out < 1 || kernel < 1 || stride < 1 || padding < 0) {
        throw ConfigError("conv2d needs out, kernel, stride >= 1 and padding >= 0");
      }
      break;
    case Kind::kLinear:
      if (out < 1) throw ConfigError("linear needs out_features >= 1");
      break;
    case Kind::kDropout:
      if (!(p >= 0.0 && p < 1.0)) throw ConfigError("dropout p must lie in [0, 1)");
      break;
    default:
      break;
  }
}

std::string to_string(LayerSpec::Kind kind) {
  switch (kind) {
    case Kind::kConv2d: return "conv2d";
    case Kind::kLinear: return "linear";
    case Kind::kReLU: return "relu";
    case Kind::kDropout: return "dropout";
    case Kind::kFlatten: return "flatten";
    case Kind::kConcat: return "concat";
  }
  return "?";
}

LayerSpec::Kind layer_kind_from_string(const std::string& s) {
  for (Kind k : {Kind::kConv2d, Kind::kLinear, Kind::kReLU, Kind::kDropout,
                 Kind::kFlatten, Kind::kConcat}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown layer kind '" + s + "'");
}

template <typename T>
Sequential<T>::Sequential(std::vector<LayerSpec> specs, Shape input_shape,
                          ParamStore<T>& store, const std::string& prefix)
    : specs_(std::move(specs)), input_shape_(std::move(input_shape)) {
  Shape cur = input_shape_;
  for (size_t i = 0; i < specs_.size(); ++i) {
    const LayerSpec& l = specs_[i];
    l.validate();
    shapes_.push_back(cur);
    const std::string base = prefix + "." + std::to_string(i);
    std::pair<int, int> idx{-1, -1};
    switch (l.kind) {
      case Kind::kConv2d: {
        if (cur.size() != 3) throw ContractError("conv2d expects [C,H,W] input");
        const int ho = conv_out(cur[1], l.kernel, l.stride, l.padding);
        const int wo = conv_out(cur[2], l.kernel, l.stride, l.padding);
        if (ho < 1 || wo < 1) throw ContractError("conv2d output would be empty");
        idx.first = store.add(base + ".weight", {l.out, cur[0], l.kernel, l.kernel});
        idx.second = store.add(base + ".bias", {l.out});
        cur = {l.out, ho, wo};
        break;
      }
      case Kind::kLinear:
        if (cur.size() != 1) throw ContractError("linear expects flat input");
        idx.first = store.add(base + ".weight", {l.out, cur[0]});
        idx.second = store.add(base + ".bias", {l.out});
        cur = {l.out};
        break;
      case Kind::kFlatten:
        cur = {int(shape_size(cur))};
        break;
      case Kind::kConcat:
        throw ContractError("concat takes two inputs; use concat_features");
      default:
        break;
    }
    params_.push_back(idx);
  }
  shapes_.push_back(cur);
  output_shape_ = cur;
  cache_.resize(specs_.size());
}

template <typename T>
Tensor<T> Sequential<T>::forward(const ParamStore<T>& store, const Tensor<T>& x,
                                 Mode mode, Rng* rng) {
  if (x.rank() != int(input_shape_.size()) + 1 || sample_shape(x.shape) != input_shape_) {
    throw ContractError("input shape " + shape_string(x.shape) +
                        " does not match [batch]" + shape_string(input_shape_));
  }
  const int B = x.dim(0);
  Tensor<T> cur = x;
  for (size_t i = 0; i < specs_.size(); ++i) {
    const LayerSpec& l = specs_[i];
    Cache& c = cache_[i];
    const Shape& in = shapes_[i];
    const Shape& out_s = shapes_[i + 1];
    Shape out_shape{B};
    out_shape.insert(out_shape.end(), out_s.begin(), out_s.end());
    switch (l.kind) {
      case Kind::kConv2d: {
        const int C = in[0], H = in[1], W = in[2];
        const int O = out_s[0], Ho = out_s[1], Wo = out_s[2];
        const int K = C * l.kernel * l.kernel;
        const int N = B * Ho * Wo;
        c.cols.resize(size_t(K) * N);
        im2col(cur.ptr(), B, C, H, W, l.kernel, l.stride, l.padding, Ho, Wo,
               c.cols.data());
        const Mat<T> wm = owned(store[params_[i].first].value.ptr(), O, K);
        const Mat<T> cols = owned(c.cols.data(), K, N);
        const Mat<T> y = wm * cols;
        const T* bias = store[params_[i].second].value.ptr();
        Tensor<T> out(out_shape);
        const int HWo = Ho * Wo;
        for (int b = 0; b < B; ++b) {
          for (int o = 0; o < O; ++o) {
            const T* src = y.data() + size_t(o) * N + size_t(b) * HWo;
            T* dst = out.ptr() + (size_t(b) * O + o) * HWo;
            for (int j = 0; j < HWo; ++j) dst[j] = src[j] + bias[o];
          }
        }
        cur = std::move(out);
        break;
      }
      case Kind::kLinear: {
        c.input = cur;
        const int I = in[0], O = out_s[0];
        const Mat<T> xm = owned(cur.ptr(), B, I);
        const Mat<T> wm = owned(store[params_[i].first].value.ptr(), O, I);
        const Mat<T> ym = xm * wm.transpose();
        const T* bias = store[params_[i].second].value.ptr();
        Tensor<T> out(out_shape);
        for (int b = 0; b < B; ++b)
          for (int o = 0; o < O; ++o) out[size_t(b) * O + o] = ym(b, o) + bias[o];
        cur = std::move(out);
        break;
      }
      case Kind::kReLU:
        c.input = cur;
        for (T& v : cur.data) v = v > T(0) ? v : T(0);
        break;
      case Kind::kDropout:
        c.mask.clear();
        if (mode == Mode::kTrain && l.p > 0.0) {
          if (rng == nullptr) throw ContractError("train-mode dropout needs an rng");
          const T scale = T(1.0 / (1.0 - l.p));
          c.mask.resize(cur.size());
          for (size_t j = 0; j < cur.size(); ++j) {
            c.mask[j] = rng->bernoulli(l.p) ? T(0) : scale;
            cur[j] *= c.mask[j];
          }
        }
        break;
      case Kind::kFlatten:
        cur.shape = out_shape;
        break;
      case Kind::kConcat:
        break;
    }
  }
  cached_ = true;
  return cur;
}

template <typename T>
Tensor<T> Sequential<T>::backward(ParamStore<T>& store, const Tensor<T>& grad_out) {
  if (!cached_) throw ProtocolError("backward called without a forward cache");
  if (grad_out.rank() < 1 || sample_shape(grad_out.shape) != output_shape_) {
    throw ContractError("output gradient shape " + shape_string(grad_out.shape) +
                        " does not match [batch]" + shape_string(output_shape_));
  }
  cached_ = false;
  const int B = grad_out.dim(0);
  Tensor<T> g = grad_out;
  for (size_t ii = specs_.size(); ii-- > 0;) {
    const LayerSpec& l = specs_[ii];
    Cache& c = cache_[ii];
    const Shape& in = shapes_[ii];
    const Shape& out_s = shapes_[ii + 1];
    Shape in_shape{B};
    in_shape.insert(in_shape.end(), in.begin(), in.end());
    switch (l.kind) {
      case Kind::kConv2d: {
        const int C = in[0], H = in[1], W = in[2];
        const int O = out_s[0], Ho = out_s[1], Wo = out_s[2];
        const int K = C * l.kernel * l.kernel;
        const int N = B * Ho * Wo;
        const int HWo = Ho * Wo;
        if (c.cols.size() != size_t(K) * N) {
          throw ContractError("gradient batch differs from the cached forward");
        }
        Mat<T> go(O, N);
        T* db = store[params_[ii].second].grad.ptr();
        for (int b = 0; b < B; ++b) {
          for (int o = 0; o < O; ++o) {
            const T* src = g.ptr() + (size_t(b) * O + o) * HWo;
            T* dst = go.data() + size_t(o) * N + size_t(b) * HWo;
            T acc = T(0);
            for (int j = 0; j < HWo; ++j) {
              dst[j] = src[j];
              acc += src[j];
            }
            db[o] += acc;
          }
        }
        const Mat<T> cols = owned(c.cols.data(), K, N);
        add_into(store[params_[ii].first].grad.ptr(), Mat<T>(go * cols.transpose()));
        const Mat<T> wm = owned(store[params_[ii].first].value.ptr(), O, K);
        const Mat<T> dcols = wm.transpose() * go;
        Tensor<T> dx(in_shape);
        col2im(dcols.data(), B, C, H, W, l.kernel, l.stride, l.padding, Ho, Wo,
               dx.ptr());
        g = std::move(dx);
        break;
      }
      case Kind::kLinear: {
        const int I = in[0], O = out_s[0];
        const Mat<T> gm = owned(g.ptr(), B, O);
        const Mat<T> xm = owned(c.input.ptr(), B, I);
        add_into(store[params_[ii].first].grad.ptr(), Mat<T>(gm.transpose() * xm));
        T* db = store[params_[ii].second].grad.ptr();
        for (int o = 0; o < O; ++o) {
          T acc = T(0);
          for (int b = 0; b < B; ++b) acc += gm(b, o);
          db[o] += acc;
        }
        const Mat<T> wm = owned(store[params_[ii].first].value.ptr(), O, I);
        const Mat<T> dxm = gm * wm;
        Tensor<T> dx(in_shape);
        std::copy(dxm.data(), dxm.data() + dxm.size(), dx.ptr());
        g = std::move(dx);
        break;
      }
      case Kind::kReLU:
        for (size_t j = 0; j < g.size(); ++j) {
          if (!(c.input[j] > T(0))) g[j] = T(0);
        }
        break;
      case Kind::kDropout:
        if (!c.mask.empty()) {
          for (size_t j = 0; j < g.size(); ++j) g[j] *= c.mask[j];
        }
        break;
      case Kind::kFlatten:
        g.shape = in_shape;
        break;
      case Kind::kConcat:
        break;
    }
  }
  return g;
}

template <typename T>
Tensor<T> concat_features(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(0) != b.dim(0)) {
    throw ContractError("concat expects two [batch, n] tensors with equal batch");
  }
  const int B = a.dim(0), na = a.dim(1), nb = b.dim(1);
  Tensor<T> out({B, na + nb});
  for (int r = 0; r < B; ++r) {
    std::copy_n(a.ptr() + size_t(r) * na, na, out.ptr() + size_t(r) * (na + nb));
    std::copy_n(b.ptr() + size_t(r) * nb, nb, out.ptr() + size_t(r) * (na + nb) + na);
  }
  return out;
}

template <typename T>
std::pair<Tensor<T>, Tensor<T>> split_features(const Tensor<T>& g, int n_a) {
  if (g.rank() != 2 || n_a < 1 || n_a >= g.dim(1)) {
    throw ContractError("split expects [batch, n] with 0 < n_a < n");
  }
  const int B = g.dim(0), n = g.dim(1), nb = n - n_a;
  Tensor<T> a({B, n_a}), b({B, nb});
  for (int r = 0; r < B; ++r) {
    std::copy_n(g.ptr() + size_t(r) * n, n_a, a.ptr() + size_t(r) * n_a);
    std::copy_n(g.ptr() + size_t(r) * n + n_a, nb, b.ptr() + size_t(r) * nb);
  }
  return {std::move(a), std::move(b)};
}

template <typename T>
void init_uniform(ParamStore<T>& store, int index, double bound, Rng& rng) {
  for (T& v : store[index].value.data) v = T(rng.uniform(-bound, bound));
}

template class Sequential<float>;
template class Sequential<double>;
template Tensor<float> concat_features(const Tensor<float>&, const Tensor<float>&);
template Tensor<double> concat_features(const Tensor<double>&, const Tensor<double>&);
template std::pair<Tensor<float>, Tensor<float>> split_features(const Tensor<float>&, int);
template std::pair<Tensor<double>, Tensor<double>> split_features(const Tensor<double>&, int);
template void init_uniform(ParamStore<float>&, int, double, Rng&);
template void init_uniform(ParamStore<double>&, int, double, Rng&);

}  // namespace graspgym::nn
