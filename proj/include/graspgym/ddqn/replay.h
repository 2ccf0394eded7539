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
#ifndef GRASPGYM_DDQN_REPLAY_H_
#define GRASPGYM_DDQN_REPLAY_H_

#include <cstddef>
#include <vector>

#include "graspgym/errors.h"
#include "graspgym/rng.h"

namespace graspgym::ddqn {

// Fixed-capacity ring buffer with i.i.d. uniform index sampling.
template <typename Tr>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ConfigError("replay capacity must be positive");
    items_.reserve(capacity);
  }

  void push(Tr t) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(t));
    } else {
      items_[head_] = std::move(t);
    }
    head_ = (head_ + 1) % capacity_;
  }

  size_t size() const { return items_.size(); }
  size_t capacity() const { return capacity_; }
  const Tr& operator[](size_t i) const { return items_[i]; }

  // Indices drawn with replacement.
  std::vector<size_t> sample(Rng& rng, size_t n) const {
    if (items_.empty()) throw ProtocolError("cannot sample an empty replay buffer");
    std::vector<size_t> idx(n);
    for (auto& i : idx) i = size_t(rng.uniform_int(0, int(items_.size()) - 1));
    return idx;
  }

 private:
  size_t capacity_;
  size_t head_ = 0;
  std::vector<Tr> items_;
};

}  // namespace graspgym::ddqn

#endif  // GRASPGYM_DDQN_REPLAY_H_
