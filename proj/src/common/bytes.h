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
// Little-endian byte encoding shared by the binary file formats.

#ifndef GRASPGYM_COMMON_BYTES_H_
#define GRASPGYM_COMMON_BYTES_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "graspgym/errors.h"

namespace graspgym::internal {

class ByteWriter {
 public:
  explicit ByteWriter(std::string* out) : out_(out) {}

  template <typename U>
  void put_uint(U v) {
    for (size_t i = 0; i < sizeof(U); ++i) {
      out_->push_back(char((v >> (8 * i)) & 0xff));
    }
  }
  void u8(uint8_t v) { out_->push_back(char(v)); }
  void u16(uint16_t v) { put_uint(v); }
  void u32(uint32_t v) { put_uint(v); }
  void u64(uint64_t v) { put_uint(v); }
  void f32(float v) { u32(std::bit_cast<uint32_t>(v)); }
  void raw(std::string_view bytes) { out_->append(bytes); }

 private:
  std::string* out_;
};

class ByteReader {
 public:
  ByteReader(std::string_view bytes, std::string what)
      : bytes_(bytes), what_(std::move(what)) {}

  size_t offset() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

  void need(size_t n) const {
    if (remaining() < n) {
      throw FormatError(what_ + ": truncated at byte offset " +
                        std::to_string(pos_) + " (need " + std::to_string(n) +
                        " bytes, have " + std::to_string(remaining()) + ")");
    }
  }
  template <typename U>
  U get_uint() {
    need(sizeof(U));
    U v = 0;
    for (size_t i = 0; i < sizeof(U); ++i) {
      v |= U(uint8_t(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(U);
    return v;
  }
  uint8_t u8() { return get_uint<uint8_t>(); }
  uint16_t u16() { return get_uint<uint16_t>(); }
  uint32_t u32() { return get_uint<uint32_t>(); }
  uint64_t u64() { return get_uint<uint64_t>(); }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string_view raw(size_t n) {
    need(n);
    std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw FormatError(what_ + ": " + msg + " at byte offset " +
                      std::to_string(pos_));
  }

 private:
  std::string_view bytes_;
  std::string what_;
  size_t pos_ = 0;
};

}  // namespace graspgym::internal

#endif  // GRASPGYM_COMMON_BYTES_H_
