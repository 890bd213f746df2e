// Copyright 2026 The CycleSE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLESE_BYTE_IO_H_
#define CYCLESE_BYTE_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <utility>

#include "cyclese/error.h"

// Little-endian primitive encoding shared by the binary file formats.
namespace cyclese::byte_io {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

inline void PutU8(std::string* out, std::uint8_t v) { out->push_back(static_cast<char>(v)); }

inline void PutU32(std::string* out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out->append(buf, 4);
}

inline void PutU64(std::string* out, std::uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out->append(buf, 8);
}

inline void PutF32(std::string* out, float v) { PutU32(out, std::bit_cast<std::uint32_t>(v)); }
inline void PutF64(std::string* out, double v) { PutU64(out, std::bit_cast<std::uint64_t>(v)); }

inline void PutBytes(std::string* out, const std::string& s) {
  PutU32(out, static_cast<std::uint32_t>(s.size()));
  out->append(s);
}

class Reader {
 public:
  Reader(const std::string& bytes, std::string what)
      : bytes_(bytes), what_(std::move(what)) {}

  void ExpectMagic(const char* magic) {
    if (bytes_.size() < 4 || std::memcmp(bytes_.data(), magic, 4) != 0) {
      throw Error(ErrorCode::kFormat, what_ + ": bad magic, expected " + magic);
    }
    pos_ = 4;
  }

  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v;
    std::memcpy(&v, bytes_.data() + pos_, 4);
    pos_ += 4;
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v;
    std::memcpy(&v, bytes_.data() + pos_, 8);
    pos_ += 8;
    return v;
  }
  float F32() { return std::bit_cast<float>(U32()); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Bytes() {
    const std::uint32_t n = U32();
    Need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool AtEnd() const { return pos_ == bytes_.size(); }
  void ExpectEnd() const {
    if (!AtEnd()) throw Error(ErrorCode::kFormat, what_ + ": trailing bytes");
  }

 private:
  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::kFormat, what_ + ": truncated");
  }

  const std::string& bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& bytes);

}  // namespace cyclese::byte_io

#endif  // CYCLESE_BYTE_IO_H_
