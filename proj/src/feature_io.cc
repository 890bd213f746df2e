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

#include "cyclese/feature_io.h"

#include <fstream>
#include <iterator>

#include "cyclese/byte_io.h"
#include "cyclese/error.h"

namespace cyclese {

namespace byte_io {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

}  // namespace byte_io

std::string EncodeFeatures(const FeatureSequence& seq) {
  std::string out = "FTR1";
  byte_io::PutU32(&out, static_cast<std::uint32_t>(seq.num_frames()));
  byte_io::PutU32(&out, static_cast<std::uint32_t>(seq.dim()));
  byte_io::PutU8(&out, static_cast<std::uint8_t>(seq.kind()));
  out.reserve(out.size() + 4 * seq.num_frames() * seq.dim());
  for (int t = 0; t < seq.num_frames(); ++t) {
    for (int d = 0; d < seq.dim(); ++d) {
      byte_io::PutF32(&out, static_cast<float>(seq.data()(t, d)));
    }
  }
  return out;
}

FeatureSequence DecodeFeatures(const std::string& bytes) {
  byte_io::Reader in(bytes, "FTR1");
  in.ExpectMagic("FTR1");
  const std::uint32_t frames = in.U32();
  const std::uint32_t dim = in.U32();
  const std::uint8_t code = in.U8();
  if (code > 2) throw Error(ErrorCode::kFormat, "FTR1: unknown dim_kind code");
  if (bytes.size() != 13 + 4ull * frames * dim) {
    throw Error(ErrorCode::kFormat, "FTR1: payload size disagrees with header");
  }
  Matrix data(frames, dim);
  for (std::uint32_t t = 0; t < frames; ++t) {
    for (std::uint32_t d = 0; d < dim; ++d) data(t, d) = in.F32();
  }
  return FeatureSequence(std::move(data), static_cast<DimKind>(code));
}

void WriteFeatures(const std::string& path, const FeatureSequence& seq) {
  byte_io::WriteFile(path, EncodeFeatures(seq));
}

FeatureSequence ReadFeatures(const std::string& path) {
  return DecodeFeatures(byte_io::ReadFile(path));
}

std::string EncodeNormStats(const NormStats& stats) {
  std::string out = "NRM1";
  byte_io::PutU32(&out, static_cast<std::uint32_t>(stats.dim()));
  for (int d = 0; d < stats.dim(); ++d) byte_io::PutF64(&out, stats.mean[d]);
  for (int d = 0; d < stats.dim(); ++d) byte_io::PutF64(&out, stats.std[d]);
  return out;
}

NormStats DecodeNormStats(const std::string& bytes) {
  byte_io::Reader in(bytes, "NRM1");
  in.ExpectMagic("NRM1");
  const std::uint32_t dim = in.U32();
  NormStats stats;
  stats.mean.resize(dim);
  stats.std.resize(dim);
  for (std::uint32_t d = 0; d < dim; ++d) stats.mean[d] = in.F64();
  for (std::uint32_t d = 0; d < dim; ++d) stats.std[d] = in.F64();
  in.ExpectEnd();
  for (std::uint32_t d = 0; d < dim; ++d) {
    if (!(stats.std[d] > 0)) throw Error(ErrorCode::kFormat, "NRM1: std must be > 0");
  }
  return stats;
}

void WriteNormStats(const std::string& path, const NormStats& stats) {
  byte_io::WriteFile(path, EncodeNormStats(stats));
}

NormStats ReadNormStats(const std::string& path) {
  return DecodeNormStats(byte_io::ReadFile(path));
}

}  // namespace cyclese
