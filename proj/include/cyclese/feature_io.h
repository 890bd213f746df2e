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

#ifndef CYCLESE_FEATURE_IO_H_
#define CYCLESE_FEATURE_IO_H_

#include <string>

#include "cyclese/feature_sequence.h"
#include "cyclese/features.h"

namespace cyclese {

// "FTR1" | u32 T | u32 D | u8 dim_kind | T*D f32, all little-endian,
// row-major. Values are narrowed to float on write.
void WriteFeatures(const std::string& path, const FeatureSequence& seq);
FeatureSequence ReadFeatures(const std::string& path);

std::string EncodeFeatures(const FeatureSequence& seq);
FeatureSequence DecodeFeatures(const std::string& bytes);

// "NRM1" | u32 D | D f64 means | D f64 stds.
void WriteNormStats(const std::string& path, const NormStats& stats);
NormStats ReadNormStats(const std::string& path);

std::string EncodeNormStats(const NormStats& stats);
NormStats DecodeNormStats(const std::string& bytes);

}  // namespace cyclese

#endif  // CYCLESE_FEATURE_IO_H_
