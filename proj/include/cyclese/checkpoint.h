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

#ifndef CYCLESE_CHECKPOINT_H_
#define CYCLESE_CHECKPOINT_H_

#include <cstdint>
#include <string>

#include "cyclese/trainer.h"

namespace cyclese {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// "CKP1" | u32 version | u32 record count | records. Each record is
//   u8 type | u32 name length | name | payload
// with payloads
//   tensor (1): u32 rank | rank x u32 dims | f64 values, row-major
//   bytes  (2): u32 length | bytes
//   u64    (3), f64 (4): one little-endian value.
// Records cover network specs and parameters, optimizer hyperparameters and
// velocities, both streams' normalization stats, the RNG state and the
// epoch counter. Encoding is deterministic, so save -> load -> save yields
// identical bytes.
std::string EncodeCheckpoint(const TrainState& state);
TrainState DecodeCheckpoint(const std::string& bytes);

void SaveCheckpoint(const std::string& path, const TrainState& state);
TrainState LoadCheckpoint(const std::string& path);

}  // namespace cyclese

#endif  // CYCLESE_CHECKPOINT_H_
