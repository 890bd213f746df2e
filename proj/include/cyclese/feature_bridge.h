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

#ifndef CYCLESE_FEATURE_BRIDGE_H_
#define CYCLESE_FEATURE_BRIDGE_H_

#include <optional>

#include "cyclese/feature_sequence.h"
#include "cyclese/features.h"

namespace cyclese {

// Moves normalized frames between the noisy (87-dim) and clean (29-dim)
// feature spaces without a network:
//   noisy -> clean input: take the static 29 columns
//   clean -> noisy input: append regression deltas
// With stats attached, each hop de-normalizes with the source stream's
// stats, transforms raw features and re-normalizes with the destination
// stream's stats. Without stats the transforms act on values directly and
// accept any width: 3k columns map to the first k and back.
class FeatureBridge {
 public:
  FeatureBridge() = default;
  FeatureBridge(NormStats noisy, NormStats clean, int delta_window = 2);

  // T x 87 -> T x 29.
  Matrix NoisyToClean(const Matrix& noisy) const;
  // T x 29 -> T x 87.
  Matrix CleanToNoisy(const Matrix& clean) const;

  bool has_stats() const { return noisy_.has_value(); }

 private:
  std::optional<NormStats> noisy_;
  std::optional<NormStats> clean_;
  int delta_window_ = 2;
};

}  // namespace cyclese

#endif  // CYCLESE_FEATURE_BRIDGE_H_
