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

#include "cyclese/feature_bridge.h"

#include <utility>

#include "cyclese/error.h"

namespace cyclese {

FeatureBridge::FeatureBridge(NormStats noisy, NormStats clean, int delta_window)
    : noisy_(std::move(noisy)), clean_(std::move(clean)), delta_window_(delta_window) {
  if (noisy_->dim() != kAugmentedDim || clean_->dim() != kStaticDim) {
    throw Error(ErrorCode::kDimension, "bridge needs 87-dim noisy and 29-dim clean stats");
  }
}

Matrix FeatureBridge::NoisyToClean(const Matrix& noisy) const {
  if (!noisy_) {
    if (noisy.cols() % 3 != 0) {
      throw Error(ErrorCode::kDimension, "noisy frames must hold static, delta and delta-delta blocks");
    }
    return noisy.leftCols(noisy.cols() / 3);
  }
  const FeatureSequence seq = Denormalize(FeatureSequence(noisy, DimKind::kAugmented87), *noisy_);
  return Normalize(StaticSlice(seq), *clean_).data();
}

Matrix FeatureBridge::CleanToNoisy(const Matrix& clean) const {
  if (!clean_) return AppendDeltaColumns(clean, delta_window_);
  const FeatureSequence seq = Denormalize(FeatureSequence(clean, DimKind::kStatic29), *clean_);
  return Normalize(AppendDeltas(seq, delta_window_), *noisy_).data();
}

}  // namespace cyclese
