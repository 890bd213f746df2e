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

#include "cyclese/feature_sequence.h"

#include <string>
#include <utility>

#include "cyclese/error.h"

namespace cyclese {

FeatureSequence::FeatureSequence(Matrix data, DimKind kind)
    : data_(std::move(data)), kind_(kind) {
  if (data_.rows() < 1) {
    throw Error(ErrorCode::kData, "feature sequence must have T >= 1");
  }
  if (kind_ == DimKind::kStatic29 && data_.cols() != kStaticDim) {
    throw Error(ErrorCode::kDimension,
                "static29 sequence has " + std::to_string(data_.cols()) +
                    " columns");
  }
  if (kind_ == DimKind::kAugmented87 && data_.cols() != kAugmentedDim) {
    throw Error(ErrorCode::kDimension,
                "augmented87 sequence has " + std::to_string(data_.cols()) +
                    " columns");
  }
  if (!data_.allFinite()) {
    throw Error(ErrorCode::kData, "feature sequence has non-finite entries");
  }
}

FeatureSequence FeatureSequence::FromMatrix(Matrix data) {
  DimKind kind = DimKind::kArbitrary;
  if (data.cols() == kStaticDim) kind = DimKind::kStatic29;
  if (data.cols() == kAugmentedDim) kind = DimKind::kAugmented87;
  return FeatureSequence(std::move(data), kind);
}

FeatureSequence StaticSlice(const FeatureSequence& augmented) {
  if (augmented.dim() != kAugmentedDim) {
    throw Error(ErrorCode::kDimension,
                "static slice needs an 87-dim sequence, got " +
                    std::to_string(augmented.dim()));
  }
  return FeatureSequence(augmented.data().leftCols(kStaticDim),
                         DimKind::kStatic29);
}

}  // namespace cyclese
