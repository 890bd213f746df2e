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

#ifndef CYCLESE_FEATURE_SEQUENCE_H_
#define CYCLESE_FEATURE_SEQUENCE_H_

#include <cstdint>

#include <Eigen/Dense>

namespace cyclese {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr int kStaticDim = 29;
inline constexpr int kAugmentedDim = 3 * kStaticDim;

enum class DimKind : std::uint8_t {
  kStatic29 = 0,
  kAugmented87 = 1,
  kArbitrary = 2,
};

// T x D matrix of per-frame features, one frame per row.
class FeatureSequence {
 public:
  FeatureSequence() = default;
  // Throws kDimension if `kind` disagrees with the column count, kData if
  // the sequence is empty or holds a non-finite entry.
  FeatureSequence(Matrix data, DimKind kind);

  // Picks kStatic29 / kAugmented87 from the column count, else kArbitrary.
  static FeatureSequence FromMatrix(Matrix data);

  const Matrix& data() const { return data_; }
  DimKind kind() const { return kind_; }
  int num_frames() const { return static_cast<int>(data_.rows()); }
  int dim() const { return static_cast<int>(data_.cols()); }

  bool operator==(const FeatureSequence& other) const {
    return kind_ == other.kind_ && data_.rows() == other.data_.rows() &&
           data_.cols() == other.data_.cols() && data_ == other.data_;
  }

 private:
  Matrix data_;
  DimKind kind_ = DimKind::kArbitrary;
};

// First kStaticDim columns of an augmented sequence.
FeatureSequence StaticSlice(const FeatureSequence& augmented);

}  // namespace cyclese

#endif  // CYCLESE_FEATURE_SEQUENCE_H_
