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

#include "cyclese/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cyclese/error.h"

namespace cyclese {
namespace {

void CheckShapes(const FeatureSequence& a, const FeatureSequence& b) {
  if (a.num_frames() != b.num_frames() || a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimension, "metric operands have different shapes");
  }
}

}  // namespace

double FrameMse(const FeatureSequence& enhanced, const FeatureSequence& clean) {
  CheckShapes(enhanced, clean);
  return (enhanced.data() - clean.data()).squaredNorm() / enhanced.num_frames();
}

double SegmentalSnr(const FeatureSequence& enhanced, const FeatureSequence& clean) {
  CheckShapes(enhanced, clean);
  const Matrix ref = (0.5 * clean.data().array()).exp();
  const Matrix est = (0.5 * enhanced.data().array()).exp();
  double sum = 0.0;
  for (int t = 0; t < clean.num_frames(); ++t) {
    const double signal = ref.row(t).squaredNorm();
    const double noise = (ref.row(t) - est.row(t)).squaredNorm();
    double snr = kSegSnrCeilingDb;
    if (noise > 0.0) snr = 10.0 * std::log10(signal / noise);
    sum += std::clamp(snr, kSegSnrFloorDb, kSegSnrCeilingDb);
  }
  return sum / clean.num_frames();
}

double LogSpectralDistance(const FeatureSequence& enhanced, const FeatureSequence& clean) {
  CheckShapes(enhanced, clean);
  // Natural-log energies to dB.
  const double to_db = 10.0 / std::numbers::ln10;
  double sum = 0.0;
  for (int t = 0; t < clean.num_frames(); ++t) {
    const double ms = (to_db * (enhanced.data().row(t) - clean.data().row(t))).squaredNorm() /
                      clean.dim();
    sum += std::sqrt(ms);
  }
  return sum / clean.num_frames();
}

}  // namespace cyclese
