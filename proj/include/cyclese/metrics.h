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

#ifndef CYCLESE_METRICS_H_
#define CYCLESE_METRICS_H_

#include "cyclese/feature_sequence.h"

namespace cyclese {

inline constexpr double kSegSnrFloorDb = -10.0;
inline constexpr double kSegSnrCeilingDb = 35.0;

// All three compare equal-shape log-mel sequences (natural-log band
// energies), enhanced first, reference second.

// (1/T) sum_t ||e_t - c_t||^2.
double FrameMse(const FeatureSequence& enhanced, const FeatureSequence& clean);

// Per frame, on band magnitudes m = exp(lfb / 2):
//   10 log10(sum m_clean^2 / sum (m_clean - m_enh)^2)
// clamped to [-10, 35] dB (an exact match scores the ceiling), averaged
// over frames.
double SegmentalSnr(const FeatureSequence& enhanced, const FeatureSequence& clean);

// Per frame RMS over bands of the dB difference 10 log10(e) - 10 log10(c),
// averaged over frames.
double LogSpectralDistance(const FeatureSequence& enhanced, const FeatureSequence& clean);

}  // namespace cyclese

#endif  // CYCLESE_METRICS_H_
