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

#ifndef CYCLESE_FEATURES_H_
#define CYCLESE_FEATURES_H_

#include <vector>

#include "cyclese/feature_sequence.h"
#include "cyclese/wav.h"

namespace cyclese {

struct FbankConfig {
  double frame_length_ms = 25.0;
  double frame_hop_ms = 10.0;
  // 0 selects the next power of two >= the window length.
  int fft_size = 0;
  int n_mels = kStaticDim;
  double fmin_hz = 20.0;
  // 0 selects the Nyquist frequency.
  double fmax_hz = 0.0;
  double floor = 1e-10;
};

// Frame geometry of a config resolved against a concrete sample rate.
struct FrameGeometry {
  int window = 0;
  int hop = 0;
  int fft_size = 0;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;
};

// Throws kConfig when the config is inconsistent with `sample_rate`.
FrameGeometry ResolveGeometry(const FbankConfig& cfg, int sample_rate);

double HzToMel(double hz);
double MelToHz(double mel);

// Center frequencies (Hz) of the n_mels triangular bands.
std::vector<double> MelBandCenters(const FbankConfig& cfg, int sample_rate);

// n_mels x (fft_size/2 + 1) triangular weights over FFT bin frequencies.
Matrix MelFilterbank(const FbankConfig& cfg, int sample_rate);

// Hamming-windowed power spectrum -> mel weighting -> log(energy + floor).
// Output has T = 1 + (N - window) / hop frames.
FeatureSequence LogMel(const Waveform& wave, const FbankConfig& cfg = {});

// Regression deltas with edge frames clamped; output columns are
// [static | delta | delta-delta].
FeatureSequence AppendDeltas(const FeatureSequence& seq, int window = 2);

// [static | delta | delta-delta] for a T x D matrix of any width.
Matrix AppendDeltaColumns(const Matrix& frames, int window = 2);

struct NormStats {
  Vector mean;
  Vector std;

  int dim() const { return static_cast<int>(mean.size()); }
  bool operator==(const NormStats& o) const {
    return mean.size() == o.mean.size() && mean == o.mean && std == o.std;
  }
};

// Pooled mean and population standard deviation over every frame of every
// sequence. Throws kDegenerate on a zero-variance dimension.
NormStats ComputeGlobalStats(const std::vector<FeatureSequence>& corpus);

FeatureSequence Normalize(const FeatureSequence& seq, const NormStats& stats);
FeatureSequence Denormalize(const FeatureSequence& seq, const NormStats& stats);

}  // namespace cyclese

#endif  // CYCLESE_FEATURES_H_
