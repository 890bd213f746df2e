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

#ifndef CYCLESE_SYNTH_H_
#define CYCLESE_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cyclese/wav.h"

namespace cyclese {

// Speech-like test signal: 3-8 harmonics of a slowly drifting 80-300 Hz
// fundamental, shaped into syllables separated by silent gaps, peak
// normalized to 0.5.
Waveform SynthClean(std::uint64_t seed, double duration_s, int sample_rate = 16000);

enum class NoiseKind { kWhite, kPink, kRumble };

const char* NoiseKindName(NoiseKind kind);
NoiseKind ParseNoiseKind(const std::string& name);

// Unit-power noise of the given kind.
Waveform MakeNoise(NoiseKind kind, std::uint64_t seed, std::size_t num_samples,
                   int sample_rate = 16000);

struct MixResult {
  Waveform mixture;                 // clean + scaled noise, clipped to [-1, 1]
  std::vector<double> scaled_noise;  // the noise actually added, before clipping
  double clip_fraction = 0.0;
};

// Scales `noise` so that 10 log10(P_clean / P_noise) = snr_db and adds it.
// Warns on stderr when more than 0.1% of samples clip.
MixResult MixAtSnr(const Waveform& clean, const Waveform& noise, double snr_db);

double MeanPower(const std::vector<double>& x);

}  // namespace cyclese

#endif  // CYCLESE_SYNTH_H_
