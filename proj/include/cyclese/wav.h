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

#ifndef CYCLESE_WAV_H_
#define CYCLESE_WAV_H_

#include <string>
#include <vector>

namespace cyclese {

struct Waveform {
  std::vector<double> samples;  // nominally in [-1, 1]
  int sample_rate = 16000;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Throws kData on non-finite samples or a non-positive rate.
void ValidateWaveform(const Waveform& wave);

// Mono 16-bit PCM little-endian only. Samples are divided by 32768.
Waveform ReadWav(const std::string& path);

// Writes mono 16-bit PCM, rounding to nearest and saturating at the
// int16 range.
void WriteWav(const std::string& path, const Waveform& wave);

}  // namespace cyclese

#endif  // CYCLESE_WAV_H_
