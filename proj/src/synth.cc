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

#include "cyclese/synth.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "cyclese/error.h"

namespace cyclese {

Waveform SynthClean(std::uint64_t seed, double duration_s, int sample_rate) {
  if (!(duration_s > 0) || sample_rate <= 0) {
    throw Error(ErrorCode::kConfig, "synthetic duration and rate must be positive");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  const int harmonics = std::uniform_int_distribution<int>(3, 8)(rng);
  const double f0_base = uniform(100.0, 220.0);
  const double drift_hz = uniform(0.5, 2.0);
  const double drift_phase = uniform(0.0, 2.0 * std::numbers::pi);

  Waveform wave;
  wave.sample_rate = sample_rate;
  wave.samples.assign(n, 0.0);

  std::vector<double> weights(harmonics);
  double phase = 0.0;
  std::size_t pos = 0;
  while (pos < n) {
    pos += static_cast<std::size_t>(uniform(0.05, 0.2) * sample_rate);  // silence
    const auto len = static_cast<std::size_t>(uniform(0.1, 0.35) * sample_rate);
    const double gain = uniform(0.5, 1.0);
    for (int h = 0; h < harmonics; ++h) {
      weights[h] = uniform(0.2, 1.0) / std::pow(h + 1.0, 0.7);
    }
    for (std::size_t k = 0; k < len && pos + k < n; ++k) {
      const double t = static_cast<double>(pos + k) / sample_rate;
      const double f0 = std::clamp(
          f0_base * (1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * drift_hz * t + drift_phase)),
          80.0, 300.0);
      phase += 2.0 * std::numbers::pi * f0 / sample_rate;
      const double env = std::pow(std::sin(std::numbers::pi * k / len), 2.0);
      double s = 0.0;
      for (int h = 0; h < harmonics; ++h) s += weights[h] * std::sin((h + 1) * phase);
      wave.samples[pos + k] = gain * env * s;
    }
    pos += len;
  }

  double peak = 0.0;
  for (double s : wave.samples) peak = std::max(peak, std::abs(s));
  if (peak > 0.0) {
    for (double& s : wave.samples) s *= 0.5 / peak;
  }
  return wave;
}

const char* NoiseKindName(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kWhite: return "white";
    case NoiseKind::kPink: return "pink";
    case NoiseKind::kRumble: return "rumble";
  }
  return "unknown";
}

NoiseKind ParseNoiseKind(const std::string& name) {
  if (name == "white") return NoiseKind::kWhite;
  if (name == "pink") return NoiseKind::kPink;
  if (name == "rumble" || name == "lowpass-rumble") return NoiseKind::kRumble;
  throw Error(ErrorCode::kConfig, "unknown noise kind '" + name + "'");
}

double MeanPower(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v * v;
  return s / static_cast<double>(x.size());
}

Waveform MakeNoise(NoiseKind kind, std::uint64_t seed, std::size_t num_samples,
                   int sample_rate) {
  if (num_samples == 0) throw Error(ErrorCode::kConfig, "noise length must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Waveform noise;
  noise.sample_rate = sample_rate;
  noise.samples.resize(num_samples);
  switch (kind) {
    case NoiseKind::kWhite:
      for (double& s : noise.samples) s = gauss(rng);
      break;
    case NoiseKind::kPink: {
      // Paul Kellet's refined 1/f filter.
      double b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0;
      for (double& s : noise.samples) {
        const double w = gauss(rng);
        b0 = 0.99886 * b0 + w * 0.0555179;
        b1 = 0.99332 * b1 + w * 0.0750759;
        b2 = 0.96900 * b2 + w * 0.1538520;
        b3 = 0.86650 * b3 + w * 0.3104856;
        b4 = 0.55000 * b4 + w * 0.5329522;
        b5 = -0.7616 * b5 - w * 0.0168980;
        s = b0 + b1 + b2 + b3 + b4 + b5 + b6 + w * 0.5362;
        b6 = w * 0.115926;
      }
      break;
    }
    case NoiseKind::kRumble: {
      const double a = std::exp(-2.0 * std::numbers::pi * 200.0 / sample_rate);
      double y = 0.0;
      for (double& s : noise.samples) {
        y = a * y + (1.0 - a) * gauss(rng);
        s = y;
      }
      break;
    }
  }
  const double power = MeanPower(noise.samples);
  const double scale = power > 0.0 ? 1.0 / std::sqrt(power) : 0.0;
  for (double& s : noise.samples) s *= scale;
  return noise;
}

MixResult MixAtSnr(const Waveform& clean, const Waveform& noise, double snr_db) {
  if (clean.samples.size() != noise.samples.size() ||
      clean.sample_rate != noise.sample_rate) {
    throw Error(ErrorCode::kData, "clean and noise must share length and sample rate");
  }
  if (!std::isfinite(snr_db)) throw Error(ErrorCode::kConfig, "snr must be finite");
  const double p_clean = MeanPower(clean.samples);
  const double p_noise = MeanPower(noise.samples);
  if (!(p_clean > 0.0)) throw Error(ErrorCode::kData, "clean signal has zero energy");
  if (!(p_noise > 0.0)) throw Error(ErrorCode::kData, "noise has zero energy");
  const double scale = std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));

  MixResult r;
  r.mixture.sample_rate = clean.sample_rate;
  r.mixture.samples.resize(clean.samples.size());
  r.scaled_noise.resize(clean.samples.size());
  std::size_t clipped = 0;
  for (std::size_t i = 0; i < clean.samples.size(); ++i) {
    r.scaled_noise[i] = scale * noise.samples[i];
    const double s = clean.samples[i] + r.scaled_noise[i];
    if (s > 1.0 || s < -1.0) ++clipped;
    r.mixture.samples[i] = std::clamp(s, -1.0, 1.0);
  }
  r.clip_fraction = static_cast<double>(clipped) / clean.samples.size();
  if (r.clip_fraction > 0.001) {
    std::cerr << "warning: " << 100.0 * r.clip_fraction
              << "% of mixed samples clipped at snr " << snr_db << " dB\n";
  }
  return r;
}

}  // namespace cyclese
