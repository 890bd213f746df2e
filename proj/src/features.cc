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

#include "cyclese/features.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "cyclese/error.h"

namespace cyclese {
namespace {

// fftw planner calls are not thread-safe; execution with new arrays is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

class RealFft {
 public:
  explicit RealFft(int n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan_ = fftw_plan_dft_r2c_1d(n, in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard<std::mutex> lock(PlannerMutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }

  // Writes |X_k|^2 for k = 0..n/2 into `power`.
  void PowerSpectrum(Vector* power) {
    fftw_execute(plan_);
    power->resize(n_ / 2 + 1);
    for (int k = 0; k <= n_ / 2; ++k) {
      (*power)[k] = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
    }
  }

 private:
  int n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

}  // namespace

FrameGeometry ResolveGeometry(const FbankConfig& cfg, int sample_rate) {
  if (sample_rate <= 0) throw Error(ErrorCode::kConfig, "sample rate <= 0");
  if (cfg.n_mels < 1) throw Error(ErrorCode::kConfig, "n_mels must be >= 1");
  if (!(cfg.frame_length_ms > 0) || !(cfg.frame_hop_ms > 0)) {
    throw Error(ErrorCode::kConfig, "frame length and hop must be positive");
  }
  if (!(cfg.floor > 0)) throw Error(ErrorCode::kConfig, "log floor must be > 0");
  FrameGeometry g;
  g.window = static_cast<int>(std::lround(cfg.frame_length_ms * sample_rate / 1000.0));
  g.hop = static_cast<int>(std::lround(cfg.frame_hop_ms * sample_rate / 1000.0));
  if (g.window < 2 || g.hop < 1) {
    throw Error(ErrorCode::kConfig, "frame window or hop rounds to too few samples");
  }
  if (cfg.fft_size == 0) {
    g.fft_size = 1;
    while (g.fft_size < g.window) g.fft_size *= 2;
  } else {
    g.fft_size = cfg.fft_size;
  }
  if (g.fft_size < g.window) {
    throw Error(ErrorCode::kConfig, "fft_size " + std::to_string(g.fft_size) +
                                        " is shorter than the window");
  }
  const double nyquist = sample_rate / 2.0;
  g.fmin_hz = cfg.fmin_hz;
  g.fmax_hz = cfg.fmax_hz == 0.0 ? nyquist : cfg.fmax_hz;
  if (g.fmin_hz < 0 || !(g.fmin_hz < g.fmax_hz) || g.fmax_hz > nyquist) {
    throw Error(ErrorCode::kConfig, "need 0 <= fmin < fmax <= sample_rate/2");
  }
  return g;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

// n_mels + 2 edge frequencies equally spaced on the mel scale.
std::vector<double> BandEdges(const FrameGeometry& g, int n_mels) {
  const double lo = HzToMel(g.fmin_hz), hi = HzToMel(g.fmax_hz);
  std::vector<double> edges(n_mels + 2);
  for (int m = 0; m < n_mels + 2; ++m) {
    edges[m] = MelToHz(lo + (hi - lo) * m / (n_mels + 1));
  }
  return edges;
}

}  // namespace

std::vector<double> MelBandCenters(const FbankConfig& cfg, int sample_rate) {
  const FrameGeometry g = ResolveGeometry(cfg, sample_rate);
  const std::vector<double> edges = BandEdges(g, cfg.n_mels);
  return {edges.begin() + 1, edges.end() - 1};
}

Matrix MelFilterbank(const FbankConfig& cfg, int sample_rate) {
  const FrameGeometry g = ResolveGeometry(cfg, sample_rate);
  const std::vector<double> edges = BandEdges(g, cfg.n_mels);
  const int bins = g.fft_size / 2 + 1;
  Matrix weights = Matrix::Zero(cfg.n_mels, bins);
  for (int m = 0; m < cfg.n_mels; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / g.fft_size;
      if (f > left && f <= center) {
        weights(m, k) = (f - left) / (center - left);
      } else if (f > center && f < right) {
        weights(m, k) = (right - f) / (right - center);
      }
    }
  }
  return weights;
}

FeatureSequence LogMel(const Waveform& wave, const FbankConfig& cfg) {
  ValidateWaveform(wave);
  const FrameGeometry g = ResolveGeometry(cfg, wave.sample_rate);
  const int n = static_cast<int>(wave.samples.size());
  if (n < g.window) {
    throw Error(ErrorCode::kData, "waveform shorter than one analysis window");
  }
  const int frames = 1 + (n - g.window) / g.hop;
  const Matrix weights = MelFilterbank(cfg, wave.sample_rate);

  Vector hamming(g.window);
  for (int i = 0; i < g.window; ++i) {
    hamming[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (g.window - 1));
  }

  RealFft fft(g.fft_size);
  Matrix out(frames, cfg.n_mels);
  Vector power;
  for (int t = 0; t < frames; ++t) {
    double* buf = fft.input();
    const int offset = t * g.hop;
    for (int i = 0; i < g.window; ++i) buf[i] = wave.samples[offset + i] * hamming[i];
    for (int i = g.window; i < g.fft_size; ++i) buf[i] = 0.0;
    fft.PowerSpectrum(&power);
    const Vector energy = weights * power;
    for (int m = 0; m < cfg.n_mels; ++m) out(t, m) = std::log(energy[m] + cfg.floor);
  }
  return FeatureSequence::FromMatrix(std::move(out));
}

namespace {

Matrix RegressionDelta(const Matrix& c, int window) {
  const int frames = static_cast<int>(c.rows());
  double denom = 0.0;
  for (int n = 1; n <= window; ++n) denom += n * n;
  denom *= 2.0;
  Matrix d = Matrix::Zero(frames, c.cols());
  for (int t = 0; t < frames; ++t) {
    for (int n = 1; n <= window; ++n) {
      const int ahead = std::min(t + n, frames - 1);
      const int behind = std::max(t - n, 0);
      d.row(t) += n * (c.row(ahead) - c.row(behind));
    }
  }
  return d / denom;
}

}  // namespace

FeatureSequence AppendDeltas(const FeatureSequence& seq, int window) {
  if (seq.kind() != DimKind::kStatic29) {
    throw Error(ErrorCode::kDimension, "deltas require a static29 sequence");
  }
  return FeatureSequence(AppendDeltaColumns(seq.data(), window), DimKind::kAugmented87);
}

Matrix AppendDeltaColumns(const Matrix& frames, int window) {
  if (window < 1) throw Error(ErrorCode::kConfig, "delta window must be >= 1");
  const Matrix delta = RegressionDelta(frames, window);
  const Matrix delta2 = RegressionDelta(delta, window);
  Matrix out(frames.rows(), 3 * frames.cols());
  out << frames, delta, delta2;
  return out;
}

NormStats ComputeGlobalStats(const std::vector<FeatureSequence>& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kData, "empty corpus");
  const int dim = corpus.front().dim();
  long long count = 0;
  Vector sum = Vector::Zero(dim);
  for (const auto& seq : corpus) {
    if (seq.dim() != dim) {
      throw Error(ErrorCode::kDimension, "corpus mixes feature dimensions");
    }
    sum += seq.data().colwise().sum().transpose();
    count += seq.num_frames();
  }
  if (count < 2) throw Error(ErrorCode::kData, "need at least 2 frames for stats");
  NormStats stats;
  stats.mean = sum / static_cast<double>(count);
  Vector sq = Vector::Zero(dim);
  for (const auto& seq : corpus) {
    sq += (seq.data().rowwise() - stats.mean.transpose())
              .array()
              .square()
              .colwise()
              .sum()
              .matrix()
              .transpose();
  }
  stats.std = (sq / static_cast<double>(count)).array().sqrt();
  for (int d = 0; d < dim; ++d) {
    if (!(stats.std[d] > 0)) {
      throw Error(ErrorCode::kDegenerate,
                  "dimension " + std::to_string(d) + " has zero variance");
    }
  }
  return stats;
}

namespace {

void CheckStats(const FeatureSequence& seq, const NormStats& stats) {
  if (stats.mean.size() != seq.dim() || stats.std.size() != seq.dim()) {
    throw Error(ErrorCode::kDimension,
                "stats have dim " + std::to_string(stats.mean.size()) +
                    ", features have " + std::to_string(seq.dim()));
  }
}

}  // namespace

FeatureSequence Normalize(const FeatureSequence& seq, const NormStats& stats) {
  CheckStats(seq, stats);
  Matrix out = (seq.data().rowwise() - stats.mean.transpose()).array().rowwise() /
               stats.std.transpose().array();
  return FeatureSequence(std::move(out), seq.kind());
}

FeatureSequence Denormalize(const FeatureSequence& seq, const NormStats& stats) {
  CheckStats(seq, stats);
  Matrix out = (seq.data().array().rowwise() * stats.std.transpose().array())
                   .rowwise() +
               stats.mean.transpose().array();
  return FeatureSequence(std::move(out), seq.kind());
}

}  // namespace cyclese
