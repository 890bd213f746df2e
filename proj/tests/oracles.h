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

// Slow, independent reference implementations shared by the unit tests and
// the acceptance suite. They use plain loops on purpose.

#ifndef CYCLESE_TESTS_ORACLES_H_
#define CYCLESE_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cyclese/feature_sequence.h"
#include "cyclese/mapping_network.h"

namespace cyclese {
namespace testing {

// Independent front end: direct DFT sums and triangles built from the HTK
// mel formula.
inline Matrix OracleLogMel(const std::vector<double>& x, int rate) {
  const int win = 400, hop = 160, nfft = 512, mels = 29;
  const double lo = 2595.0 * std::log10(1.0 + 20.0 / 700.0);
  const double hi = 2595.0 * std::log10(1.0 + (rate / 2.0) / 700.0);
  std::vector<double> edge(mels + 2);
  for (int m = 0; m < mels + 2; ++m) {
    const double mel = lo + (hi - lo) * m / (mels + 1);
    edge[m] = 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
  }
  const int frames = 1 + (static_cast<int>(x.size()) - win) / hop;
  Matrix out(frames, mels);
  for (int t = 0; t < frames; ++t) {
    std::vector<double> power(nfft / 2 + 1);
    for (int k = 0; k <= nfft / 2; ++k) {
      std::complex<double> acc = 0.0;
      for (int n = 0; n < win; ++n) {
        const double h = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (win - 1));
        acc += x[t * hop + n] * h * std::polar(1.0, -2.0 * std::numbers::pi * k * n / nfft);
      }
      power[k] = std::norm(acc);
    }
    for (int m = 0; m < mels; ++m) {
      double e = 0.0;
      for (int k = 0; k <= nfft / 2; ++k) {
        const double f = k * static_cast<double>(rate) / nfft;
        double wgt = 0.0;
        if (f > edge[m] && f <= edge[m + 1]) wgt = (f - edge[m]) / (edge[m + 1] - edge[m]);
        if (f > edge[m + 1] && f < edge[m + 2]) wgt = (edge[m + 2] - f) / (edge[m + 2] - edge[m + 1]);
        e += wgt * power[k];
      }
      out(t, m) = std::log(e + 1e-10);
    }
  }
  return out;
}

inline double Sigm(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Scalar-loop LSTMP, independent of the Eigen implementation.
inline Matrix LoopForward(const MappingNetwork& net, const Matrix& x) {
  const MappingSpec& s = net.spec();
  const ParameterSet& p = net.params();
  const int frames = static_cast<int>(x.rows());
  const int c = s.cell_dim, pr = s.proj_dim;
  std::vector<std::vector<double>> layer_in(frames);
  for (int t = 0; t < frames; ++t) {
    for (int j = 0; j < x.cols(); ++j) layer_in[t].push_back(x(t, j));
  }
  for (int l = 0; l < s.num_layers; ++l) {
    const auto& idx = net.layer_index(l);
    const Matrix& wx = p[idx.wx];
    const Matrix& wr = p[idx.wr];
    const Matrix& b = p[idx.bias];
    const Matrix& wp = p[idx.wp];
    std::vector<double> r(pr, 0.0), cell(c, 0.0);
    std::vector<std::vector<double>> out(frames);
    for (int t = 0; t < frames; ++t) {
      std::vector<double> h(c);
      for (int k = 0; k < c; ++k) {
        double z[4];
        for (int q = 0; q < 4; ++q) {
          const int row = q * c + k;
          double acc = b(row, 0);
          for (int j = 0; j < static_cast<int>(layer_in[t].size()); ++j) acc += wx(row, j) * layer_in[t][j];
          for (int j = 0; j < pr; ++j) acc += wr(row, j) * r[j];
          z[q] = acc;
        }
        const double i = Sigm(z[0]), f = Sigm(z[1]), g = std::tanh(z[2]), o = Sigm(z[3]);
        cell[k] = f * cell[k] + i * g;
        h[k] = o * std::tanh(cell[k]);
      }
      for (int j = 0; j < pr; ++j) {
        double acc = 0.0;
        for (int k = 0; k < c; ++k) acc += wp(j, k) * h[k];
        r[j] = acc;
      }
      out[t] = r;
    }
    layer_in = out;
  }
  const Matrix& wo = p[net.head_weight_index()];
  const Matrix& bo = p[net.head_bias_index()];
  Matrix y(frames, s.output_dim);
  for (int t = 0; t < frames; ++t) {
    for (int o = 0; o < s.output_dim; ++o) {
      double acc = bo(o, 0);
      for (int j = 0; j < pr; ++j) acc += wo(o, j) * layer_in[t][j];
      y(t, o) = acc;
    }
  }
  return y;
}

// Loop oracles for the three metrics.
inline double LoopMse(const Matrix& e, const Matrix& c) {
  double s = 0.0;
  for (int t = 0; t < e.rows(); ++t) {
    for (int d = 0; d < e.cols(); ++d) s += (e(t, d) - c(t, d)) * (e(t, d) - c(t, d));
  }
  return s / e.rows();
}

inline double LoopSegSnr(const Matrix& e, const Matrix& c) {
  double total = 0.0;
  for (int t = 0; t < e.rows(); ++t) {
    double sig = 0.0, err = 0.0;
    for (int d = 0; d < e.cols(); ++d) {
      const double mc = std::sqrt(std::exp(c(t, d))), me = std::sqrt(std::exp(e(t, d)));
      sig += mc * mc;
      err += (mc - me) * (mc - me);
    }
    double snr = err == 0.0 ? 35.0 : 10.0 * std::log10(sig / err);
    snr = std::min(35.0, std::max(-10.0, snr));
    total += snr;
  }
  return total / e.rows();
}

inline double LoopLsd(const Matrix& e, const Matrix& c) {
  double total = 0.0;
  for (int t = 0; t < e.rows(); ++t) {
    double s = 0.0;
    for (int d = 0; d < e.cols(); ++d) {
      const double diff = 10.0 * std::log10(std::exp(e(t, d))) - 10.0 * std::log10(std::exp(c(t, d)));
      s += diff * diff;
    }
    total += std::sqrt(s / e.cols());
  }
  return total / e.rows();
}

}  // namespace testing
}  // namespace cyclese

#endif  // CYCLESE_TESTS_ORACLES_H_
