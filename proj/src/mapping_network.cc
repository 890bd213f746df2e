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

#include "cyclese/mapping_network.h"

#include <cmath>
#include <random>
#include <string>

#include "cyclese/error.h"

namespace cyclese {
namespace {

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void GlorotUniform(Matrix* w, std::mt19937_64* rng) {
  const double r = std::sqrt(6.0 / static_cast<double>(w->rows() + w->cols()));
  std::uniform_real_distribution<double> dist(-r, r);
  for (Eigen::Index k = 0; k < w->size(); ++k) w->data()[k] = dist(*rng);
}

}  // namespace

MappingSpec MappingSpec::NoisyToClean() { return MappingSpec{}; }

MappingSpec MappingSpec::CleanToNoisy() {
  MappingSpec spec;
  spec.input_dim = kStaticDim;
  spec.output_dim = kAugmentedDim;
  return spec;
}

void MappingSpec::Validate() const {
  if (input_dim < 1 || output_dim < 1 || num_layers < 1 || cell_dim < 1 ||
      proj_dim < 1) {
    throw Error(ErrorCode::kConfig, "mapping network dimensions must be positive");
  }
}

MappingNetwork::MappingNetwork(const MappingSpec& spec) : spec_(spec) {
  spec_.Validate();
  const int c = spec_.cell_dim, p = spec_.proj_dim;
  for (int l = 0; l < spec_.num_layers; ++l) {
    const int in = l == 0 ? spec_.input_dim : p;
    const std::string prefix = "lstm" + std::to_string(l) + ".";
    LayerIndex idx;
    idx.wx = params_.Add(prefix + "wx", Matrix::Zero(4 * c, in));
    idx.wr = params_.Add(prefix + "wr", Matrix::Zero(4 * c, p));
    idx.bias = params_.Add(prefix + "b", Matrix::Zero(4 * c, 1));
    idx.wp = params_.Add(prefix + "wp", Matrix::Zero(p, c));
    layers_.push_back(idx);
  }
  head_w_ = params_.Add("head.w", Matrix::Zero(spec_.output_dim, p));
  head_b_ = params_.Add("head.b", Matrix::Zero(spec_.output_dim, 1));
}

MappingNetwork MappingNetwork::Initialized(const MappingSpec& spec,
                                           std::uint64_t seed) {
  MappingNetwork net(spec);
  std::mt19937_64 rng(seed);
  const int c = spec.cell_dim;
  for (const LayerIndex& idx : net.layers_) {
    GlorotUniform(&net.params_[idx.wx], &rng);
    GlorotUniform(&net.params_[idx.wr], &rng);
    GlorotUniform(&net.params_[idx.wp], &rng);
    net.params_[idx.bias].block(c, 0, c, 1).setOnes();
  }
  GlorotUniform(&net.params_[net.head_w_], &rng);
  return net;
}

Matrix MappingNetwork::Forward(const Matrix& input, MappingCache* cache) const {
  if (input.cols() != spec_.input_dim) {
    throw Error(ErrorCode::kDimension,
                "mapping network expects " + std::to_string(spec_.input_dim) +
                    "-dim input, got " + std::to_string(input.cols()));
  }
  const int frames = static_cast<int>(input.rows());
  if (frames < 1) throw Error(ErrorCode::kData, "mapping forward needs T >= 1");
  const int c = spec_.cell_dim, p = spec_.proj_dim;

  MappingCache local;
  MappingCache& out = cache ? *cache : local;
  out.layers.assign(spec_.num_layers, {});
  out.num_frames = frames;

  Matrix x = input.transpose();
  for (int l = 0; l < spec_.num_layers; ++l) {
    const LayerIndex& idx = layers_[l];
    const Matrix& wr = params_[idx.wr];
    const Matrix& wp = params_[idx.wp];
    LstmpLayerCache& lc = out.layers[l];
    lc.gates.noalias() = params_[idx.wx] * x;
    lc.gates.colwise() += params_[idx.bias].col(0);
    lc.cell.resize(c, frames);
    lc.tanh_cell.resize(c, frames);
    lc.hidden.resize(c, frames);
    lc.proj.resize(p, frames);

    Vector z(4 * c);
    for (int t = 0; t < frames; ++t) {
      z = lc.gates.col(t);
      if (t > 0) z.noalias() += wr * lc.proj.col(t - 1);
      for (int k = 0; k < c; ++k) {
        const double i = Sigmoid(z[k]);
        const double f = Sigmoid(z[c + k]);
        const double g = std::tanh(z[2 * c + k]);
        const double o = Sigmoid(z[3 * c + k]);
        const double prev = t > 0 ? lc.cell(k, t - 1) : 0.0;
        const double cell = f * prev + i * g;
        const double tc = std::tanh(cell);
        lc.gates(k, t) = i;
        lc.gates(c + k, t) = f;
        lc.gates(2 * c + k, t) = g;
        lc.gates(3 * c + k, t) = o;
        lc.cell(k, t) = cell;
        lc.tanh_cell(k, t) = tc;
        lc.hidden(k, t) = o * tc;
      }
      lc.proj.col(t).noalias() = wp * lc.hidden.col(t);
    }
    lc.input = std::move(x);
    x = lc.proj;
  }
  Matrix y = params_[head_w_] * x;
  y.colwise() += params_[head_b_].col(0);
  return y.transpose();
}

Matrix MappingNetwork::Backward(const MappingCache& cache, const Matrix& out_grads,
                                ParameterSet* grads) const {
  if (static_cast<int>(cache.layers.size()) != spec_.num_layers ||
      cache.num_frames < 1) {
    throw Error(ErrorCode::kState, "mapping cache does not match this network");
  }
  const int frames = cache.num_frames;
  if (out_grads.rows() != frames || out_grads.cols() != spec_.output_dim) {
    throw Error(ErrorCode::kState, "output gradient shape does not match cache");
  }
  if (grads == nullptr || !grads->SameShape(params_)) {
    throw Error(ErrorCode::kState, "gradient buffer does not match parameters");
  }
  const int c = spec_.cell_dim, p = spec_.proj_dim;

  const Matrix dy = out_grads.transpose();
  const Matrix& top = cache.layers.back().proj;
  (*grads)[head_w_].noalias() += dy * top.transpose();
  (*grads)[head_b_] += dy.rowwise().sum();
  Matrix d_above = params_[head_w_].transpose() * dy;  // P x T

  for (int l = spec_.num_layers - 1; l >= 0; --l) {
    const LayerIndex& idx = layers_[l];
    const LstmpLayerCache& lc = cache.layers[l];
    const Matrix& wr = params_[idx.wr];
    const Matrix& wp = params_[idx.wp];

    Matrix dz(4 * c, frames);
    Matrix dr_all(p, frames);
    Vector dr_next = Vector::Zero(p);
    Vector dc_next = Vector::Zero(c);
    Vector dh(c);
    for (int t = frames - 1; t >= 0; --t) {
      dr_all.col(t) = d_above.col(t) + dr_next;
      dh.noalias() = wp.transpose() * dr_all.col(t);
      for (int k = 0; k < c; ++k) {
        const double i = lc.gates(k, t);
        const double f = lc.gates(c + k, t);
        const double g = lc.gates(2 * c + k, t);
        const double o = lc.gates(3 * c + k, t);
        const double tc = lc.tanh_cell(k, t);
        const double prev = t > 0 ? lc.cell(k, t - 1) : 0.0;
        const double d_o = dh[k] * tc;
        const double dc = dh[k] * o * (1.0 - tc * tc) + dc_next[k];
        dz(k, t) = dc * g * i * (1.0 - i);
        dz(c + k, t) = dc * prev * f * (1.0 - f);
        dz(2 * c + k, t) = dc * i * (1.0 - g * g);
        dz(3 * c + k, t) = d_o * o * (1.0 - o);
        dc_next[k] = dc * f;
      }
      dr_next.noalias() = wr.transpose() * dz.col(t);
    }

    (*grads)[idx.wp].noalias() += dr_all * lc.hidden.transpose();
    if (frames > 1) {
      (*grads)[idx.wr].noalias() +=
          dz.rightCols(frames - 1) * lc.proj.leftCols(frames - 1).transpose();
    }
    (*grads)[idx.wx].noalias() += dz * lc.input.transpose();
    (*grads)[idx.bias] += dz.rowwise().sum();
    d_above.noalias() = params_[idx.wx].transpose() * dz;
  }
  return d_above.transpose();
}

MappingGradients MapBackward(const MappingNetwork& net, const MappingCache& cache,
                             const Matrix& out_grads) {
  MappingGradients g;
  g.params = net.params().ZerosLike();
  g.input = net.Backward(cache, out_grads, &g.params);
  return g;
}

}  // namespace cyclese
