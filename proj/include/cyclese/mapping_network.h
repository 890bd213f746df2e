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

#ifndef CYCLESE_MAPPING_NETWORK_H_
#define CYCLESE_MAPPING_NETWORK_H_

#include <cstdint>
#include <vector>

#include "cyclese/feature_sequence.h"
#include "cyclese/parameters.h"

namespace cyclese {

struct MappingSpec {
  int input_dim = kAugmentedDim;
  int output_dim = kStaticDim;
  int num_layers = 2;
  int cell_dim = 512;
  int proj_dim = 256;

  // 87 -> 29, the enhancement network.
  static MappingSpec NoisyToClean();
  // 29 -> 87, the inverse network.
  static MappingSpec CleanToNoisy();

  void Validate() const;
  bool operator==(const MappingSpec&) const = default;
};

// Activations retained by one forward pass, all stored one column per frame.
struct LstmpLayerCache {
  Matrix input;   // in_dim x T
  Matrix gates;   // 4C x T, post-activation [i; f; g; o]
  Matrix cell;    // C x T
  Matrix tanh_cell;
  Matrix hidden;  // C x T, o * tanh(c)
  Matrix proj;    // P x T, recurrent and layer output
};

struct MappingCache {
  std::vector<LstmpLayerCache> layers;
  int num_frames = 0;
};

// Stack of LSTM layers with a recurrent projection (LSTMP, no peepholes)
// followed by a linear output head. States start at zero for every call.
//
// Per layer and frame, with z = Wx x_t + Wr r_{t-1} + b split into four
// C-blocks:
//   i = sigm(z_i)  f = sigm(z_f)  g = tanh(z_g)  o = sigm(z_o)
//   c_t = f * c_{t-1} + i * g
//   h_t = o * tanh(c_t)
//   r_t = Wp h_t
// The head computes y_t = Wo r_t + bo from the top layer's r_t.
class MappingNetwork {
 public:
  // All parameters zero.
  explicit MappingNetwork(const MappingSpec& spec);

  // Uniform(-r, r) weights with r = sqrt(6 / (fan_in + fan_out)), zero
  // biases except the forget-gate block, which is set to 1.
  static MappingNetwork Initialized(const MappingSpec& spec, std::uint64_t seed);

  const MappingSpec& spec() const { return spec_; }
  ParameterSet& params() { return params_; }
  const ParameterSet& params() const { return params_; }

  // `input` is T x input_dim; returns T x output_dim. `cache` may be null.
  Matrix Forward(const Matrix& input, MappingCache* cache = nullptr) const;

  // Full-sequence BPTT. Adds dL/dparams into `grads` (shaped like params())
  // and returns dL/dinput (T x input_dim).
  Matrix Backward(const MappingCache& cache, const Matrix& out_grads,
                  ParameterSet* grads) const;

  // Parameter indices, exposed for tests and initialization.
  struct LayerIndex {
    int wx, wr, bias, wp;
  };
  const LayerIndex& layer_index(int l) const { return layers_[l]; }
  int head_weight_index() const { return head_w_; }
  int head_bias_index() const { return head_b_; }

 private:
  MappingSpec spec_;
  ParameterSet params_;
  std::vector<LayerIndex> layers_;
  int head_w_ = -1;
  int head_b_ = -1;
};

// Convenience wrapper returning a fresh gradient set.
struct MappingGradients {
  ParameterSet params;
  Matrix input;
};
MappingGradients MapBackward(const MappingNetwork& net, const MappingCache& cache,
                             const Matrix& out_grads);

}  // namespace cyclese

#endif  // CYCLESE_MAPPING_NETWORK_H_
