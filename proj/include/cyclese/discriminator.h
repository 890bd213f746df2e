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

#ifndef CYCLESE_DISCRIMINATOR_H_
#define CYCLESE_DISCRIMINATOR_H_

#include <cstdint>
#include <vector>

#include "cyclese/feature_sequence.h"
#include "cyclese/parameters.h"

namespace cyclese {

struct DiscriminatorSpec {
  int input_dim = kAugmentedDim;
  int hidden_dim = 512;
  int num_hidden = 2;

  // Judges noisy-side frames (87-dim).
  static DiscriminatorSpec Noisy();
  // Judges clean-side frames (29-dim).
  static DiscriminatorSpec Clean();

  void Validate() const;
  bool operator==(const DiscriminatorSpec&) const = default;
};

struct DiscriminatorCache {
  Matrix input;                    // in_dim x T
  std::vector<Matrix> pre;         // per hidden layer, H x T
  std::vector<Matrix> activation;  // ReLU outputs
  Vector posterior;                // T
};

// Frame-level feedforward classifier: ReLU hidden layers, one sigmoid
// output unit giving the posterior that a frame is real.
class Discriminator {
 public:
  explicit Discriminator(const DiscriminatorSpec& spec);
  static Discriminator Initialized(const DiscriminatorSpec& spec, std::uint64_t seed);

  const DiscriminatorSpec& spec() const { return spec_; }
  ParameterSet& params() { return params_; }
  const ParameterSet& params() const { return params_; }

  // `frames` is T x input_dim; returns T posteriors.
  Vector Forward(const Matrix& frames, DiscriminatorCache* cache = nullptr) const;
  double Forward(const Vector& frame) const;

  // `posterior_grads` holds dL/dposterior per frame. Adds parameter
  // gradients into `grads` and returns dL/dframes (T x input_dim).
  Matrix Backward(const DiscriminatorCache& cache, const Vector& posterior_grads,
                  ParameterSet* grads) const;

 private:
  DiscriminatorSpec spec_;
  ParameterSet params_;
  std::vector<int> hidden_w_, hidden_b_;
  int out_w_ = -1;
  int out_b_ = -1;
};

}  // namespace cyclese

#endif  // CYCLESE_DISCRIMINATOR_H_
