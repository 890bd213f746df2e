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

#ifndef CYCLESE_OPTIMIZER_H_
#define CYCLESE_OPTIMIZER_H_

#include <map>
#include <string>

#include "cyclese/parameters.h"

namespace cyclese {

struct SgdConfig {
  double learning_rate = 2e-7;
  double momentum = 0.5;
  // Rescales a network's gradient to this global L2 norm when exceeded.
  // 0 disables clipping.
  double clip_norm = 0.0;

  void Validate() const;
};

// Momentum SGD state: one velocity buffer per named network.
struct OptimizerState {
  SgdConfig config;
  std::map<std::string, ParameterSet> velocity;
};

// v <- momentum * v - lr * g;  p <- p + v.
// The velocity buffer for `role` is created on first use. Throws kNumeric
// (leaving params and velocity untouched) if any gradient is non-finite.
void SgdStep(const std::string& role, const ParameterSet& grads, ParameterSet* params,
             OptimizerState* state);

}  // namespace cyclese

#endif  // CYCLESE_OPTIMIZER_H_
