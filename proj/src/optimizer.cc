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

#include "cyclese/optimizer.h"

#include <cmath>

#include "cyclese/error.h"

namespace cyclese {

void SgdConfig::Validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kConfig, "learning rate must be finite and >= 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw Error(ErrorCode::kConfig, "momentum must lie in [0, 1)");
  }
  if (!(clip_norm >= 0.0) || !std::isfinite(clip_norm)) {
    throw Error(ErrorCode::kConfig, "clip norm must be finite and >= 0");
  }
}

void SgdStep(const std::string& role, const ParameterSet& grads, ParameterSet* params,
             OptimizerState* state) {
  if (!grads.SameShape(*params)) {
    throw Error(ErrorCode::kState, role + ": gradient shape does not match parameters");
  }
  if (!grads.AllFinite()) {
    throw Error(ErrorCode::kNumeric, role + ": non-finite gradient, step aborted");
  }
  const SgdConfig& cfg = state->config;
  auto [it, inserted] = state->velocity.try_emplace(role);
  if (inserted) it->second = params->ZerosLike();
  ParameterSet& velocity = it->second;
  if (!velocity.SameShape(*params)) {
    throw Error(ErrorCode::kState, role + ": velocity shape does not match parameters");
  }

  double scale = 1.0;
  if (cfg.clip_norm > 0.0) {
    const double norm = std::sqrt(grads.SquaredNorm());
    if (norm > cfg.clip_norm) scale = cfg.clip_norm / norm;
  }
  for (int i = 0; i < params->size(); ++i) {
    Matrix& v = velocity[i];
    v = cfg.momentum * v - (cfg.learning_rate * scale) * grads[i];
    (*params)[i] += v;
  }
}

}  // namespace cyclese
