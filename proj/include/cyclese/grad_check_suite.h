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

#ifndef CYCLESE_GRAD_CHECK_SUITE_H_
#define CYCLESE_GRAD_CHECK_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cyclese/grad_check.h"

namespace cyclese {

inline constexpr double kGradCheckTolerance = 1e-4;

struct GradCheckCase {
  std::string name;     // e.g. "loss_nn"
  std::string network;  // which parameter set was perturbed
  GradCheckReport report;

  bool passed() const { return report.max_relative_error < kGradCheckTolerance; }
};

// Finite-difference checks on tiny instances (2-layer LSTMP with 8 cells
// and 4-dim projections, 2x16 discriminators, a few frames): every network
// under an MSE or cross-entropy probe, every single loss, and both totals
// (the adversarial one with exact, unreversed gradients).
std::vector<GradCheckCase> RunGradCheckSuite(std::uint64_t seed = 7,
                                             const GradCheckOptions& options = {});

}  // namespace cyclese

#endif  // CYCLESE_GRAD_CHECK_SUITE_H_
