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

#ifndef CYCLESE_GRAD_CHECK_H_
#define CYCLESE_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <string>

#include "cyclese/parameters.h"

namespace cyclese {

struct GradCheckOptions {
  double epsilon = 1e-5;
  // When the set holds more scalars than this, a seeded random subset of
  // this size is checked instead. 0 checks everything.
  std::int64_t max_checked = 0;
  std::uint64_t seed = 0;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::int64_t checked = 0;
  std::string worst_tensor;
  std::int64_t worst_index = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Central-difference check of `analytic` against `loss`, perturbing the
// entries of `params` in place (each is restored bit-exactly). Relative
// error is |a - n| / max(|a|, |n|, 1e-8). Throws kNumeric if the loss is
// not finite.
GradCheckReport GradCheck(ParameterSet* params, const ParameterSet& analytic,
                          const std::function<double()>& loss,
                          const GradCheckOptions& options = {});

}  // namespace cyclese

#endif  // CYCLESE_GRAD_CHECK_H_
