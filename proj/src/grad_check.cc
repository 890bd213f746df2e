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

#include "cyclese/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cyclese/error.h"

namespace cyclese {

GradCheckReport GradCheck(ParameterSet* params, const ParameterSet& analytic,
                          const std::function<double()>& loss,
                          const GradCheckOptions& options) {
  if (!params->SameShape(analytic)) {
    throw Error(ErrorCode::kState, "analytic gradient does not match parameters");
  }
  const std::int64_t total = params->NumScalars();
  std::vector<std::int64_t> indices(total);
  std::iota(indices.begin(), indices.end(), 0);
  if (options.max_checked > 0 && total > options.max_checked) {
    std::mt19937_64 rng(options.seed);
    std::shuffle(indices.begin(), indices.end(), rng);
    indices.resize(options.max_checked);
    std::sort(indices.begin(), indices.end());
  }

  GradCheckReport report;
  for (std::int64_t index : indices) {
    double& w = params->Scalar(index);
    const double saved = w;
    w = saved + options.epsilon;
    const double up = loss();
    w = saved - options.epsilon;
    const double down = loss();
    w = saved;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw Error(ErrorCode::kNumeric,
                  "non-finite loss while perturbing " + params->ScalarOwner(index));
    }
    const double numeric = (up - down) / (2.0 * options.epsilon);
    const double a = analytic.Scalar(index);
    const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
    const double rel = std::abs(a - numeric) / denom;
    ++report.checked;
    if (rel > report.max_relative_error || report.worst_index < 0) {
      report.max_relative_error = std::max(rel, report.max_relative_error);
      report.worst_tensor = params->ScalarOwner(index);
      report.worst_index = index;
      report.worst_analytic = a;
      report.worst_numeric = numeric;
    }
  }
  return report;
}

}  // namespace cyclese
