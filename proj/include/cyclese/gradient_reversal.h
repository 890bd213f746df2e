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

#ifndef CYCLESE_GRADIENT_REVERSAL_H_
#define CYCLESE_GRADIENT_REVERSAL_H_

#include "cyclese/feature_sequence.h"

namespace cyclese {

// Backward pass of a gradient reversal layer: the forward pass is the
// identity, so only the incoming gradient is transformed, to -lambda * g.
// Throws kConfig for negative or non-finite lambda.
Matrix ReverseGradient(const Matrix& grad_in, double lambda);

}  // namespace cyclese

#endif  // CYCLESE_GRADIENT_REVERSAL_H_
