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

#ifndef CYCLESE_LOSSES_H_
#define CYCLESE_LOSSES_H_

#include <string>
#include <utility>
#include <vector>

#include "cyclese/discriminator.h"
#include "cyclese/feature_bridge.h"
#include "cyclese/feature_sequence.h"
#include "cyclese/mapping_network.h"
#include "cyclese/parameters.h"

namespace cyclese {

// Weights of the cycle-consistent objective
//   nc + lambda1 * nn + lambda2 * cn + lambda3 * cc.
struct CseWeights {
  double lambda1 = 0.6;
  double lambda2 = 0.4;
  double lambda3 = 1.4;

  void Validate() const;
};

// Weights of the adversarial objective
//   nn + alpha1 * cc - alpha2 * dn - alpha3 * dc + alpha4 * in + alpha5 * ic.
struct AcseWeights {
  double alpha1 = 1.0;
  double alpha2 = 8.0;
  double alpha3 = 8.0;
  double alpha4 = 0.5;
  double alpha5 = 0.5;

  void Validate() const;
};

// Lower clamp applied to discriminator posteriors (and to one minus them)
// before taking logs.
inline constexpr double kProbabilityFloor = 1e-7;

// Scalar losses of one mini-batch plus per-network gradients. Gradient sets
// are empty (size 0) for networks the computation did not touch.
struct LossBundle {
  double nc = 0.0;  // noisy -> clean mapping
  double cn = 0.0;  // clean -> noisy mapping
  double nn = 0.0;  // noisy reconstruction, G(F(x)) vs x
  double cc = 0.0;  // clean reconstruction, F(G(y)) vs y
  double dn = 0.0;  // noisy-side discrimination log-likelihood, <= 0
  double dc = 0.0;  // clean-side discrimination log-likelihood, <= 0
  double in = 0.0;  // noisy identity mapping through G
  double ic = 0.0;  // clean identity mapping through F
  double total = 0.0;

  ParameterSet grad_f;
  ParameterSet grad_g;
  ParameterSet grad_du;
  ParameterSet grad_dv;

  // (name, value) pairs in a fixed order, for logs.
  std::vector<std::pair<std::string, double>> Named() const;
};

struct MseResult {
  double value = 0.0;
  Matrix grad;  // w.r.t. the first argument
};

// (1/T) sum_t ||a_t - b_t||^2, squared norm summed over feature dims.
MseResult MseSeq(const Matrix& a, const Matrix& b);

// The single-term losses below return the loss value and, when the gradient
// pointers are non-null, add weight * dloss/dparams into them.

// mse(F(x), y).
double LossNc(const MappingNetwork& f, const Matrix& x, const Matrix& y,
              double weight = 1.0, ParameterSet* grad_f = nullptr);
// mse(G(y), x).
double LossCn(const MappingNetwork& g, const Matrix& y, const Matrix& x,
              double weight = 1.0, ParameterSet* grad_g = nullptr);
// mse(G(F(x)), x), gradients chained through G into F.
double LossNn(const MappingNetwork& f, const MappingNetwork& g, const Matrix& x,
              double weight = 1.0, ParameterSet* grad_f = nullptr,
              ParameterSet* grad_g = nullptr);
// mse(F(G(y)), y), gradients chained through F into G.
double LossCc(const MappingNetwork& g, const MappingNetwork& f, const Matrix& y,
              double weight = 1.0, ParameterSet* grad_g = nullptr,
              ParameterSet* grad_f = nullptr);

// mse(G(bridge.NoisyToClean(u)), u).
double IdentityLossNoisy(const MappingNetwork& g, const Matrix& u,
                         const FeatureBridge& bridge, double weight = 1.0,
                         ParameterSet* grad_g = nullptr);
// mse(F(bridge.CleanToNoisy(v)), v).
double IdentityLossClean(const MappingNetwork& f, const Matrix& v,
                         const FeatureBridge& bridge, double weight = 1.0,
                         ParameterSet* grad_f = nullptr);

// Full cycle-consistent objective on one parallel pair (x noisy, y clean).
// grad_f and grad_g hold the gradients of `total`. Backward passes for
// zero-weighted terms are skipped; their values are still reported.
LossBundle CseTotal(const MappingNetwork& f, const MappingNetwork& g,
                    const Matrix& x, const Matrix& y, const CseWeights& w);

struct DiscriminationResult {
  // (1/T_real) sum log D(real) + (1/T_fake) sum log(1 - D(fake)), <= 0.
  double log_likelihood = 0.0;
  // Gradients of the cross-entropy, i.e. of -log_likelihood.
  ParameterSet param_grad;
  Matrix fake_input_grad;
};

// Cross-entropy discrimination loss with posteriors clamped to
// [kProbabilityFloor, 1 - kProbabilityFloor]. Throws kData if either batch
// is empty.
DiscriminationResult DiscriminationLoss(const Discriminator& d, const Matrix& real,
                                        const Matrix& fake, bool with_grads = true);

// How adversarial terms reach F and G.
enum class AdversarialGradient {
  // Through a gradient reversal layer of strength alpha: the mapping
  // networks move against the discriminators.
  kReversed,
  // Plain gradient of the weighted total, as used by finite-difference
  // checks.
  kExact,
};

// Term groups can be masked out of the total and the gradients. Masked
// cycle and adversarial terms are still reported; masked identity terms
// read 0.
struct AcseOptions {
  AdversarialGradient adversarial = AdversarialGradient::kReversed;
  bool cycle_terms = true;
  bool identity_terms = true;
  bool adversarial_terms = true;
};

// Adversarial cycle-consistent objective on one noisy utterance u (87-dim)
// and one unrelated clean utterance v (29-dim). Discriminator gradients are
// those of `total` (they descend it, which ascends dn and dc). Throws
// kNumeric naming the first non-finite component.
LossBundle AcseTotal(const MappingNetwork& f, const MappingNetwork& g,
                     const Discriminator& d_noisy, const Discriminator& d_clean,
                     const Matrix& u, const Matrix& v, const AcseWeights& w,
                     const FeatureBridge& bridge, const AcseOptions& options = {});

}  // namespace cyclese

#endif  // CYCLESE_LOSSES_H_
