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

#include "cyclese/losses.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyclese/error.h"
#include "cyclese/gradient_reversal.h"

namespace cyclese {
namespace {

void CheckWeight(double w, const char* name) {
  if (!std::isfinite(w) || w < 0.0) {
    throw Error(ErrorCode::kConfig, std::string(name) + " must be finite and >= 0");
  }
}

void CheckFinite(double value, const char* component) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kNumeric, std::string("loss component ") + component +
                                         " is not finite");
  }
}

}  // namespace

void CseWeights::Validate() const {
  CheckWeight(lambda1, "lambda1");
  CheckWeight(lambda2, "lambda2");
  CheckWeight(lambda3, "lambda3");
}

void AcseWeights::Validate() const {
  CheckWeight(alpha1, "alpha1");
  CheckWeight(alpha2, "alpha2");
  CheckWeight(alpha3, "alpha3");
  CheckWeight(alpha4, "alpha4");
  CheckWeight(alpha5, "alpha5");
}

std::vector<std::pair<std::string, double>> LossBundle::Named() const {
  return {{"nc", nc}, {"cn", cn}, {"nn", nn}, {"cc", cc}, {"dn", dn},
          {"dc", dc}, {"in", in}, {"ic", ic}, {"total", total}};
}

MseResult MseSeq(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimension,
                "mse operands differ: " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                    "x" + std::to_string(b.cols()));
  }
  if (a.rows() < 1) throw Error(ErrorCode::kData, "mse of an empty sequence");
  const double frames = static_cast<double>(a.rows());
  MseResult r;
  const Matrix diff = a - b;
  r.value = diff.squaredNorm() / frames;
  r.grad = (2.0 / frames) * diff;
  return r;
}

double LossNc(const MappingNetwork& f, const Matrix& x, const Matrix& y,
              double weight, ParameterSet* grad_f) {
  MappingCache cache;
  const Matrix y_hat = f.Forward(x, grad_f ? &cache : nullptr);
  MseResult m = MseSeq(y_hat, y);
  if (grad_f && weight != 0.0) f.Backward(cache, weight * m.grad, grad_f);
  return m.value;
}

double LossCn(const MappingNetwork& g, const Matrix& y, const Matrix& x,
              double weight, ParameterSet* grad_g) {
  return LossNc(g, y, x, weight, grad_g);
}

double LossNn(const MappingNetwork& f, const MappingNetwork& g, const Matrix& x,
              double weight, ParameterSet* grad_f, ParameterSet* grad_g) {
  const bool backprop = (grad_f || grad_g) && weight != 0.0;
  MappingCache cf, cg;
  const Matrix y_hat = f.Forward(x, backprop ? &cf : nullptr);
  const Matrix x_rec = g.Forward(y_hat, backprop ? &cg : nullptr);
  MseResult m = MseSeq(x_rec, x);
  if (backprop) {
    ParameterSet scratch_g;
    ParameterSet* gg = grad_g;
    if (gg == nullptr) {
      scratch_g = g.params().ZerosLike();
      gg = &scratch_g;
    }
    const Matrix d_y_hat = g.Backward(cg, weight * m.grad, gg);
    if (grad_f) f.Backward(cf, d_y_hat, grad_f);
  }
  return m.value;
}

double LossCc(const MappingNetwork& g, const MappingNetwork& f, const Matrix& y,
              double weight, ParameterSet* grad_g, ParameterSet* grad_f) {
  // Same composition with the roles swapped.
  return LossNn(g, f, y, weight, grad_g, grad_f);
}

double IdentityLossNoisy(const MappingNetwork& g, const Matrix& u,
                         const FeatureBridge& bridge, double weight,
                         ParameterSet* grad_g) {
  return LossNc(g, bridge.NoisyToClean(u), u, weight, grad_g);
}

double IdentityLossClean(const MappingNetwork& f, const Matrix& v,
                         const FeatureBridge& bridge, double weight,
                         ParameterSet* grad_f) {
  return LossNc(f, bridge.CleanToNoisy(v), v, weight, grad_f);
}

LossBundle CseTotal(const MappingNetwork& f, const MappingNetwork& g,
                    const Matrix& x, const Matrix& y, const CseWeights& w) {
  w.Validate();
  LossBundle b;
  b.grad_f = f.params().ZerosLike();
  b.grad_g = g.params().ZerosLike();

  // Forward cycle: x -> F -> y_hat -> G -> x_rec.
  MappingCache cf_fwd, cg_fwd;
  const Matrix y_hat = f.Forward(x, &cf_fwd);
  const Matrix x_rec = g.Forward(y_hat, &cg_fwd);
  const MseResult nc = MseSeq(y_hat, y);
  const MseResult nn = MseSeq(x_rec, x);

  // Backward cycle: y -> G -> x_hat -> F -> y_rec.
  MappingCache cg_bwd, cf_bwd;
  const Matrix x_hat = g.Forward(y, &cg_bwd);
  const Matrix y_rec = f.Forward(x_hat, &cf_bwd);
  const MseResult cn = MseSeq(x_hat, x);
  const MseResult cc = MseSeq(y_rec, y);

  b.nc = nc.value;
  b.nn = nn.value;
  b.cn = cn.value;
  b.cc = cc.value;
  b.total = b.nc + w.lambda1 * b.nn + w.lambda2 * b.cn + w.lambda3 * b.cc;
  CheckFinite(b.nc, "nc");
  CheckFinite(b.nn, "nn");
  CheckFinite(b.cn, "cn");
  CheckFinite(b.cc, "cc");

  Matrix d_y_hat = nc.grad;
  if (w.lambda1 != 0.0) {
    d_y_hat += g.Backward(cg_fwd, w.lambda1 * nn.grad, &b.grad_g);
  }
  f.Backward(cf_fwd, d_y_hat, &b.grad_f);

  Matrix d_x_hat = w.lambda2 * cn.grad;
  if (w.lambda3 != 0.0) {
    d_x_hat += f.Backward(cf_bwd, w.lambda3 * cc.grad, &b.grad_f);
  }
  if (w.lambda2 != 0.0 || w.lambda3 != 0.0) g.Backward(cg_bwd, d_x_hat, &b.grad_g);
  return b;
}

DiscriminationResult DiscriminationLoss(const Discriminator& d, const Matrix& real,
                                        const Matrix& fake, bool with_grads) {
  if (real.rows() < 1 || fake.rows() < 1) {
    throw Error(ErrorCode::kData, "discrimination loss needs non-empty real and fake batches");
  }
  constexpr double lo = kProbabilityFloor, hi = 1.0 - kProbabilityFloor;
  DiscriminatorCache c_real, c_fake;
  const Vector p_real = d.Forward(real, with_grads ? &c_real : nullptr);
  const Vector p_fake = d.Forward(fake, with_grads ? &c_fake : nullptr);
  const double n_real = static_cast<double>(real.rows());
  const double n_fake = static_cast<double>(fake.rows());

  DiscriminationResult r;
  Vector g_real(p_real.size()), g_fake(p_fake.size());
  double ll_real = 0.0, ll_fake = 0.0;
  for (Eigen::Index t = 0; t < p_real.size(); ++t) {
    const double p = std::clamp(p_real[t], lo, hi);
    ll_real += std::log(p);
    // The clamp is flat outside [lo, hi].
    g_real[t] = (p_real[t] > lo && p_real[t] < hi) ? -1.0 / (n_real * p) : 0.0;
  }
  for (Eigen::Index t = 0; t < p_fake.size(); ++t) {
    const double p = std::clamp(p_fake[t], lo, hi);
    ll_fake += std::log(1.0 - p);
    g_fake[t] = (p_fake[t] > lo && p_fake[t] < hi) ? 1.0 / (n_fake * (1.0 - p)) : 0.0;
  }
  r.log_likelihood = ll_real / n_real + ll_fake / n_fake;
  if (with_grads) {
    r.param_grad = d.params().ZerosLike();
    d.Backward(c_real, g_real, &r.param_grad);
    r.fake_input_grad = d.Backward(c_fake, g_fake, &r.param_grad);
  }
  return r;
}

LossBundle AcseTotal(const MappingNetwork& f, const MappingNetwork& g,
                     const Discriminator& d_noisy, const Discriminator& d_clean,
                     const Matrix& u, const Matrix& v, const AcseWeights& w,
                     const FeatureBridge& bridge, const AcseOptions& options) {
  w.Validate();
  LossBundle b;
  b.grad_f = f.params().ZerosLike();
  b.grad_g = g.params().ZerosLike();
  b.grad_du = d_noisy.params().ZerosLike();
  b.grad_dv = d_clean.params().ZerosLike();

  // u -> F -> v_hat (enhanced) -> G -> u_rec.
  MappingCache cf_fwd, cg_fwd;
  const Matrix v_hat = f.Forward(u, &cf_fwd);
  const Matrix u_rec = g.Forward(v_hat, &cg_fwd);
  // v -> G -> u_hat (noised) -> F -> v_rec.
  MappingCache cg_bwd, cf_bwd;
  const Matrix u_hat = g.Forward(v, &cg_bwd);
  const Matrix v_rec = f.Forward(u_hat, &cf_bwd);

  const MseResult nn = MseSeq(u_rec, u);
  const MseResult cc = MseSeq(v_rec, v);
  b.nn = nn.value;
  b.cc = cc.value;

  const bool adv = options.adversarial_terms;
  const DiscriminationResult dn = DiscriminationLoss(d_noisy, u, u_hat, adv);
  const DiscriminationResult dc = DiscriminationLoss(d_clean, v, v_hat, adv);
  b.dn = dn.log_likelihood;
  b.dc = dc.log_likelihood;

  // Masked identity terms are not evaluated, so they also need no bridge.
  const bool ident = options.identity_terms;
  if (ident) {
    b.in = IdentityLossNoisy(g, u, bridge, w.alpha4, &b.grad_g);
    b.ic = IdentityLossClean(f, v, bridge, w.alpha5, &b.grad_f);
  }

  CheckFinite(b.nn, "nn");
  CheckFinite(b.cc, "cc");
  CheckFinite(b.dn, "dn");
  CheckFinite(b.dc, "dc");
  CheckFinite(b.in, "in");
  CheckFinite(b.ic, "ic");

  b.total = 0.0;
  if (options.cycle_terms) b.total += b.nn + w.alpha1 * b.cc;
  if (adv) b.total += -w.alpha2 * b.dn - w.alpha3 * b.dc;
  if (ident) b.total += w.alpha4 * b.in + w.alpha5 * b.ic;

  Matrix d_v_hat = Matrix::Zero(v_hat.rows(), v_hat.cols());
  Matrix d_u_hat = Matrix::Zero(u_hat.rows(), u_hat.cols());
  if (options.cycle_terms) {
    d_v_hat += g.Backward(cg_fwd, nn.grad, &b.grad_g);
    if (w.alpha1 != 0.0) d_u_hat += f.Backward(cf_bwd, w.alpha1 * cc.grad, &b.grad_f);
  }
  if (adv) {
    b.grad_du.AddScaled(dn.param_grad, w.alpha2);
    b.grad_dv.AddScaled(dc.param_grad, w.alpha3);
    if (options.adversarial == AdversarialGradient::kReversed) {
      d_u_hat += ReverseGradient(dn.fake_input_grad, w.alpha2);
      d_v_hat += ReverseGradient(dc.fake_input_grad, w.alpha3);
    } else {
      d_u_hat += w.alpha2 * dn.fake_input_grad;
      d_v_hat += w.alpha3 * dc.fake_input_grad;
    }
  }
  if (options.cycle_terms || adv) {
    f.Backward(cf_fwd, d_v_hat, &b.grad_f);
    g.Backward(cg_bwd, d_u_hat, &b.grad_g);
  }
  return b;
}

}  // namespace cyclese
