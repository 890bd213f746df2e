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

#include "cyclese/grad_check_suite.h"

#include <functional>
#include <random>

#include "cyclese/discriminator.h"
#include "cyclese/losses.h"
#include "cyclese/mapping_network.h"

namespace cyclese {
namespace {

// Small widths and short sequences keep the loss near unit scale, so
// central-difference roundoff stays well under the tolerance even for the
// smallest gradient entries.
constexpr int kTinyStatic = 2;
constexpr int kTinyAugmented = 3 * kTinyStatic;

MappingSpec TinyMapping(int in, int out) {
  MappingSpec s;
  s.input_dim = in;
  s.output_dim = out;
  s.num_layers = 2;
  s.cell_dim = 8;
  s.proj_dim = 4;
  return s;
}

DiscriminatorSpec TinyDisc(int in) {
  DiscriminatorSpec s;
  s.input_dim = in;
  s.hidden_dim = 16;
  s.num_hidden = 2;
  return s;
}

Matrix Gaussian(int rows, int cols, std::mt19937_64* rng) {
  std::normal_distribution<double> dist(0.0, 0.5);
  Matrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = dist(*rng);
  return m;
}

// Randomize biases too so gradients of every tensor are generic.
void Perturb(ParameterSet* p, std::mt19937_64* rng) {
  std::normal_distribution<double> dist(0.0, 0.5);
  for (int i = 0; i < p->size(); ++i) {
    Matrix& m = (*p)[i];
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] += dist(*rng);
  }
}

}  // namespace

std::vector<GradCheckCase> RunGradCheckSuite(std::uint64_t seed,
                                             const GradCheckOptions& options) {
  std::mt19937_64 rng(seed);
  MappingNetwork f = MappingNetwork::Initialized(TinyMapping(kTinyAugmented, kTinyStatic), seed + 1);
  MappingNetwork g = MappingNetwork::Initialized(TinyMapping(kTinyStatic, kTinyAugmented), seed + 2);
  Discriminator du = Discriminator::Initialized(TinyDisc(kTinyAugmented), seed + 3);
  Discriminator dv = Discriminator::Initialized(TinyDisc(kTinyStatic), seed + 4);
  Perturb(&f.params(), &rng);
  Perturb(&g.params(), &rng);
  Perturb(&du.params(), &rng);
  Perturb(&dv.params(), &rng);

  const Matrix x = Gaussian(4, kTinyAugmented, &rng);
  const Matrix y = Gaussian(4, kTinyStatic, &rng);
  const Matrix u = Gaussian(4, kTinyAugmented, &rng);
  const Matrix v = Gaussian(3, kTinyStatic, &rng);
  const Matrix target_f = Gaussian(4, kTinyStatic, &rng);
  const Matrix target_g = Gaussian(4, kTinyAugmented, &rng);
  const FeatureBridge bridge;
  const CseWeights cse;
  const AcseWeights acse;
  AcseOptions exact;
  exact.adversarial = AdversarialGradient::kExact;

  std::vector<GradCheckCase> cases;
  auto check = [&](const std::string& name, const std::string& net, ParameterSet* params,
                   const ParameterSet& analytic, const std::function<double()>& loss) {
    cases.push_back({name, net, GradCheck(params, analytic, loss, options)});
  };

  {
    ParameterSet gf = f.params().ZerosLike();
    LossNc(f, x, target_f, 1.0, &gf);
    check("mapping_mse", "F", &f.params(), gf, [&] { return LossNc(f, x, target_f); });
    ParameterSet gg = g.params().ZerosLike();
    LossNc(g, y, target_g, 1.0, &gg);
    check("mapping_mse", "G", &g.params(), gg, [&] { return LossNc(g, y, target_g); });
  }
  for (auto* d : {&du, &dv}) {
    const bool noisy = d == &du;
    const Matrix& real = noisy ? u : v;
    const Matrix fake = noisy ? Gaussian(3, kTinyAugmented, &rng) : Gaussian(3, kTinyStatic, &rng);
    const DiscriminationResult r = DiscriminationLoss(*d, real, fake);
    // param_grad is the gradient of the cross-entropy -log_likelihood.
    check("discriminator_xent", noisy ? "D_U" : "D_V", &d->params(), r.param_grad,
          [&] { return -DiscriminationLoss(*d, real, fake, false).log_likelihood; });
  }
  {
    ParameterSet gf = f.params().ZerosLike();
    LossNc(f, x, y, 1.0, &gf);
    check("loss_nc", "F", &f.params(), gf, [&] { return LossNc(f, x, y); });
    ParameterSet gg = g.params().ZerosLike();
    LossCn(g, y, x, 1.0, &gg);
    check("loss_cn", "G", &g.params(), gg, [&] { return LossCn(g, y, x); });
  }
  {
    ParameterSet gf = f.params().ZerosLike(), gg = g.params().ZerosLike();
    LossNn(f, g, x, 1.0, &gf, &gg);
    auto loss = [&] { return LossNn(f, g, x); };
    check("loss_nn", "F", &f.params(), gf, loss);
    check("loss_nn", "G", &g.params(), gg, loss);
  }
  {
    ParameterSet gf = f.params().ZerosLike(), gg = g.params().ZerosLike();
    LossCc(g, f, y, 1.0, &gg, &gf);
    auto loss = [&] { return LossCc(g, f, y); };
    check("loss_cc", "F", &f.params(), gf, loss);
    check("loss_cc", "G", &g.params(), gg, loss);
  }
  {
    // Fake frames come from the mapping networks, so the loss depends on
    // both the discriminator and the generator of its side.
    auto dn_loss = [&] { return DiscriminationLoss(du, u, g.Forward(v), false).log_likelihood; };
    auto dc_loss = [&] { return DiscriminationLoss(dv, v, f.Forward(u), false).log_likelihood; };
    AcseOptions only_adv = exact;
    only_adv.cycle_terms = false;
    only_adv.identity_terms = false;
    AcseWeights unit{0.0, 1.0, 0.0, 0.0, 0.0};
    LossBundle b = AcseTotal(f, g, du, dv, u, v, unit, bridge, only_adv);
    // total = -dn here, so its gradients are those of -dn.
    auto neg_dn = [&] { return -dn_loss(); };
    check("loss_dn", "D_U", &du.params(), b.grad_du, neg_dn);
    check("loss_dn", "G", &g.params(), b.grad_g, neg_dn);
    unit = {0.0, 0.0, 1.0, 0.0, 0.0};
    b = AcseTotal(f, g, du, dv, u, v, unit, bridge, only_adv);
    auto neg_dc = [&] { return -dc_loss(); };
    check("loss_dc", "D_V", &dv.params(), b.grad_dv, neg_dc);
    check("loss_dc", "F", &f.params(), b.grad_f, neg_dc);
  }
  {
    ParameterSet gg = g.params().ZerosLike();
    IdentityLossNoisy(g, u, bridge, 1.0, &gg);
    check("loss_in", "G", &g.params(), gg, [&] { return IdentityLossNoisy(g, u, bridge); });
    ParameterSet gf = f.params().ZerosLike();
    IdentityLossClean(f, v, bridge, 1.0, &gf);
    check("loss_ic", "F", &f.params(), gf, [&] { return IdentityLossClean(f, v, bridge); });
  }
  {
    const LossBundle b = CseTotal(f, g, x, y, cse);
    auto loss = [&] { return CseTotal(f, g, x, y, cse).total; };
    check("cse_total", "F", &f.params(), b.grad_f, loss);
    check("cse_total", "G", &g.params(), b.grad_g, loss);
  }
  {
    const LossBundle b = AcseTotal(f, g, du, dv, u, v, acse, bridge, exact);
    auto loss = [&] { return AcseTotal(f, g, du, dv, u, v, acse, bridge, exact).total; };
    check("acse_total", "F", &f.params(), b.grad_f, loss);
    check("acse_total", "G", &g.params(), b.grad_g, loss);
    check("acse_total", "D_U", &du.params(), b.grad_du, loss);
    check("acse_total", "D_V", &dv.params(), b.grad_dv, loss);
  }
  return cases;
}

}  // namespace cyclese
