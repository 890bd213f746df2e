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

#include "cyclese/discriminator.h"

#include <cmath>
#include <random>
#include <string>

#include "cyclese/error.h"

namespace cyclese {

DiscriminatorSpec DiscriminatorSpec::Noisy() { return DiscriminatorSpec{}; }

DiscriminatorSpec DiscriminatorSpec::Clean() {
  DiscriminatorSpec spec;
  spec.input_dim = kStaticDim;
  return spec;
}

void DiscriminatorSpec::Validate() const {
  if (input_dim < 1 || hidden_dim < 1 || num_hidden < 1) {
    throw Error(ErrorCode::kConfig, "discriminator dimensions must be positive");
  }
}

Discriminator::Discriminator(const DiscriminatorSpec& spec) : spec_(spec) {
  spec_.Validate();
  int in = spec_.input_dim;
  for (int l = 0; l < spec_.num_hidden; ++l) {
    const std::string prefix = "hidden" + std::to_string(l) + ".";
    hidden_w_.push_back(params_.Add(prefix + "w", Matrix::Zero(spec_.hidden_dim, in)));
    hidden_b_.push_back(params_.Add(prefix + "b", Matrix::Zero(spec_.hidden_dim, 1)));
    in = spec_.hidden_dim;
  }
  out_w_ = params_.Add("out.w", Matrix::Zero(1, in));
  out_b_ = params_.Add("out.b", Matrix::Zero(1, 1));
}

Discriminator Discriminator::Initialized(const DiscriminatorSpec& spec,
                                         std::uint64_t seed) {
  Discriminator d(spec);
  std::mt19937_64 rng(seed);
  auto fill = [&rng](Matrix* w) {
    const double r = std::sqrt(6.0 / static_cast<double>(w->rows() + w->cols()));
    std::uniform_real_distribution<double> dist(-r, r);
    for (Eigen::Index k = 0; k < w->size(); ++k) w->data()[k] = dist(rng);
  };
  for (int idx : d.hidden_w_) fill(&d.params_[idx]);
  fill(&d.params_[d.out_w_]);
  return d;
}

Vector Discriminator::Forward(const Matrix& frames, DiscriminatorCache* cache) const {
  if (frames.cols() != spec_.input_dim) {
    throw Error(ErrorCode::kDimension,
                "discriminator expects " + std::to_string(spec_.input_dim) +
                    "-dim frames, got " + std::to_string(frames.cols()));
  }
  DiscriminatorCache local;
  DiscriminatorCache& c = cache ? *cache : local;
  c.input = frames.transpose();
  c.pre.resize(spec_.num_hidden);
  c.activation.resize(spec_.num_hidden);
  const Matrix* x = &c.input;
  for (int l = 0; l < spec_.num_hidden; ++l) {
    c.pre[l].noalias() = params_[hidden_w_[l]] * *x;
    c.pre[l].colwise() += params_[hidden_b_[l]].col(0);
    c.activation[l] = c.pre[l].cwiseMax(0.0);
    x = &c.activation[l];
  }
  const Eigen::RowVectorXd logits =
      (params_[out_w_] * *x).row(0).array() + params_[out_b_](0, 0);
  c.posterior = (1.0 / (1.0 + (-logits.array()).exp())).transpose();
  return c.posterior;
}

double Discriminator::Forward(const Vector& frame) const {
  return Forward(Matrix(frame.transpose()))[0];
}

Matrix Discriminator::Backward(const DiscriminatorCache& cache,
                               const Vector& posterior_grads,
                               ParameterSet* grads) const {
  const Eigen::Index frames = cache.input.cols();
  if (posterior_grads.size() != frames || cache.posterior.size() != frames ||
      static_cast<int>(cache.activation.size()) != spec_.num_hidden) {
    throw Error(ErrorCode::kState, "discriminator cache/gradient mismatch");
  }
  if (grads == nullptr || !grads->SameShape(params_)) {
    throw Error(ErrorCode::kState, "gradient buffer does not match parameters");
  }
  const Eigen::RowVectorXd d_logit =
      (posterior_grads.array() * cache.posterior.array() *
       (1.0 - cache.posterior.array()))
          .matrix()
          .transpose();
  const Matrix& top = cache.activation.back();
  (*grads)[out_w_].noalias() += d_logit * top.transpose();
  (*grads)[out_b_](0, 0) += d_logit.sum();
  Matrix d_act = params_[out_w_].transpose() * d_logit;
  for (int l = spec_.num_hidden - 1; l >= 0; --l) {
    const Matrix d_pre =
        (cache.pre[l].array() > 0.0).select(d_act, Matrix::Zero(d_act.rows(), d_act.cols()));
    const Matrix& below = l == 0 ? cache.input : cache.activation[l - 1];
    (*grads)[hidden_w_[l]].noalias() += d_pre * below.transpose();
    (*grads)[hidden_b_[l]] += d_pre.rowwise().sum();
    d_act = params_[hidden_w_[l]].transpose() * d_pre;
  }
  return d_act.transpose();
}

}  // namespace cyclese
