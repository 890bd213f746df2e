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

#ifndef CYCLESE_PARAMETERS_H_
#define CYCLESE_PARAMETERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cyclese/feature_sequence.h"

namespace cyclese {

struct NamedTensor {
  std::string name;
  Matrix value;  // vectors are stored as n x 1
};

// Ordered collection of named tensors. Gradients and optimizer buffers use
// the same type, created with ZerosLike(), so shapes always line up.
class ParameterSet {
 public:
  int Add(std::string name, Matrix value);

  int size() const { return static_cast<int>(tensors_.size()); }
  Matrix& operator[](int i) { return tensors_[i].value; }
  const Matrix& operator[](int i) const { return tensors_[i].value; }
  const std::string& name(int i) const { return tensors_[i].name; }
  const std::vector<NamedTensor>& tensors() const { return tensors_; }

  // -1 if absent.
  int Find(const std::string& name) const;

  ParameterSet ZerosLike() const;
  void SetZero();
  bool SameShape(const ParameterSet& other) const;

  std::int64_t NumScalars() const;
  // Flat view across tensors in declaration order, column-major within
  // each tensor.
  double& Scalar(std::int64_t index);
  double Scalar(std::int64_t index) const;
  // Tensor name owning a flat index.
  const std::string& ScalarOwner(std::int64_t index) const;

  // this += scale * other. Shapes must agree.
  void AddScaled(const ParameterSet& other, double scale);
  void Scale(double factor);
  double SquaredNorm() const;
  bool AllFinite() const;

  bool operator==(const ParameterSet& other) const;

 private:
  std::pair<int, std::int64_t> Locate(std::int64_t index) const;

  std::vector<NamedTensor> tensors_;
};

}  // namespace cyclese

#endif  // CYCLESE_PARAMETERS_H_
