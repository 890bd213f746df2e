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

#include "cyclese/parameters.h"

#include <utility>

#include "cyclese/error.h"

namespace cyclese {

int ParameterSet::Add(std::string name, Matrix value) {
  if (Find(name) >= 0) throw Error(ErrorCode::kState, "duplicate tensor " + name);
  tensors_.push_back({std::move(name), std::move(value)});
  return size() - 1;
}

int ParameterSet::Find(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (tensors_[i].name == name) return i;
  }
  return -1;
}

ParameterSet ParameterSet::ZerosLike() const {
  ParameterSet out;
  for (const auto& t : tensors_) {
    out.tensors_.push_back({t.name, Matrix::Zero(t.value.rows(), t.value.cols())});
  }
  return out;
}

void ParameterSet::SetZero() {
  for (auto& t : tensors_) t.value.setZero();
}

bool ParameterSet::SameShape(const ParameterSet& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i) {
    const auto& a = tensors_[i];
    const auto& b = other.tensors_[i];
    if (a.name != b.name || a.value.rows() != b.value.rows() ||
        a.value.cols() != b.value.cols()) {
      return false;
    }
  }
  return true;
}

std::int64_t ParameterSet::NumScalars() const {
  std::int64_t n = 0;
  for (const auto& t : tensors_) n += t.value.size();
  return n;
}

std::pair<int, std::int64_t> ParameterSet::Locate(std::int64_t index) const {
  for (int i = 0; i < size(); ++i) {
    const std::int64_t n = tensors_[i].value.size();
    if (index < n) return {i, index};
    index -= n;
  }
  throw Error(ErrorCode::kState, "flat parameter index out of range");
}

double& ParameterSet::Scalar(std::int64_t index) {
  auto [t, k] = Locate(index);
  return tensors_[t].value.data()[k];
}

double ParameterSet::Scalar(std::int64_t index) const {
  auto [t, k] = Locate(index);
  return tensors_[t].value.data()[k];
}

const std::string& ParameterSet::ScalarOwner(std::int64_t index) const {
  return tensors_[Locate(index).first].name;
}

void ParameterSet::AddScaled(const ParameterSet& other, double scale) {
  if (!SameShape(other)) throw Error(ErrorCode::kState, "parameter shape mismatch");
  for (int i = 0; i < size(); ++i) tensors_[i].value += scale * other.tensors_[i].value;
}

void ParameterSet::Scale(double factor) {
  for (auto& t : tensors_) t.value *= factor;
}

double ParameterSet::SquaredNorm() const {
  double s = 0.0;
  for (const auto& t : tensors_) s += t.value.squaredNorm();
  return s;
}

bool ParameterSet::AllFinite() const {
  for (const auto& t : tensors_) {
    if (!t.value.allFinite()) return false;
  }
  return true;
}

bool ParameterSet::operator==(const ParameterSet& other) const {
  if (!SameShape(other)) return false;
  for (int i = 0; i < size(); ++i) {
    if (tensors_[i].value != other.tensors_[i].value) return false;
  }
  return true;
}

}  // namespace cyclese
