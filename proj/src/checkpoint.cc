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

#include "cyclese/checkpoint.h"

#include <map>
#include <sstream>
#include <variant>

#include "cyclese/byte_io.h"
#include "cyclese/error.h"

namespace cyclese {
namespace {

enum RecordType : std::uint8_t { kTensor = 1, kBytes = 2, kU64 = 3, kF64 = 4 };

class RecordWriter {
 public:
  void Tensor(const std::string& name, const Matrix& m) {
    Header(kTensor, name);
    byte_io::PutU32(&body_, 2);
    byte_io::PutU32(&body_, static_cast<std::uint32_t>(m.rows()));
    byte_io::PutU32(&body_, static_cast<std::uint32_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) byte_io::PutF64(&body_, m(r, c));
    }
  }
  void Bytes(const std::string& name, const std::string& value) {
    Header(kBytes, name);
    byte_io::PutBytes(&body_, value);
  }
  void U64(const std::string& name, std::uint64_t v) {
    Header(kU64, name);
    byte_io::PutU64(&body_, v);
  }
  void F64(const std::string& name, double v) {
    Header(kF64, name);
    byte_io::PutF64(&body_, v);
  }
  void Params(const std::string& prefix, const ParameterSet& params) {
    for (const NamedTensor& t : params.tensors()) Tensor(prefix + t.name, t.value);
  }

  std::string Finish() const {
    std::string out = "CKP1";
    byte_io::PutU32(&out, kCheckpointVersion);
    byte_io::PutU32(&out, count_);
    return out + body_;
  }

 private:
  void Header(RecordType type, const std::string& name) {
    byte_io::PutU8(&body_, type);
    byte_io::PutBytes(&body_, name);
    ++count_;
  }

  std::string body_;
  std::uint32_t count_ = 0;
};

using Value = std::variant<Matrix, std::string, std::uint64_t, double>;

class RecordTable {
 public:
  explicit RecordTable(const std::string& bytes) {
    byte_io::Reader in(bytes, "CKP1");
    in.ExpectMagic("CKP1");
    const std::uint32_t version = in.U32();
    if (version != kCheckpointVersion) {
      throw Error(ErrorCode::kFormat, "CKP1: unsupported version " + std::to_string(version));
    }
    const std::uint32_t count = in.U32();
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::uint8_t type = in.U8();
      std::string name = in.Bytes();
      Value value;
      switch (type) {
        case kTensor: {
          const std::uint32_t rank = in.U32();
          if (rank != 2) throw Error(ErrorCode::kFormat, "CKP1: tensor rank must be 2");
          const std::uint32_t rows = in.U32(), cols = in.U32();
          Matrix m(rows, cols);
          for (std::uint32_t r = 0; r < rows; ++r) {
            for (std::uint32_t c = 0; c < cols; ++c) m(r, c) = in.F64();
          }
          value = std::move(m);
          break;
        }
        case kBytes: value = in.Bytes(); break;
        case kU64: value = in.U64(); break;
        case kF64: value = in.F64(); break;
        default: throw Error(ErrorCode::kFormat, "CKP1: unknown record type");
      }
      if (!records_.emplace(name, std::move(value)).second) {
        throw Error(ErrorCode::kFormat, "CKP1: duplicate record " + name);
      }
    }
    in.ExpectEnd();
  }

  bool Has(const std::string& name) const { return records_.count(name) > 0; }

  template <typename T>
  T Take(const std::string& name) {
    auto it = records_.find(name);
    if (it == records_.end()) throw Error(ErrorCode::kFormat, "CKP1: missing record " + name);
    T* v = std::get_if<T>(&it->second);
    if (v == nullptr) throw Error(ErrorCode::kFormat, "CKP1: record " + name + " has wrong type");
    T out = std::move(*v);
    records_.erase(it);
    return out;
  }

  int TakeInt(const std::string& name) { return static_cast<int>(Take<std::uint64_t>(name)); }

  void FillParams(const std::string& prefix, ParameterSet* params) {
    for (int i = 0; i < params->size(); ++i) {
      Matrix m = Take<Matrix>(prefix + params->name(i));
      if (m.rows() != (*params)[i].rows() || m.cols() != (*params)[i].cols()) {
        throw Error(ErrorCode::kFormat, "CKP1: shape mismatch for " + prefix + params->name(i));
      }
      (*params)[i] = std::move(m);
    }
  }

  void ExpectConsumed() const {
    if (!records_.empty()) {
      throw Error(ErrorCode::kFormat, "CKP1: unexpected record " + records_.begin()->first);
    }
  }

 private:
  std::map<std::string, Value> records_;
};

void WriteMappingSpec(RecordWriter* w, const std::string& role, const MappingSpec& s) {
  const std::string p = "spec." + role + ".";
  w->U64(p + "input_dim", s.input_dim);
  w->U64(p + "output_dim", s.output_dim);
  w->U64(p + "num_layers", s.num_layers);
  w->U64(p + "cell_dim", s.cell_dim);
  w->U64(p + "proj_dim", s.proj_dim);
}

MappingSpec ReadMappingSpec(RecordTable* t, const std::string& role) {
  const std::string p = "spec." + role + ".";
  MappingSpec s;
  s.input_dim = t->TakeInt(p + "input_dim");
  s.output_dim = t->TakeInt(p + "output_dim");
  s.num_layers = t->TakeInt(p + "num_layers");
  s.cell_dim = t->TakeInt(p + "cell_dim");
  s.proj_dim = t->TakeInt(p + "proj_dim");
  return s;
}

void WriteDiscSpec(RecordWriter* w, const std::string& role, const DiscriminatorSpec& s) {
  const std::string p = "spec." + role + ".";
  w->U64(p + "input_dim", s.input_dim);
  w->U64(p + "hidden_dim", s.hidden_dim);
  w->U64(p + "num_hidden", s.num_hidden);
}

DiscriminatorSpec ReadDiscSpec(RecordTable* t, const std::string& role) {
  const std::string p = "spec." + role + ".";
  DiscriminatorSpec s;
  s.input_dim = t->TakeInt(p + "input_dim");
  s.hidden_dim = t->TakeInt(p + "hidden_dim");
  s.num_hidden = t->TakeInt(p + "num_hidden");
  return s;
}

}  // namespace

std::string EncodeCheckpoint(const TrainState& state) {
  RecordWriter w;
  w.U64("epochs_done", static_cast<std::uint64_t>(state.epochs_done));
  WriteMappingSpec(&w, "F", state.f.spec());
  WriteMappingSpec(&w, "G", state.g.spec());
  w.Params("F/", state.f.params());
  w.Params("G/", state.g.params());
  if (state.d_noisy) {
    WriteDiscSpec(&w, "D_U", state.d_noisy->spec());
    w.Params("D_U/", state.d_noisy->params());
  }
  if (state.d_clean) {
    WriteDiscSpec(&w, "D_V", state.d_clean->spec());
    w.Params("D_V/", state.d_clean->params());
  }
  w.F64("opt.learning_rate", state.optimizer.config.learning_rate);
  w.F64("opt.momentum", state.optimizer.config.momentum);
  w.F64("opt.clip_norm", state.optimizer.config.clip_norm);
  std::string roles;
  for (const auto& [role, velocity] : state.optimizer.velocity) {
    roles += role + "\n";
    w.Params("opt.velocity/" + role + "/", velocity);
  }
  w.Bytes("opt.velocity_roles", roles);
  if (state.noisy_stats) {
    w.Tensor("stats.noisy.mean", state.noisy_stats->mean);
    w.Tensor("stats.noisy.std", state.noisy_stats->std);
  }
  if (state.clean_stats) {
    w.Tensor("stats.clean.mean", state.clean_stats->mean);
    w.Tensor("stats.clean.std", state.clean_stats->std);
  }
  std::ostringstream rng;
  rng << state.rng;
  w.Bytes("rng", rng.str());
  return w.Finish();
}

TrainState DecodeCheckpoint(const std::string& bytes) {
  RecordTable t(bytes);
  TrainState state(ReadMappingSpec(&t, "F"), ReadMappingSpec(&t, "G"));
  state.epochs_done = t.TakeInt("epochs_done");
  t.FillParams("F/", &state.f.params());
  t.FillParams("G/", &state.g.params());
  if (t.Has("spec.D_U.input_dim")) {
    state.d_noisy.emplace(ReadDiscSpec(&t, "D_U"));
    t.FillParams("D_U/", &state.d_noisy->params());
  }
  if (t.Has("spec.D_V.input_dim")) {
    state.d_clean.emplace(ReadDiscSpec(&t, "D_V"));
    t.FillParams("D_V/", &state.d_clean->params());
  }
  state.optimizer.config.learning_rate = t.Take<double>("opt.learning_rate");
  state.optimizer.config.momentum = t.Take<double>("opt.momentum");
  state.optimizer.config.clip_norm = t.Take<double>("opt.clip_norm");
  std::istringstream roles(t.Take<std::string>("opt.velocity_roles"));
  std::string role;
  while (std::getline(roles, role)) {
    const ParameterSet* shape = nullptr;
    if (role == "F") shape = &state.f.params();
    if (role == "G") shape = &state.g.params();
    if (role == "D_U" && state.d_noisy) shape = &state.d_noisy->params();
    if (role == "D_V" && state.d_clean) shape = &state.d_clean->params();
    if (shape == nullptr) throw Error(ErrorCode::kFormat, "CKP1: unknown optimizer role " + role);
    ParameterSet velocity = shape->ZerosLike();
    t.FillParams("opt.velocity/" + role + "/", &velocity);
    state.optimizer.velocity.emplace(role, std::move(velocity));
  }
  for (const char* stream : {"noisy", "clean"}) {
    const std::string p = std::string("stats.") + stream + ".";
    if (!t.Has(p + "mean")) continue;
    NormStats s;
    s.mean = t.Take<Matrix>(p + "mean").col(0);
    s.std = t.Take<Matrix>(p + "std").col(0);
    (std::string(stream) == "noisy" ? state.noisy_stats : state.clean_stats) = std::move(s);
  }
  std::istringstream rng(t.Take<std::string>("rng"));
  rng >> state.rng;
  if (!rng) throw Error(ErrorCode::kFormat, "CKP1: bad rng state");
  t.ExpectConsumed();
  return state;
}

void SaveCheckpoint(const std::string& path, const TrainState& state) {
  byte_io::WriteFile(path, EncodeCheckpoint(state));
}

TrainState LoadCheckpoint(const std::string& path) {
  return DecodeCheckpoint(byte_io::ReadFile(path));
}

}  // namespace cyclese
