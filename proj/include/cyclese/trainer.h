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

#ifndef CYCLESE_TRAINER_H_
#define CYCLESE_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cyclese/discriminator.h"
#include "cyclese/feature_bridge.h"
#include "cyclese/features.h"
#include "cyclese/losses.h"
#include "cyclese/mapping_network.h"
#include "cyclese/optimizer.h"

namespace cyclese {

enum class Regime {
  kBaseline,    // F on the noisy-to-clean mapping loss only
  kCseForward,  // staged, ending with the forward cycle
  kCseFull,     // staged, ending with both cycles
  kAcse,        // self-mapping initialization, then adversarial joint training
};

enum class StageKind {
  kNoisyToClean,
  kCleanToNoisy,
  kForwardCycle,
  kFullCycle,
  kAcseInit,
  kAcseJoint,
};

const char* RegimeName(Regime regime);
Regime ParseRegime(const std::string& name);
const char* StageName(StageKind stage);

struct TrainConfig {
  Regime regime = Regime::kCseFull;

  int baseline_epochs = 30;
  int cse_nc_epochs = 5;
  int cse_cn_epochs = 5;
  int cse_forward_epochs = 10;
  int cse_full_epochs = 10;
  int acse_init_epochs = 5;
  int acse_joint_epochs = 20;

  std::uint64_t seed = 1;
  CseWeights cse;
  AcseWeights acse;
  SgdConfig sgd;
  int eval_every = 1;
  int delta_window = 2;

  MappingSpec f_spec = MappingSpec::NoisyToClean();
  MappingSpec g_spec = MappingSpec::CleanToNoisy();
  DiscriminatorSpec d_noisy_spec = DiscriminatorSpec::Noisy();
  DiscriminatorSpec d_clean_spec = DiscriminatorSpec::Clean();

  // One tab-separated line per epoch is appended here when non-empty.
  std::string log_path;

  void Validate() const;
};

struct Stage {
  StageKind kind;
  int epochs;
};

// Baseline: [noisy-to-clean x baseline_epochs].
// CSE full: [noisy-to-clean, clean-to-noisy, forward cycle, full cycle].
// CSE forward: as full, with the full-cycle epochs spent on the forward
// cycle so both variants train for the same number of epochs.
// ACSE: [init, joint].
std::vector<Stage> BuildSchedule(const TrainConfig& cfg);
int TotalEpochs(const std::vector<Stage>& schedule);

// Normalized features of one synchronized utterance pair.
struct ParallelPair {
  std::string id;
  Matrix noisy;  // T x 87
  Matrix clean;  // T x 29
};

struct TrainingData {
  std::vector<ParallelPair> parallel;  // baseline / CSE
  std::vector<Matrix> noisy;           // ACSE noisy set, T_u x 87
  std::vector<Matrix> clean;           // ACSE clean set, T_v x 29
  std::vector<ParallelPair> heldout;   // evaluation only
};

// Everything needed to resume training bit-exactly.
struct TrainState {
  TrainState(const MappingSpec& f_spec, const MappingSpec& g_spec)
      : f(f_spec), g(g_spec) {}

  MappingNetwork f;
  MappingNetwork g;
  std::optional<Discriminator> d_noisy;
  std::optional<Discriminator> d_clean;
  OptimizerState optimizer;
  std::mt19937_64 rng;
  int epochs_done = 0;
  std::optional<NormStats> noisy_stats;
  std::optional<NormStats> clean_stats;
};

// Fresh networks seeded from cfg.seed; discriminators only for ACSE.
TrainState InitTrainState(const TrainConfig& cfg,
                          std::optional<NormStats> noisy_stats = std::nullopt,
                          std::optional<NormStats> clean_stats = std::nullopt);

struct EpochRecord {
  int epoch = 0;  // 1-based, global across stages
  StageKind stage = StageKind::kNoisyToClean;
  std::vector<std::pair<std::string, double>> train;    // mean per step
  std::vector<std::pair<std::string, double>> heldout;  // empty when skipped

  double Train(const std::string& name) const;
  double Heldout(const std::string& name) const;
  std::string ToLogLine() const;
};
using History = std::vector<EpochRecord>;

struct StepEvent {
  int epoch;
  StageKind stage;
  int step;
  const LossBundle& losses;
};

struct RunOptions {
  // Stop once this many epochs are done in total; -1 runs the schedule out.
  int stop_after_epoch = -1;
  std::function<void(const StepEvent&)> observer;
};

// Resumes the schedule at state->epochs_done. Utterance order is shuffled
// per epoch from state->rng; batch size is one utterance (or one noisy
// and one clean utterance for ACSE).
History RunTraining(const TrainConfig& cfg, const TrainingData& data, TrainState* state,
                    const RunOptions& options = {});

// Regime-specific entry points; each overrides cfg.regime.
History TrainBaseline(TrainConfig cfg, const TrainingData& data, TrainState* state);
History TrainCse(TrainConfig cfg, const TrainingData& data, TrainState* state,
                 bool full_cycle = true);
History TrainAcse(TrainConfig cfg, const TrainingData& data, TrainState* state);

// One ACSE joint step split in its two phases. Phase (a) updates only the
// discriminators; phase (b) only F and G.
LossBundle AcseDiscriminatorStep(const TrainConfig& cfg, const Matrix& u, const Matrix& v,
                                 TrainState* state);
LossBundle AcseMappingStep(const TrainConfig& cfg, const Matrix& u, const Matrix& v,
                           const FeatureBridge& bridge, TrainState* state);

// Held-out metrics: "nc" in the normalized domain, plus "mse" (raw
// log-mel frame MSE of enhanced vs clean) and "passthrough_mse" when both
// stats are known.
std::vector<std::pair<std::string, double>> EvaluateHeldout(
    const TrainState& state, const std::vector<ParallelPair>& heldout);

// Runs F on normalized noisy features and de-normalizes the result with
// the clean-stream stats. Throws kState when `clean_stats` is null.
FeatureSequence Enhance(const MappingNetwork& f, const FeatureSequence& noisy_normalized,
                        const NormStats* clean_stats);

}  // namespace cyclese

#endif  // CYCLESE_TRAINER_H_
