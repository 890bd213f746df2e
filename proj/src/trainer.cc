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

#include "cyclese/trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "cyclese/error.h"
#include "cyclese/metrics.h"
#include "cyclese/seeding.h"

namespace cyclese {

const char* RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kBaseline: return "baseline";
    case Regime::kCseForward: return "cse-forward";
    case Regime::kCseFull: return "cse";
    case Regime::kAcse: return "acse";
  }
  return "unknown";
}

Regime ParseRegime(const std::string& name) {
  if (name == "baseline") return Regime::kBaseline;
  if (name == "cse" || name == "cse-full") return Regime::kCseFull;
  if (name == "cse-forward") return Regime::kCseForward;
  if (name == "acse") return Regime::kAcse;
  throw Error(ErrorCode::kConfig, "unknown regime '" + name + "'");
}

const char* StageName(StageKind stage) {
  switch (stage) {
    case StageKind::kNoisyToClean: return "noisy_to_clean";
    case StageKind::kCleanToNoisy: return "clean_to_noisy";
    case StageKind::kForwardCycle: return "forward_cycle";
    case StageKind::kFullCycle: return "full_cycle";
    case StageKind::kAcseInit: return "acse_init";
    case StageKind::kAcseJoint: return "acse_joint";
  }
  return "unknown";
}

void TrainConfig::Validate() const {
  for (int e : {baseline_epochs, cse_nc_epochs, cse_cn_epochs, cse_forward_epochs,
                cse_full_epochs, acse_init_epochs, acse_joint_epochs}) {
    if (e < 0) throw Error(ErrorCode::kConfig, "epoch counts must be >= 0");
  }
  if (eval_every < 0) throw Error(ErrorCode::kConfig, "eval_every must be >= 0");
  if (delta_window < 1) throw Error(ErrorCode::kConfig, "delta window must be >= 1");
  cse.Validate();
  acse.Validate();
  sgd.Validate();
  f_spec.Validate();
  g_spec.Validate();
  d_noisy_spec.Validate();
  d_clean_spec.Validate();
  if (f_spec.input_dim != g_spec.output_dim || f_spec.output_dim != g_spec.input_dim) {
    throw Error(ErrorCode::kConfig, "F and G must map between the same two spaces");
  }
  if (d_noisy_spec.input_dim != f_spec.input_dim ||
      d_clean_spec.input_dim != f_spec.output_dim) {
    throw Error(ErrorCode::kConfig, "discriminator inputs must match the feature spaces");
  }
}

std::vector<Stage> BuildSchedule(const TrainConfig& cfg) {
  switch (cfg.regime) {
    case Regime::kBaseline:
      return {{StageKind::kNoisyToClean, cfg.baseline_epochs}};
    case Regime::kCseForward:
      return {{StageKind::kNoisyToClean, cfg.cse_nc_epochs},
              {StageKind::kCleanToNoisy, cfg.cse_cn_epochs},
              {StageKind::kForwardCycle, cfg.cse_forward_epochs + cfg.cse_full_epochs}};
    case Regime::kCseFull:
      return {{StageKind::kNoisyToClean, cfg.cse_nc_epochs},
              {StageKind::kCleanToNoisy, cfg.cse_cn_epochs},
              {StageKind::kForwardCycle, cfg.cse_forward_epochs},
              {StageKind::kFullCycle, cfg.cse_full_epochs}};
    case Regime::kAcse:
      return {{StageKind::kAcseInit, cfg.acse_init_epochs},
              {StageKind::kAcseJoint, cfg.acse_joint_epochs}};
  }
  return {};
}

int TotalEpochs(const std::vector<Stage>& schedule) {
  int n = 0;
  for (const Stage& s : schedule) n += s.epochs;
  return n;
}

TrainState InitTrainState(const TrainConfig& cfg, std::optional<NormStats> noisy_stats,
                          std::optional<NormStats> clean_stats) {
  cfg.Validate();
  TrainState state(cfg.f_spec, cfg.g_spec);
  state.f = MappingNetwork::Initialized(cfg.f_spec, DeriveSeed(cfg.seed, 1));
  state.g = MappingNetwork::Initialized(cfg.g_spec, DeriveSeed(cfg.seed, 2));
  if (cfg.regime == Regime::kAcse) {
    state.d_noisy = Discriminator::Initialized(cfg.d_noisy_spec, DeriveSeed(cfg.seed, 3));
    state.d_clean = Discriminator::Initialized(cfg.d_clean_spec, DeriveSeed(cfg.seed, 4));
  }
  state.optimizer.config = cfg.sgd;
  state.rng.seed(DeriveSeed(cfg.seed, 5));
  state.noisy_stats = std::move(noisy_stats);
  state.clean_stats = std::move(clean_stats);
  return state;
}

namespace {

double Lookup(const std::vector<std::pair<std::string, double>>& kv,
              const std::string& name) {
  for (const auto& [k, v] : kv) {
    if (k == name) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double EpochRecord::Train(const std::string& name) const { return Lookup(train, name); }
double EpochRecord::Heldout(const std::string& name) const { return Lookup(heldout, name); }

std::string EpochRecord::ToLogLine() const {
  std::ostringstream os;
  os << std::setprecision(17) << epoch << '\t' << StageName(stage);
  for (const auto& [k, v] : train) os << '\t' << k << '=' << v;
  for (const auto& [k, v] : heldout) os << '\t' << "heldout_" << k << '=' << v;
  return os.str();
}

namespace {

std::vector<int> Shuffled(int n, std::mt19937_64* rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), *rng);
  return order;
}

// Running per-name means over an epoch's steps.
class LossAverager {
 public:
  void Add(const std::vector<std::pair<std::string, double>>& values) {
    if (sums_.empty()) {
      sums_ = values;
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) sums_[i].second += values[i].second;
    }
    ++count_;
  }
  std::vector<std::pair<std::string, double>> Means() const {
    auto out = sums_;
    for (auto& kv : out) kv.second /= std::max(count_, 1);
    return out;
  }

 private:
  std::vector<std::pair<std::string, double>> sums_;
  int count_ = 0;
};

FeatureBridge MakeBridge(const TrainConfig& cfg, const TrainState& state) {
  if (state.noisy_stats && state.clean_stats) {
    return FeatureBridge(*state.noisy_stats, *state.clean_stats, cfg.delta_window);
  }
  return FeatureBridge();
}

void RequireParallel(const TrainingData& data) {
  if (data.parallel.empty()) throw Error(ErrorCode::kData, "empty parallel corpus");
  for (const ParallelPair& p : data.parallel) {
    if (p.noisy.rows() != p.clean.rows()) {
      throw Error(ErrorCode::kData, "utterance " + p.id + ": noisy has " +
                                        std::to_string(p.noisy.rows()) +
                                        " frames, clean has " +
                                        std::to_string(p.clean.rows()));
    }
  }
}

void RequireUnparallel(const TrainingData& data) {
  if (data.noisy.empty()) throw Error(ErrorCode::kData, "empty noisy set");
  if (data.clean.empty()) throw Error(ErrorCode::kData, "empty clean set");
}

void Notify(const RunOptions& options, int epoch, StageKind stage, int step,
            const LossBundle& b) {
  if (options.observer) options.observer(StepEvent{epoch, stage, step, b});
}

void RunParallelEpoch(const TrainConfig& cfg, const TrainingData& data, StageKind stage,
                      int epoch, TrainState* state, const RunOptions& options,
                      LossAverager* avg) {
  const std::vector<int> order = Shuffled(static_cast<int>(data.parallel.size()), &state->rng);
  int step = 0;
  for (int idx : order) {
    const ParallelPair& pair = data.parallel[idx];
    LossBundle b;
    std::vector<std::pair<std::string, double>> logged;
    switch (stage) {
      case StageKind::kNoisyToClean: {
        b.grad_f = state->f.params().ZerosLike();
        b.nc = LossNc(state->f, pair.noisy, pair.clean, 1.0, &b.grad_f);
        b.total = b.nc;
        SgdStep("F", b.grad_f, &state->f.params(), &state->optimizer);
        logged = {{"nc", b.nc}, {"total", b.total}};
        break;
      }
      case StageKind::kCleanToNoisy: {
        b.grad_g = state->g.params().ZerosLike();
        b.cn = LossCn(state->g, pair.clean, pair.noisy, 1.0, &b.grad_g);
        b.total = b.cn;
        SgdStep("G", b.grad_g, &state->g.params(), &state->optimizer);
        logged = {{"cn", b.cn}, {"total", b.total}};
        break;
      }
      case StageKind::kForwardCycle:
      case StageKind::kFullCycle: {
        CseWeights w = cfg.cse;
        if (stage == StageKind::kForwardCycle) w.lambda3 = 0.0;
        b = CseTotal(state->f, state->g, pair.noisy, pair.clean, w);
        SgdStep("F", b.grad_f, &state->f.params(), &state->optimizer);
        SgdStep("G", b.grad_g, &state->g.params(), &state->optimizer);
        logged = {{"nc", b.nc}, {"cn", b.cn}, {"nn", b.nn}, {"cc", b.cc}, {"total", b.total}};
        break;
      }
      default:
        throw Error(ErrorCode::kState, "not a parallel-data stage");
    }
    avg->Add(logged);
    Notify(options, epoch, stage, step++, b);
  }
}

void RunAcseInitEpoch(const TrainingData& data, const FeatureBridge& bridge, int epoch,
                      TrainState* state, const RunOptions& options, LossAverager* avg) {
  // F learns noisy 87 -> noisy static 29; G learns clean 29 -> clean 87.
  const std::vector<int> order_u = Shuffled(static_cast<int>(data.noisy.size()), &state->rng);
  const std::vector<int> order_v = Shuffled(static_cast<int>(data.clean.size()), &state->rng);
  double f_sum = 0.0, g_sum = 0.0;
  int step = 0;
  for (int idx : order_u) {
    const Matrix& u = data.noisy[idx];
    LossBundle b;
    b.grad_f = state->f.params().ZerosLike();
    b.nc = LossNc(state->f, u, bridge.NoisyToClean(u), 1.0, &b.grad_f);
    b.total = b.nc;
    SgdStep("F", b.grad_f, &state->f.params(), &state->optimizer);
    f_sum += b.nc;
    Notify(options, epoch, StageKind::kAcseInit, step++, b);
  }
  for (int idx : order_v) {
    const Matrix& v = data.clean[idx];
    LossBundle b;
    b.grad_g = state->g.params().ZerosLike();
    b.cn = LossCn(state->g, v, bridge.CleanToNoisy(v), 1.0, &b.grad_g);
    b.total = b.cn;
    SgdStep("G", b.grad_g, &state->g.params(), &state->optimizer);
    g_sum += b.cn;
    Notify(options, epoch, StageKind::kAcseInit, step++, b);
  }
  avg->Add({{"init_f", f_sum / order_u.size()}, {"init_g", g_sum / order_v.size()}});
}

void RunAcseJointEpoch(const TrainConfig& cfg, const TrainingData& data,
                       const FeatureBridge& bridge, int epoch, TrainState* state,
                       const RunOptions& options, LossAverager* avg) {
  const std::vector<int> order_u = Shuffled(static_cast<int>(data.noisy.size()), &state->rng);
  const std::vector<int> order_v = Shuffled(static_cast<int>(data.clean.size()), &state->rng);
  const std::size_t steps = std::min(order_u.size(), order_v.size());
  for (std::size_t k = 0; k < steps; ++k) {
    const Matrix& u = data.noisy[order_u[k]];
    const Matrix& v = data.clean[order_v[k]];
    const LossBundle disc = AcseDiscriminatorStep(cfg, u, v, state);
    const LossBundle b = AcseMappingStep(cfg, u, v, bridge, state);
    auto logged = b.Named();
    logged.erase(logged.begin(), logged.begin() + 2);  // nc, cn unused here
    logged.emplace_back("d_step_dn", disc.dn);
    logged.emplace_back("d_step_dc", disc.dc);
    avg->Add(logged);
    Notify(options, epoch, StageKind::kAcseJoint, static_cast<int>(k), b);
  }
}

}  // namespace

LossBundle AcseDiscriminatorStep(const TrainConfig& cfg, const Matrix& u, const Matrix& v,
                                 TrainState* state) {
  if (!state->d_noisy || !state->d_clean) {
    throw Error(ErrorCode::kState, "ACSE step without discriminators");
  }
  const Matrix v_hat = state->f.Forward(u);
  const Matrix u_hat = state->g.Forward(v);
  const DiscriminationResult dn = DiscriminationLoss(*state->d_noisy, u, u_hat);
  const DiscriminationResult dc = DiscriminationLoss(*state->d_clean, v, v_hat);
  LossBundle b;
  b.dn = dn.log_likelihood;
  b.dc = dc.log_likelihood;
  if (!std::isfinite(b.dn) || !std::isfinite(b.dc)) {
    throw Error(ErrorCode::kNumeric, "discrimination loss is not finite");
  }
  b.total = -cfg.acse.alpha2 * b.dn - cfg.acse.alpha3 * b.dc;
  b.grad_du = state->d_noisy->params().ZerosLike();
  b.grad_du.AddScaled(dn.param_grad, cfg.acse.alpha2);
  b.grad_dv = state->d_clean->params().ZerosLike();
  b.grad_dv.AddScaled(dc.param_grad, cfg.acse.alpha3);
  SgdStep("D_U", b.grad_du, &state->d_noisy->params(), &state->optimizer);
  SgdStep("D_V", b.grad_dv, &state->d_clean->params(), &state->optimizer);
  return b;
}

LossBundle AcseMappingStep(const TrainConfig& cfg, const Matrix& u, const Matrix& v,
                           const FeatureBridge& bridge, TrainState* state) {
  if (!state->d_noisy || !state->d_clean) {
    throw Error(ErrorCode::kState, "ACSE step without discriminators");
  }
  LossBundle b = AcseTotal(state->f, state->g, *state->d_noisy, *state->d_clean, u, v,
                           cfg.acse, bridge);
  SgdStep("F", b.grad_f, &state->f.params(), &state->optimizer);
  SgdStep("G", b.grad_g, &state->g.params(), &state->optimizer);
  return b;
}

std::vector<std::pair<std::string, double>> EvaluateHeldout(
    const TrainState& state, const std::vector<ParallelPair>& heldout) {
  if (heldout.empty()) return {};
  double nc = 0.0, mse = 0.0, passthrough = 0.0;
  const bool raw = state.noisy_stats && state.clean_stats;
  for (const ParallelPair& p : heldout) {
    const Matrix enhanced = state.f.Forward(p.noisy);
    nc += MseSeq(enhanced, p.clean).value;
    if (raw) {
      const FeatureSequence clean =
          Denormalize(FeatureSequence(p.clean, DimKind::kStatic29), *state.clean_stats);
      const FeatureSequence enh =
          Denormalize(FeatureSequence(enhanced, DimKind::kStatic29), *state.clean_stats);
      const FeatureSequence noisy = StaticSlice(
          Denormalize(FeatureSequence(p.noisy, DimKind::kAugmented87), *state.noisy_stats));
      mse += FrameMse(enh, clean);
      passthrough += FrameMse(noisy, clean);
    }
  }
  const double n = static_cast<double>(heldout.size());
  std::vector<std::pair<std::string, double>> out = {{"nc", nc / n}};
  if (raw) {
    out.emplace_back("mse", mse / n);
    out.emplace_back("passthrough_mse", passthrough / n);
  }
  return out;
}

History RunTraining(const TrainConfig& cfg, const TrainingData& data, TrainState* state,
                    const RunOptions& options) {
  cfg.Validate();
  const std::vector<Stage> schedule = BuildSchedule(cfg);
  const int total = TotalEpochs(schedule);
  const int stop = options.stop_after_epoch < 0 ? total
                                                : std::min(total, options.stop_after_epoch);
  if (cfg.regime == Regime::kAcse) {
    RequireUnparallel(data);
    if (!state->d_noisy || !state->d_clean) {
      throw Error(ErrorCode::kState, "ACSE training state has no discriminators");
    }
  } else {
    RequireParallel(data);
  }
  state->optimizer.config = cfg.sgd;
  const FeatureBridge bridge = MakeBridge(cfg, *state);

  std::ofstream log;
  if (!cfg.log_path.empty()) {
    log.open(cfg.log_path, state->epochs_done == 0 ? std::ios::trunc : std::ios::app);
    if (!log) throw Error(ErrorCode::kIo, "cannot open log " + cfg.log_path);
  }

  History history;
  while (state->epochs_done < stop) {
    const int epoch = state->epochs_done + 1;
    int start = 0;
    StageKind stage = schedule.front().kind;
    for (const Stage& s : schedule) {
      if (epoch <= start + s.epochs) {
        stage = s.kind;
        break;
      }
      start += s.epochs;
    }

    LossAverager avg;
    switch (stage) {
      case StageKind::kAcseInit:
        RunAcseInitEpoch(data, bridge, epoch, state, options, &avg);
        break;
      case StageKind::kAcseJoint:
        RunAcseJointEpoch(cfg, data, bridge, epoch, state, options, &avg);
        break;
      default:
        RunParallelEpoch(cfg, data, stage, epoch, state, options, &avg);
    }
    state->epochs_done = epoch;

    EpochRecord record;
    record.epoch = epoch;
    record.stage = stage;
    record.train = avg.Means();
    if (cfg.eval_every > 0 && (epoch % cfg.eval_every == 0 || epoch == total)) {
      record.heldout = EvaluateHeldout(*state, data.heldout);
    }
    if (log.is_open()) {
      log << record.ToLogLine() << '\n';
      log.flush();
    }
    history.push_back(std::move(record));
  }
  return history;
}

History TrainBaseline(TrainConfig cfg, const TrainingData& data, TrainState* state) {
  cfg.regime = Regime::kBaseline;
  return RunTraining(cfg, data, state);
}

History TrainCse(TrainConfig cfg, const TrainingData& data, TrainState* state,
                 bool full_cycle) {
  cfg.regime = full_cycle ? Regime::kCseFull : Regime::kCseForward;
  return RunTraining(cfg, data, state);
}

History TrainAcse(TrainConfig cfg, const TrainingData& data, TrainState* state) {
  cfg.regime = Regime::kAcse;
  return RunTraining(cfg, data, state);
}

FeatureSequence Enhance(const MappingNetwork& f, const FeatureSequence& noisy_normalized,
                        const NormStats* clean_stats) {
  if (clean_stats == nullptr) {
    throw Error(ErrorCode::kState, "enhance needs the clean-stream normalization stats");
  }
  const Matrix out = f.Forward(noisy_normalized.data());
  return Denormalize(FeatureSequence::FromMatrix(out), *clean_stats);
}

}  // namespace cyclese
