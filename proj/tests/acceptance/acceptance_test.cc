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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   acceptance_test [--only N]...
//
// The learning criteria (4-6) train at desk scale; see DeskConfig().

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cyclese/checkpoint.h"
#include "cyclese/cli.h"
#include "cyclese/corpus.h"
#include "cyclese/discriminator.h"
#include "cyclese/features.h"
#include "cyclese/grad_check_suite.h"
#include "cyclese/losses.h"
#include "cyclese/metrics.h"
#include "cyclese/optimizer.h"
#include "cyclese/synth.h"
#include "cyclese/trainer.h"
#include "oracles.h"
#include "test_util.h"

namespace cyclese {
namespace {

using testing::RandomMatrix;

// Pinned tolerances and budgets.
constexpr double kGradTol = 1e-4;
constexpr double kGradBudgetS = 120.0;
constexpr double kDecompositionTol = 1e-12;
constexpr double kLogMelTol = 1e-6;
constexpr double kMetricTol = 1e-9;
constexpr double kLstmTol = 1e-10;
constexpr double kMinRelativeGain = 0.05;
constexpr double kCseBudgetS = 30 * 60.0;
constexpr int kOrderingSeeds = 5;
constexpr int kOrderingRequired = 4;
constexpr double kAcseBudgetS = 45 * 60.0;
constexpr double kGrlTol = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

// The paper-scale networks at the paper learning rate do not move within a
// desk-scale budget, so the learning criteria use smaller networks and a
// larger step. The larger step needs gradient clipping: G's initialization
// targets put clean-speech silence in noisy-normalized units, and its
// gradient norm reaches 1e4 there. Every other hyperparameter keeps its
// default.
TrainConfig DeskConfig(Regime regime, std::uint64_t seed) {
  TrainConfig cfg;
  cfg.regime = regime;
  cfg.seed = seed;
  for (MappingSpec* s : {&cfg.f_spec, &cfg.g_spec}) {
    s->cell_dim = 64;
    s->proj_dim = 32;
  }
  cfg.d_noisy_spec.hidden_dim = 64;
  cfg.d_clean_spec.hidden_dim = 64;
  cfg.sgd.learning_rate = 1e-3;
  cfg.sgd.clip_norm = 50.0;
  cfg.eval_every = 0;
  return cfg;
}

// Tiny networks for the structural criteria.
TrainConfig SmokeConfig(Regime regime) {
  TrainConfig cfg;
  cfg.regime = regime;
  cfg.seed = 3;
  for (MappingSpec* s : {&cfg.f_spec, &cfg.g_spec}) {
    s->cell_dim = 8;
    s->proj_dim = 4;
  }
  cfg.d_noisy_spec.hidden_dim = 16;
  cfg.d_clean_spec.hidden_dim = 16;
  cfg.sgd.learning_rate = 1e-3;
  return cfg;
}

SynthConfig SmallCorpusConfig() {
  SynthConfig s;
  s.n_utterances = 6;
  s.n_heldout = 2;
  s.min_duration_s = 0.4;
  s.max_duration_s = 0.8;
  s.seed = 21;
  return s;
}

TrainingData ParallelData(const ParallelCorpus& c, NormStats* noisy, NormStats* clean) {
  *noisy = NoisyStats(c.train);
  *clean = CleanStats(c.train);
  TrainingData d;
  d.parallel = ToParallelPairs(c.train, *noisy, *clean);
  d.heldout = ToParallelPairs(c.heldout, *noisy, *clean);
  return d;
}

TrainingData UnparallelData(const UnparallelCorpus& c, NormStats* noisy, NormStats* clean) {
  *noisy = NoisyStats(c.noisy);
  *clean = CleanStats(c.clean);
  TrainingData d;
  for (const Utterance& u : c.noisy) d.noisy.push_back(Normalize(*u.noisy, *noisy).data());
  for (const Utterance& v : c.clean) d.clean.push_back(Normalize(*v.clean, *clean).data());
  d.heldout = ToParallelPairs(c.heldout, *noisy, *clean);
  return d;
}

double Lookup(const std::vector<std::pair<std::string, double>>& kv, const std::string& key) {
  for (const auto& [k, v] : kv) {
    if (k == key) return v;
  }
  return std::nan("");
}

// ---- 1 ----------------------------------------------------------------------

Outcome GradientCorrectness() {
  Stopwatch clock;
  const std::vector<GradCheckCase> cases = RunGradCheckSuite(7);
  const double seconds = clock.Seconds();
  const std::set<std::string> required = {"loss_nc", "loss_cn", "loss_nn", "loss_cc",
                                          "loss_dn", "loss_dc", "loss_in", "loss_ic",
                                          "cse_total", "acse_total"};
  std::set<std::string> seen;
  double worst = 0.0;
  bool ok = true;
  std::string failed;
  for (const GradCheckCase& c : cases) {
    seen.insert(c.name);
    worst = std::max(worst, c.report.max_relative_error);
    if (!(c.report.max_relative_error < kGradTol)) {
      ok = false;
      failed += " " + c.name + "/" + c.network;
    }
  }
  for (const std::string& r : required) {
    if (!seen.count(r)) {
      ok = false;
      failed += " missing:" + r;
    }
  }
  ok = ok && seconds < kGradBudgetS;
  std::string detail = Fmt("%.0f cases, worst rel err %.2e, %.1f s", cases.size(), worst, seconds);
  if (!failed.empty()) detail += ";" + failed;
  return {ok, detail};
}

// ---- 2 ----------------------------------------------------------------------

Outcome LossDecomposition() {
  const ParallelCorpus par = BuildParallel(SmallCorpusConfig());
  const UnparallelCorpus unpar = BuildUnparallel(SmallCorpusConfig());
  double worst = 0.0;
  int steps = 0, epochs = 0;

  {
    TrainConfig cfg = SmokeConfig(Regime::kCseFull);
    cfg.cse_nc_epochs = cfg.cse_cn_epochs = 0;
    cfg.cse_forward_epochs = cfg.cse_full_epochs = 1;
    const CseWeights& w = cfg.cse;
    NormStats ns, cs;
    const TrainingData data = ParallelData(par, &ns, &cs);
    TrainState state = InitTrainState(cfg, ns, cs);
    RunOptions options;
    options.observer = [&](const StepEvent& e) {
      const LossBundle& b = e.losses;
      const double l3 = e.stage == StageKind::kFullCycle ? w.lambda3 : 0.0;
      worst = std::max(worst, std::abs(b.total - (b.nc + w.lambda1 * b.nn + w.lambda2 * b.cn +
                                                  l3 * b.cc)));
      ++steps;
    };
    for (const EpochRecord& r : RunTraining(cfg, data, &state, options)) {
      const double l3 = r.stage == StageKind::kFullCycle ? w.lambda3 : 0.0;
      worst = std::max(worst, std::abs(r.Train("total") -
                                       (r.Train("nc") + w.lambda1 * r.Train("nn") +
                                        w.lambda2 * r.Train("cn") + l3 * r.Train("cc"))));
      ++epochs;
    }
  }
  {
    TrainConfig cfg = SmokeConfig(Regime::kAcse);
    cfg.acse_init_epochs = cfg.acse_joint_epochs = 1;
    const AcseWeights& a = cfg.acse;
    auto combine = [&a](double nn, double cc, double dn, double dc, double in, double ic) {
      return nn + a.alpha1 * cc - a.alpha2 * dn - a.alpha3 * dc + a.alpha4 * in + a.alpha5 * ic;
    };
    NormStats ns, cs;
    const TrainingData data = UnparallelData(unpar, &ns, &cs);
    TrainState state = InitTrainState(cfg, ns, cs);
    RunOptions options;
    options.observer = [&](const StepEvent& e) {
      const LossBundle& b = e.losses;
      const double want = e.stage == StageKind::kAcseJoint
                              ? combine(b.nn, b.cc, b.dn, b.dc, b.in, b.ic)
                              : b.nc + b.cn;
      worst = std::max(worst, std::abs(b.total - want));
      ++steps;
    };
    for (const EpochRecord& r : RunTraining(cfg, data, &state, options)) {
      if (r.stage != StageKind::kAcseJoint) continue;
      worst = std::max(worst, std::abs(r.Train("total") -
                                       combine(r.Train("nn"), r.Train("cc"), r.Train("dn"),
                                               r.Train("dc"), r.Train("in"), r.Train("ic"))));
      ++epochs;
    }
  }
  const bool ok = worst <= kDecompositionTol && steps > 0 && epochs == 3;
  return {ok, Fmt("%.0f steps and %.0f logged epochs, worst |total - sum| %.2e", steps, epochs,
                  worst)};
}

// ---- 3 ----------------------------------------------------------------------

Outcome OracleEquivalence() {
  // Log-mel on synthetic speech and noisy mixtures.
  double logmel = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Waveform clean = SynthClean(seed, 0.3);
    const MixResult mix =
        MixAtSnr(clean, MakeNoise(NoiseKind::kPink, seed + 10, clean.samples.size()), 5.0);
    for (const Waveform* w : {&clean, &mix.mixture}) {
      const Matrix got = LogMel(*w).data();
      const Matrix want = testing::OracleLogMel(w->samples, w->sample_rate);
      if (got.rows() != want.rows()) return {false, "log-mel frame count differs from oracle"};
      logmel = std::max(logmel, (got - want).cwiseAbs().maxCoeff());
    }
  }
  // Metrics on real features.
  const ParallelCorpus par = BuildParallel(SmallCorpusConfig());
  double metric = 0.0;
  for (const Utterance& u : par.train) {
    const Matrix c = u.clean->data();
    const Matrix e = StaticSlice(*u.noisy).data();
    const FeatureSequence cs(c, DimKind::kStatic29), es(e, DimKind::kStatic29);
    metric = std::max(metric, std::abs(FrameMse(es, cs) - testing::LoopMse(e, c)));
    metric = std::max(metric, std::abs(SegmentalSnr(es, cs) - testing::LoopSegSnr(e, c)));
    metric = std::max(metric, std::abs(LogSpectralDistance(es, cs) - testing::LoopLsd(e, c)));
  }
  // LSTMP forward with generic parameters.
  MappingSpec spec = MappingSpec::NoisyToClean();
  spec.cell_dim = 32;
  spec.proj_dim = 16;
  MappingNetwork net = MappingNetwork::Initialized(spec, 5);
  for (int i = 0; i < net.params().size(); ++i) {
    net.params()[i] += RandomMatrix(net.params()[i].rows(), net.params()[i].cols(), 50 + i, 0.3);
  }
  const Matrix x = Normalize(*par.train[0].noisy, NoisyStats(par.train)).data();
  const double lstm = (net.Forward(x) - testing::LoopForward(net, x)).cwiseAbs().maxCoeff();
  const bool ok = logmel < kLogMelTol && metric < kMetricTol && lstm < kLstmTol;
  return {ok, Fmt("log-mel %.2e, metrics %.2e, lstm %.2e", logmel, metric, lstm)};
}

// ---- 4 / 5 ------------------------------------------------------------------

struct ParallelSetup {
  TrainingData data;
  NormStats noisy, clean;
};

const ParallelSetup& DefaultParallel() {
  static const ParallelSetup setup = [] {
    ParallelSetup s;
    s.data = ParallelData(BuildParallel(SynthConfig{}), &s.noisy, &s.clean);
    return s;
  }();
  return setup;
}

struct HeldoutResult {
  double mse = 0.0;
  double passthrough = 0.0;
};

std::map<std::pair<Regime, std::uint64_t>, HeldoutResult>& ParallelRuns() {
  static std::map<std::pair<Regime, std::uint64_t>, HeldoutResult> runs;
  return runs;
}

HeldoutResult TrainParallel(Regime regime, std::uint64_t seed) {
  auto& cache = ParallelRuns();
  const auto key = std::make_pair(regime, seed);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const ParallelSetup& s = DefaultParallel();
  const TrainConfig cfg = DeskConfig(regime, seed);
  TrainState state = InitTrainState(cfg, s.noisy, s.clean);
  Stopwatch clock;
  RunTraining(cfg, s.data, &state);
  const auto m = EvaluateHeldout(state, s.data.heldout);
  const HeldoutResult r{Lookup(m, "mse"), Lookup(m, "passthrough_mse")};
  std::cerr << "  " << RegimeName(regime) << " seed " << seed << ": held-out mse " << r.mse
            << " (" << clock.Seconds() << " s)\n";
  cache[key] = r;
  return r;
}

Outcome CseLearningEffect() {
  Stopwatch clock;
  const HeldoutResult cse = TrainParallel(Regime::kCseFull, 1);
  const HeldoutResult base = TrainParallel(Regime::kBaseline, 1);
  const double seconds = clock.Seconds();
  const double vs_pass = 1.0 - cse.mse / cse.passthrough;
  const double vs_base = 1.0 - cse.mse / base.mse;
  const bool ok = vs_pass >= kMinRelativeGain && vs_base >= kMinRelativeGain &&
                  seconds < kCseBudgetS;
  return {ok, Fmt("cse %.2f vs passthrough %.2f (%+.1f%%), ", cse.mse, cse.passthrough,
                  100 * vs_pass) +
                  Fmt("vs baseline %.2f (%+.1f%%), %.0f s", base.mse, 100 * vs_base, seconds)};
}

Outcome CycleOrdering() {
  int held = 0;
  std::string detail;
  for (int seed = 1; seed <= kOrderingSeeds; ++seed) {
    const double full = TrainParallel(Regime::kCseFull, seed).mse;
    const double fwd = TrainParallel(Regime::kCseForward, seed).mse;
    const double base = TrainParallel(Regime::kBaseline, seed).mse;
    const bool order = full <= fwd && fwd <= base;
    held += order;
    detail += Fmt(" s%.0f:%.1f/%.1f/%.1f", seed, full, fwd, base) + (order ? "+" : "-");
  }
  return {held >= kOrderingRequired,
          Fmt("ordering full<=forward<=baseline in %.0f/%.0f seeds;", held, kOrderingSeeds) +
              detail};
}

// ---- 6 ----------------------------------------------------------------------

// Fresh discriminator trained to tell F's outputs from clean frames, scored
// by balanced frame accuracy on the held-out set.
double ProbeAccuracy(const MappingNetwork& f, const TrainingData& data) {
  DiscriminatorSpec spec = DiscriminatorSpec::Clean();
  spec.hidden_dim = 32;
  Discriminator probe = Discriminator::Initialized(spec, 99);
  OptimizerState opt;
  opt.config = {1e-2, 0.5, 0.0};
  std::vector<Matrix> fake;
  for (const Matrix& u : data.noisy) fake.push_back(f.Forward(u));
  const std::size_t n = std::min(fake.size(), data.clean.size());
  std::mt19937_64 rng(7);
  std::vector<std::size_t> order(n);
  for (int epoch = 0; epoch < 10; ++epoch) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const DiscriminationResult r = DiscriminationLoss(probe, data.clean[i], fake[i]);
      SgdStep("probe", r.param_grad, &probe.params(), &opt);
    }
  }
  double real_hits = 0, real_n = 0, fake_hits = 0, fake_n = 0;
  for (const ParallelPair& p : data.heldout) {
    const Vector pr = probe.Forward(p.clean);
    const Vector pf = probe.Forward(f.Forward(p.noisy));
    real_hits += (pr.array() > 0.5).count();
    real_n += pr.size();
    fake_hits += (pf.array() <= 0.5).count();
    fake_n += pf.size();
  }
  return 0.5 * (real_hits / real_n + fake_hits / fake_n);
}

Outcome AdversarialEffect() {
  Stopwatch clock;
  NormStats ns, cs;
  const TrainingData data = UnparallelData(BuildUnparallel(SynthConfig{}), &ns, &cs);
  const TrainConfig cfg = DeskConfig(Regime::kAcse, 1);
  TrainState state = InitTrainState(cfg, ns, cs);
  RunOptions init_only;
  init_only.stop_after_epoch = cfg.acse_init_epochs;
  RunTraining(cfg, data, &state, init_only);
  const MappingNetwork f_init = state.f;
  const double mse_init = Lookup(EvaluateHeldout(state, data.heldout), "mse");
  RunTraining(cfg, data, &state);
  const double mse_joint = Lookup(EvaluateHeldout(state, data.heldout), "mse");
  const double acc_init = ProbeAccuracy(f_init, data);
  const double acc_joint = ProbeAccuracy(state.f, data);
  const double seconds = clock.Seconds();
  const double gain = 1.0 - mse_joint / mse_init;
  const bool ok = gain >= kMinRelativeGain && acc_joint < acc_init && seconds < kAcseBudgetS;
  return {ok, Fmt("mse init %.2f -> joint %.2f (%+.1f%%), ", mse_init, mse_joint, 100 * gain) +
                  Fmt("probe accuracy init %.3f -> joint %.3f, %.0f s", acc_init, acc_joint,
                      seconds)};
}

// ---- 7 ----------------------------------------------------------------------

Outcome GrlSign() {
  MappingSpec fs = MappingSpec::NoisyToClean(), gs = MappingSpec::CleanToNoisy();
  for (MappingSpec* s : {&fs, &gs}) {
    s->cell_dim = 8;
    s->proj_dim = 4;
  }
  DiscriminatorSpec dus = DiscriminatorSpec::Noisy(), dvs = DiscriminatorSpec::Clean();
  dus.hidden_dim = dvs.hidden_dim = 16;
  const MappingNetwork f = MappingNetwork::Initialized(fs, 1), g = MappingNetwork::Initialized(gs, 2);
  const Discriminator du = Discriminator::Initialized(dus, 3), dv = Discriminator::Initialized(dvs, 4);
  const Matrix u = RandomMatrix(6, kAugmentedDim, 5), v = RandomMatrix(5, kStaticDim, 6);
  const double alpha3 = AcseWeights{}.alpha3;
  AcseOptions adversarial_only;
  adversarial_only.cycle_terms = false;
  adversarial_only.identity_terms = false;
  // Pass 1 through the reversal layer; pass 2 is the plain gradient of the
  // unit-weight cross-entropy term.
  adversarial_only.adversarial = AdversarialGradient::kReversed;
  const LossBundle reversed = AcseTotal(f, g, du, dv, u, v, AcseWeights{0, 0, alpha3, 0, 0},
                                        FeatureBridge(), adversarial_only);
  adversarial_only.adversarial = AdversarialGradient::kExact;
  const LossBundle plain =
      AcseTotal(f, g, du, dv, u, v, AcseWeights{0, 0, 1, 0, 0}, FeatureBridge(), adversarial_only);
  ParameterSet diff = reversed.grad_f;
  diff.AddScaled(plain.grad_f, alpha3);
  double worst = 0.0, scale = 0.0;
  for (std::int64_t k = 0; k < diff.NumScalars(); ++k) {
    worst = std::max(worst, std::abs(diff.Scalar(k)));
    scale = std::max(scale, std::abs(plain.grad_f.Scalar(k)));
  }
  const bool ok = worst <= kGrlTol && scale > 0.0;
  return {ok, Fmt("max |g_rev + %.0f g_plain| = %.2e (max |g_plain| %.2e)", alpha3, worst, scale)};
}

// ---- 8 ----------------------------------------------------------------------

Outcome Reproducibility() {
  const ParallelCorpus par = BuildParallel(SmallCorpusConfig());
  const UnparallelCorpus unpar = BuildUnparallel(SmallCorpusConfig());
  testing::ScopedTempDir dir("acceptance_repro");
  int runs = 0, mismatches = 0;
  for (Regime r : {Regime::kBaseline, Regime::kCseForward, Regime::kCseFull, Regime::kAcse}) {
    TrainConfig cfg = SmokeConfig(r);
    cfg.baseline_epochs = 4;
    cfg.cse_nc_epochs = cfg.cse_cn_epochs = cfg.cse_forward_epochs = cfg.cse_full_epochs = 1;
    cfg.acse_init_epochs = 1;
    cfg.acse_joint_epochs = 3;
    NormStats ns, cs;
    const TrainingData data =
        r == Regime::kAcse ? UnparallelData(unpar, &ns, &cs) : ParallelData(par, &ns, &cs);
    auto fresh = [&] { return InitTrainState(cfg, ns, cs); };
    TrainState a = fresh(), b = fresh();
    RunTraining(cfg, data, &a);
    RunTraining(cfg, data, &b);
    SaveCheckpoint(dir.File("a.ckpt"), a);
    SaveCheckpoint(dir.File("b.ckpt"), b);
    const std::string want = EncodeCheckpoint(a);
    mismatches += EncodeCheckpoint(LoadCheckpoint(dir.File("b.ckpt"))) != want;
    ++runs;
    const int total = TotalEpochs(BuildSchedule(cfg));
    for (int split = 1; split < total; ++split) {
      TrainState first = fresh();
      RunOptions stop;
      stop.stop_after_epoch = split;
      RunTraining(cfg, data, &first, stop);
      SaveCheckpoint(dir.File("split.ckpt"), first);
      TrainState resumed = LoadCheckpoint(dir.File("split.ckpt"));
      RunTraining(cfg, data, &resumed);
      mismatches += EncodeCheckpoint(resumed) != want;
      ++runs;
    }
  }
  return {mismatches == 0,
          Fmt("%.0f of %.0f repeated/split runs bit-identical to the reference", runs - mismatches,
              runs)};
}

// ---- 9 ----------------------------------------------------------------------

Outcome HyperparameterFidelity() {
  std::vector<std::string> bad;
  auto expect = [&bad](const std::string& what, double got, double want) {
    if (got != want) bad.push_back(what + "=" + std::to_string(got));
  };
  const TrainConfig cfg;
  expect("lambda1", cfg.cse.lambda1, 0.6);
  expect("lambda2", cfg.cse.lambda2, 0.4);
  expect("lambda3", cfg.cse.lambda3, 1.4);
  expect("alpha1", cfg.acse.alpha1, 1.0);
  expect("alpha2", cfg.acse.alpha2, 8.0);
  expect("alpha3", cfg.acse.alpha3, 8.0);
  expect("alpha4", cfg.acse.alpha4, 0.5);
  expect("alpha5", cfg.acse.alpha5, 0.5);
  expect("lr", cfg.sgd.learning_rate, 2e-7);
  expect("momentum", cfg.sgd.momentum, 0.5);
  for (const auto& [name, spec, in, out] :
       {std::tuple{"F", cfg.f_spec, 87, 29}, std::tuple{"G", cfg.g_spec, 29, 87}}) {
    const std::string n = name;
    expect(n + ".in", spec.input_dim, in);
    expect(n + ".out", spec.output_dim, out);
    expect(n + ".layers", spec.num_layers, 2);
    expect(n + ".cells", spec.cell_dim, 512);
    expect(n + ".proj", spec.proj_dim, 256);
  }
  for (const auto& [name, spec, in] :
       {std::tuple{"D_U", cfg.d_noisy_spec, 87}, std::tuple{"D_V", cfg.d_clean_spec, 29}}) {
    const std::string n = name;
    expect(n + ".in", spec.input_dim, in);
    expect(n + ".hidden", spec.hidden_dim, 512);
    expect(n + ".layers", spec.num_hidden, 2);
    const Discriminator d(spec);
    const Vector out = d.Forward(Matrix(Matrix::Zero(3, in)));
    expect(n + ".out", static_cast<double>(out.size()) / 3.0, 1.0);
  }
  // The command line must advertise the same defaults.
  std::ostringstream help, err;
  RunCli({"train", "--help"}, help, err);
  const std::map<std::string, double> cli = {
      {"lambda1", 0.6}, {"lambda2", 0.4}, {"lambda3", 1.4},   {"alpha1", 1.0},
      {"alpha2", 8.0},  {"alpha3", 8.0},  {"alpha4", 0.5},    {"alpha5", 0.5},
      {"lr", 2e-7},     {"momentum", 0.5}, {"cell-dim", 512}, {"proj-dim", 256},
      {"num-layers", 2}, {"disc-hidden", 512}, {"disc-layers", 2}};
  const std::string text = help.str();
  for (const auto& [flag, want] : cli) {
    std::smatch m;
    const std::regex re("--" + flag + " [A-Z]+ \\[([^\\]]+)\\]");
    if (!std::regex_search(text, m, re)) {
      bad.push_back("cli --" + flag + " missing");
    } else {
      expect("cli --" + flag, std::stod(m[1].str()), want);
    }
  }
  std::string detail = "library and CLI defaults checked";
  for (const std::string& b : bad) detail += "; " + b;
  return {bad.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

int Main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "gradient correctness", GradientCorrectness},
      {2, "loss decomposition", LossDecomposition},
      {3, "oracle equivalence", OracleEquivalence},
      {4, "CSE learning effect", CseLearningEffect},
      {5, "cycle benefit ordering", CycleOrdering},
      {6, "adversarial effect", AdversarialEffect},
      {7, "gradient reversal sign", GrlSign},
      {8, "reproducibility", Reproducibility},
      {9, "hyperparameter defaults", HyperparameterFidelity},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance_test [--only N]...\n";
      return 2;
    }
  }
  int failures = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << c.id << " (" << c.name << "): " << (o.pass ? "PASS" : "FAIL")
              << " - " << o.detail << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace cyclese

int main(int argc, char** argv) { return cyclese::Main(argc, argv); }
