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

#include "cyclese/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cyclese/checkpoint.h"
#include "cyclese/corpus.h"
#include "cyclese/error.h"
#include "cyclese/feature_io.h"
#include "cyclese/features.h"
#include "cyclese/grad_check_suite.h"
#include "cyclese/manifest.h"
#include "cyclese/metrics.h"
#include "cyclese/trainer.h"
#include "cyclese/wav.h"

namespace cyclese {
namespace fs = std::filesystem;
namespace {

constexpr const char* kPaper = " [paper]";
constexpr const char* kToolkit = " [toolkit default]";

// key=value lines become --key=value tokens placed before the command-line
// flags, which therefore take precedence.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (config.empty()) return out;
  std::ifstream in(config);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + config);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kConfig, "config line without '=': " + line);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    injected.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  const auto sub = std::find_if(out.begin(), out.end(),
                                [](const std::string& a) { return a.empty() || a[0] != '-'; });
  const auto pos = sub == out.end() ? out.end() : sub + 1;
  out.insert(pos, injected.begin(), injected.end());
  return out;
}

std::vector<std::string> SplitCommas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string p;
  while (std::getline(ss, p, ',')) {
    if (!p.empty()) parts.push_back(p);
  }
  return parts;
}

void AddFbankFlags(CLI::App* cmd, FbankConfig* fb) {
  cmd->add_option("--frame-length-ms", fb->frame_length_ms, std::string("Analysis window") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--frame-hop-ms", fb->frame_hop_ms, std::string("Frame hop") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--fft-size", fb->fft_size,
                  std::string("FFT size, 0 = next power of two") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--fmin-hz", fb->fmin_hz, std::string("Lowest mel edge") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--fmax-hz", fb->fmax_hz, std::string("Highest mel edge, 0 = Nyquist") + kToolkit)
      ->capture_default_str();
}

void RequireParentDir(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw Error(ErrorCode::kConfig, "output directory " + parent.string() + " does not exist");
  }
}

// ---- synth ----------------------------------------------------------------

struct SynthFlags {
  std::string out_dir;
  std::string mode = "parallel";
  std::string noise_kinds = "white,pink,rumble";
  SynthConfig cfg;
};

void AddSynth(CLI::App* app, SynthFlags* f) {
  CLI::App* cmd = app->add_subcommand("synth", "Generate a synthetic noisy/clean corpus");
  cmd->add_option("--out-dir", f->out_dir, "Output directory")->required();
  cmd->add_option("--mode", f->mode, std::string("parallel | unparallel") + kToolkit)
      ->capture_default_str()
      ->check(CLI::IsMember({"parallel", "unparallel"}));
  cmd->add_option("--seed", f->cfg.seed, std::string("Corpus seed") + kToolkit)->capture_default_str();
  cmd->add_option("--n-utterances", f->cfg.n_utterances,
                  std::string("Training utterances per set") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--n-heldout", f->cfg.n_heldout, std::string("Held-out utterances") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--min-duration", f->cfg.min_duration_s, std::string("Seconds") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--max-duration", f->cfg.max_duration_s, std::string("Seconds") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--sample-rate", f->cfg.sample_rate, std::string("Hz") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--snr-min", f->cfg.snr_min_db, std::string("dB") + kToolkit)->capture_default_str();
  cmd->add_option("--snr-max", f->cfg.snr_max_db, std::string("dB") + kToolkit)->capture_default_str();
  cmd->add_option("--noise-kinds", f->noise_kinds,
                  std::string("Comma list of white,pink,rumble") + kToolkit)
      ->capture_default_str();
  AddFbankFlags(cmd, &f->cfg.fbank);
}

int RunSynth(SynthFlags& f, std::ostream& out, std::ostream& err) {
  f.cfg.noise_kinds.clear();
  for (const std::string& k : SplitCommas(f.noise_kinds)) {
    f.cfg.noise_kinds.push_back(ParseNoiseKind(k));
  }
  f.cfg.Validate();
  fs::create_directories(f.out_dir);
  std::vector<std::string> manifests;
  if (f.mode == "parallel") {
    manifests = WriteParallel(f.out_dir, BuildParallel(f.cfg));
  } else {
    manifests = WriteUnparallel(f.out_dir, BuildUnparallel(f.cfg));
  }
  err << "synth: wrote " << manifests.size() << " manifests under " << f.out_dir << '\n';
  for (const std::string& m : manifests) out << m << '\n';
  return kExitOk;
}

// ---- extract --------------------------------------------------------------

struct ExtractFlags {
  std::string wav_dir;
  std::string out_dir;
  int delta_window = 2;
  FbankConfig fbank;
};

void AddExtract(CLI::App* app, ExtractFlags* f) {
  CLI::App* cmd = app->add_subcommand(
      "extract", "Compute 29-dim log-mel and 87-dim delta-augmented features for WAV files");
  cmd->add_option("--wav-dir", f->wav_dir, "Directory of mono 16-bit WAV files")->required();
  cmd->add_option("--out-dir", f->out_dir, "Output directory")->required();
  cmd->add_option("--delta-window", f->delta_window, std::string("Regression half-width") + kToolkit)
      ->capture_default_str();
  AddFbankFlags(cmd, &f->fbank);
}

int RunExtract(const ExtractFlags& f, std::ostream& out, std::ostream& err) {
  if (f.delta_window < 1) throw Error(ErrorCode::kConfig, "delta window must be >= 1");
  if (!fs::is_directory(f.wav_dir)) throw Error(ErrorCode::kConfig, f.wav_dir + " is not a directory");
  std::vector<fs::path> wavs;
  for (const auto& entry : fs::directory_iterator(f.wav_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") wavs.push_back(entry.path());
  }
  std::sort(wavs.begin(), wavs.end());
  if (wavs.empty()) throw Error(ErrorCode::kData, "no .wav files in " + f.wav_dir);

  std::vector<std::pair<std::string, FeatureSequence>> statics, augmented;
  for (const fs::path& p : wavs) {
    const FeatureSequence s = LogMel(ReadWav(p.string()), f.fbank);
    statics.emplace_back(p.stem().string(), s);
    augmented.emplace_back(p.stem().string(), AppendDeltas(s, f.delta_window));
  }
  std::vector<FeatureSequence> s_only, a_only;
  for (auto& [id, s] : statics) s_only.push_back(s);
  for (auto& [id, a] : augmented) a_only.push_back(a);
  const NormStats s_stats = ComputeGlobalStats(s_only);
  const NormStats a_stats = ComputeGlobalStats(a_only);

  fs::create_directories(f.out_dir);
  const fs::path root(f.out_dir);
  for (std::size_t i = 0; i < statics.size(); ++i) {
    const std::string stem = statics[i].first;
    WriteFeatures((root / (stem + ".static.ftr")).string(), statics[i].second);
    WriteFeatures((root / (stem + ".aug.ftr")).string(), augmented[i].second);
    out << stem << '\t' << statics[i].second.num_frames() << '\n';
  }
  WriteNormStats((root / "static.nrm").string(), s_stats);
  WriteNormStats((root / "aug.nrm").string(), a_stats);
  err << "extract: " << wavs.size() << " files -> " << f.out_dir << '\n';
  return kExitOk;
}

// ---- train ----------------------------------------------------------------

struct TrainFlags {
  std::string regime = "cse";
  std::string train_manifest;
  std::string noisy_manifest;
  std::string clean_manifest;
  std::string heldout_manifest;
  std::string checkpoint_out;
  std::string resume;
  int stop_after_epoch = -1;
  TrainConfig cfg;
  int cell_dim = 512;
  int proj_dim = 256;
  int num_layers = 2;
  int disc_hidden = 512;
  int disc_layers = 2;
};

void AddTrain(CLI::App* app, TrainFlags* f) {
  CLI::App* cmd = app->add_subcommand("train", "Train F (and G, D_U, D_V) under a regime");
  TrainConfig& c = f->cfg;
  cmd->add_option("--regime", f->regime, "baseline | cse | cse-forward | acse")
      ->capture_default_str()
      ->check(CLI::IsMember({"baseline", "cse", "cse-full", "cse-forward", "acse"}));
  cmd->add_option("--train-manifest", f->train_manifest, "Parallel manifest (baseline/cse)");
  cmd->add_option("--noisy-manifest", f->noisy_manifest, "Noisy-only manifest (acse)");
  cmd->add_option("--clean-manifest", f->clean_manifest, "Clean-only manifest (acse)");
  cmd->add_option("--heldout-manifest", f->heldout_manifest, "Parallel held-out manifest");
  cmd->add_option("--checkpoint-out", f->checkpoint_out, "Checkpoint to write")->required();
  cmd->add_option("--log", c.log_path, "Per-epoch log (default: <checkpoint>.log)");
  cmd->add_option("--resume", f->resume, "Checkpoint to resume from");
  cmd->add_option("--stop-after-epoch", f->stop_after_epoch,
                  "Stop once this many epochs are done (-1: whole schedule)")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, std::string("Training seed") + kToolkit)->capture_default_str();
  cmd->add_option("--baseline-epochs", c.baseline_epochs, std::string("Baseline epochs") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--nc-epochs", c.cse_nc_epochs, std::string("CSE stage 1 epochs") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--cn-epochs", c.cse_cn_epochs, std::string("CSE stage 2 epochs") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--forward-epochs", c.cse_forward_epochs,
                  std::string("CSE forward-cycle epochs") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--full-epochs", c.cse_full_epochs, std::string("CSE full-cycle epochs") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--acse-init-epochs", c.acse_init_epochs, std::string("ACSE init epochs") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--acse-joint-epochs", c.acse_joint_epochs,
                  std::string("ACSE joint epochs") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--lambda1", c.cse.lambda1, std::string("Noisy reconstruction weight") + kPaper)
      ->capture_default_str();
  cmd->add_option("--lambda2", c.cse.lambda2, std::string("Clean-to-noisy mapping weight") + kPaper)
      ->capture_default_str();
  cmd->add_option("--lambda3", c.cse.lambda3, std::string("Clean reconstruction weight") + kPaper)
      ->capture_default_str();
  cmd->add_option("--alpha1", c.acse.alpha1, std::string("Clean reconstruction weight") + kPaper)
      ->capture_default_str();
  cmd->add_option("--alpha2", c.acse.alpha2, std::string("Noisy discrimination weight / GRL") + kPaper)
      ->capture_default_str();
  cmd->add_option("--alpha3", c.acse.alpha3, std::string("Clean discrimination weight / GRL") + kPaper)
      ->capture_default_str();
  cmd->add_option("--alpha4", c.acse.alpha4, std::string("Noisy identity weight") + kPaper)
      ->capture_default_str();
  cmd->add_option("--alpha5", c.acse.alpha5, std::string("Clean identity weight") + kPaper)
      ->capture_default_str();
  cmd->add_option("--lr", c.sgd.learning_rate, std::string("Learning rate") + kPaper)
      ->capture_default_str();
  cmd->add_option("--momentum", c.sgd.momentum, std::string("Momentum") + kPaper)
      ->capture_default_str();
  cmd->add_option("--clip-norm", c.sgd.clip_norm, std::string("Gradient norm clip, 0 = off") + kToolkit)
      ->capture_default_str();
  cmd->add_option("--cell-dim", f->cell_dim, std::string("LSTM cells per layer") + kPaper)
      ->capture_default_str();
  cmd->add_option("--proj-dim", f->proj_dim, std::string("Projection size") + kPaper)
      ->capture_default_str();
  cmd->add_option("--num-layers", f->num_layers, std::string("LSTM layers") + kPaper)
      ->capture_default_str();
  cmd->add_option("--disc-hidden", f->disc_hidden, std::string("Discriminator units") + kPaper)
      ->capture_default_str();
  cmd->add_option("--disc-layers", f->disc_layers, std::string("Discriminator layers") + kPaper)
      ->capture_default_str();
  cmd->add_option("--eval-every", c.eval_every, std::string("Held-out eval period") + kToolkit)
      ->capture_default_str();
}

std::vector<Utterance> LoadManifestUtterances(const std::string& path) {
  return LoadUtterances(ReadManifest(path));
}

int RunTrain(TrainFlags& f, std::ostream& out, std::ostream& err) {
  TrainConfig& cfg = f.cfg;
  cfg.regime = ParseRegime(f.regime);
  for (MappingSpec* s : {&cfg.f_spec, &cfg.g_spec}) {
    s->cell_dim = f.cell_dim;
    s->proj_dim = f.proj_dim;
    s->num_layers = f.num_layers;
  }
  for (DiscriminatorSpec* s : {&cfg.d_noisy_spec, &cfg.d_clean_spec}) {
    s->hidden_dim = f.disc_hidden;
    s->num_hidden = f.disc_layers;
  }
  if (cfg.log_path.empty()) cfg.log_path = f.checkpoint_out + ".log";
  // Everything is validated before anything is written.
  cfg.Validate();
  const bool acse = cfg.regime == Regime::kAcse;
  if (acse && (f.noisy_manifest.empty() || f.clean_manifest.empty())) {
    throw Error(ErrorCode::kConfig, "acse needs --noisy-manifest and --clean-manifest");
  }
  if (!acse && f.train_manifest.empty()) {
    throw Error(ErrorCode::kConfig, std::string(RegimeName(cfg.regime)) + " needs --train-manifest");
  }
  if (acse && !f.train_manifest.empty()) {
    throw Error(ErrorCode::kConfig, "acse trains on unparalleled data; use --noisy/--clean-manifest");
  }
  if (!acse && (!f.noisy_manifest.empty() || !f.clean_manifest.empty())) {
    throw Error(ErrorCode::kConfig, "--noisy/--clean-manifest are only valid with --regime acse");
  }
  RequireParentDir(f.checkpoint_out);
  RequireParentDir(cfg.log_path);

  TrainingData data;
  std::optional<NormStats> noisy_stats, clean_stats;
  std::vector<Utterance> train, noisy, clean;
  if (acse) {
    noisy = LoadManifestUtterances(f.noisy_manifest);
    clean = LoadManifestUtterances(f.clean_manifest);
    noisy_stats = NoisyStats(noisy);
    clean_stats = CleanStats(clean);
  } else {
    train = LoadManifestUtterances(f.train_manifest);
    noisy_stats = NoisyStats(train);
    clean_stats = CleanStats(train);
  }

  std::unique_ptr<TrainState> state;
  if (!f.resume.empty()) {
    state = std::make_unique<TrainState>(LoadCheckpoint(f.resume));
    if (!state->noisy_stats || !state->clean_stats) {
      throw Error(ErrorCode::kState, "resume checkpoint lacks normalization stats");
    }
    noisy_stats = state->noisy_stats;
    clean_stats = state->clean_stats;
    err << "train: resuming at epoch " << state->epochs_done << '\n';
  } else {
    state = std::make_unique<TrainState>(InitTrainState(cfg, noisy_stats, clean_stats));
  }

  if (acse) {
    for (const Utterance& u : noisy) {
      if (!u.noisy) throw Error(ErrorCode::kData, u.id + ": noisy manifest record without noisy features");
      data.noisy.push_back(Normalize(*u.noisy, *noisy_stats).data());
    }
    for (const Utterance& v : clean) {
      if (!v.clean) throw Error(ErrorCode::kData, v.id + ": clean manifest record without clean features");
      data.clean.push_back(Normalize(*v.clean, *clean_stats).data());
    }
  } else {
    data.parallel = ToParallelPairs(train, *noisy_stats, *clean_stats);
  }
  if (!f.heldout_manifest.empty()) {
    data.heldout =
        ToParallelPairs(LoadManifestUtterances(f.heldout_manifest), *noisy_stats, *clean_stats);
  }

  RunOptions options;
  options.stop_after_epoch = f.stop_after_epoch;
  const History history = RunTraining(cfg, data, state.get(), options);
  SaveCheckpoint(f.checkpoint_out, *state);
  for (const EpochRecord& r : history) err << r.ToLogLine() << '\n';
  out << f.checkpoint_out << '\n';
  return kExitOk;
}

// ---- enhance --------------------------------------------------------------

struct EnhanceFlags {
  std::string checkpoint;
  std::string in;
  std::string out;
  std::string manifest;
  std::string out_dir;
};

void AddEnhance(CLI::App* app, EnhanceFlags* f) {
  CLI::App* cmd = app->add_subcommand("enhance", "Run F on raw 87-dim noisy features");
  cmd->add_option("--checkpoint", f->checkpoint, "Trained checkpoint")->required();
  cmd->add_option("--in", f->in, "Noisy FTR1 file");
  cmd->add_option("--out", f->out, "Enhanced FTR1 file");
  cmd->add_option("--manifest", f->manifest, "Enhance every noisy stream in a manifest");
  cmd->add_option("--out-dir", f->out_dir, "Output directory for --manifest mode");
}

int RunEnhance(const EnhanceFlags& f, std::ostream& out, std::ostream& err) {
  const bool single = !f.in.empty() || !f.out.empty();
  const bool batch = !f.manifest.empty() || !f.out_dir.empty();
  if (single == batch || (single && (f.in.empty() || f.out.empty())) ||
      (batch && (f.manifest.empty() || f.out_dir.empty()))) {
    throw Error(ErrorCode::kConfig, "use either --in/--out or --manifest/--out-dir");
  }
  if (single) RequireParentDir(f.out);
  const TrainState state = LoadCheckpoint(f.checkpoint);
  if (!state.noisy_stats) throw Error(ErrorCode::kState, "checkpoint has no noisy-stream stats");
  const NormStats* clean_stats = state.clean_stats ? &*state.clean_stats : nullptr;
  auto enhance = [&](const FeatureSequence& raw) {
    return Enhance(state.f, Normalize(raw, *state.noisy_stats), clean_stats);
  };
  if (single) {
    WriteFeatures(f.out, enhance(ReadFeatures(f.in)));
    out << f.out << '\n';
    return kExitOk;
  }
  const Manifest manifest = ReadManifest(f.manifest);
  fs::create_directories(f.out_dir);
  Manifest enhanced;
  for (const ManifestRecord& r : manifest) {
    if (!r.has_noisy()) continue;
    ManifestRecord e = r;
    e.clean_path = (fs::absolute(f.out_dir) / (r.id + ".enh.ftr")).string();
    e.noisy_path = fs::absolute(r.noisy_path).string();
    WriteFeatures(e.clean_path, enhance(ReadFeatures(r.noisy_path)));
    enhanced.push_back(std::move(e));
  }
  const std::string path = (fs::path(f.out_dir) / "enhanced.tsv").string();
  WriteManifest(path, enhanced);
  err << "enhance: " << enhanced.size() << " utterances\n";
  out << path << '\n';
  return kExitOk;
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateFlags {
  std::string enhanced;
  std::string reference;
};

void AddEvaluate(CLI::App* app, EvaluateFlags* f) {
  CLI::App* cmd = app->add_subcommand(
      "evaluate", "Frame MSE / segmental SNR / log-spectral distance of enhanced features");
  cmd->add_option("--enhanced", f->enhanced, "Manifest whose clean column holds enhanced features")
      ->required();
  cmd->add_option("--reference", f->reference, "Parallel reference manifest")->required();
}

int RunEvaluate(const EvaluateFlags& f, std::ostream& out, std::ostream&) {
  const Manifest enhanced = ReadManifest(f.enhanced);
  const Manifest reference = ReadManifest(f.reference);
  std::map<std::string, const ManifestRecord*> by_id;
  for (const ManifestRecord& r : enhanced) by_id[r.id] = &r;

  out << std::setprecision(6) << std::fixed;
  out << "id\tmse\tsegsnr_db\tlsd_db\tpassthrough_mse\tpassthrough_segsnr_db\tpassthrough_lsd_db\n";
  double sum[6] = {0, 0, 0, 0, 0, 0};
  int n = 0;
  for (const ManifestRecord& ref : reference) {
    if (!ref.has_clean() || !ref.has_noisy()) continue;
    auto it = by_id.find(ref.id);
    if (it == by_id.end() || !it->second->has_clean()) {
      throw Error(ErrorCode::kData, "no enhanced features for " + ref.id);
    }
    const FeatureSequence clean = ReadFeatures(ref.clean_path);
    const FeatureSequence enh = ReadFeatures(it->second->clean_path);
    const FeatureSequence pass = StaticSlice(ReadFeatures(ref.noisy_path));
    const double m[6] = {FrameMse(enh, clean),  SegmentalSnr(enh, clean),
                         LogSpectralDistance(enh, clean), FrameMse(pass, clean),
                         SegmentalSnr(pass, clean), LogSpectralDistance(pass, clean)};
    out << ref.id;
    for (int k = 0; k < 6; ++k) {
      out << '\t' << m[k];
      sum[k] += m[k];
    }
    out << '\n';
    ++n;
  }
  if (n == 0) throw Error(ErrorCode::kData, "reference manifest has no parallel records");
  out << "mean";
  for (double s : sum) out << '\t' << s / n;
  out << "\ndelta_vs_passthrough";
  for (int k = 0; k < 3; ++k) out << '\t' << (sum[k] - sum[k + 3]) / n;
  out << "\t-\t-\t-\n";
  return kExitOk;
}

// ---- gradcheck ------------------------------------------------------------

struct GradCheckFlags {
  std::uint64_t seed = 7;
};

void AddGradCheck(CLI::App* app, GradCheckFlags* f) {
  CLI::App* cmd = app->add_subcommand("gradcheck", "Finite-difference checks of every network and loss");
  cmd->add_option("--seed", f->seed, "Seed for the tiny instances")->capture_default_str();
}

int RunGradCheck(const GradCheckFlags& f, std::ostream& out, std::ostream&) {
  bool ok = true;
  out << "case\tnetwork\tmax_rel_error\tchecked\tstatus\n";
  for (const GradCheckCase& c : RunGradCheckSuite(f.seed)) {
    out << c.name << '\t' << c.network << '\t' << std::scientific << std::setprecision(3)
        << c.report.max_relative_error << '\t' << c.report.checked << '\t'
        << (c.passed() ? "PASS" : "FAIL") << '\n';
    ok = ok && c.passed();
  }
  return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int RunCli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-consistent speech feature enhancement toolkit", "cyclese"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  app.add_option("--config", "key=value file; command-line flags take precedence");

  SynthFlags synth;
  ExtractFlags extract;
  TrainFlags train;
  EnhanceFlags enhance;
  EvaluateFlags evaluate;
  GradCheckFlags gradcheck;
  AddSynth(&app, &synth);
  AddExtract(&app, &extract);
  AddTrain(&app, &train);
  AddEnhance(&app, &enhance);
  AddEvaluate(&app, &evaluate);
  AddGradCheck(&app, &gradcheck);

  try {
    const std::vector<std::string> args = ExpandConfig(raw_args);
    std::vector<std::string> storage = {"cyclese"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : storage) argv.push_back(s.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    if (app.got_subcommand("synth")) return RunSynth(synth, out, err);
    if (app.got_subcommand("extract")) return RunExtract(extract, out, err);
    if (app.got_subcommand("train")) return RunTrain(train, out, err);
    if (app.got_subcommand("enhance")) return RunEnhance(enhance, out, err);
    if (app.got_subcommand("evaluate")) return RunEvaluate(evaluate, out, err);
    if (app.got_subcommand("gradcheck")) return RunGradCheck(gradcheck, out, err);
  } catch (const Error& e) {
    err << "cyclese: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kConfig: return kExitUsage;
      case ErrorCode::kNumeric: return kExitNumeric;
      default: return kExitFailure;
    }
  } catch (const std::exception& e) {
    err << "cyclese: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace cyclese
