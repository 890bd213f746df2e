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

#include "cyclese/corpus.h"

#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>

#include "cyclese/error.h"
#include "cyclese/feature_io.h"
#include "cyclese/seeding.h"

namespace cyclese {
namespace fs = std::filesystem;
namespace {

constexpr std::uint64_t kTrainSet = 1;
constexpr std::uint64_t kHeldoutSet = 2;
constexpr std::uint64_t kNoisySet = 3;
constexpr std::uint64_t kCleanSet = 4;

std::string MakeId(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05d", prefix, index);
  return buf;
}

}  // namespace

void SynthConfig::Validate() const {
  if (n_utterances < 1 || n_heldout < 0) {
    throw Error(ErrorCode::kConfig, "need n_utterances >= 1 and n_heldout >= 0");
  }
  if (!(min_duration_s > 0) || !(max_duration_s >= min_duration_s)) {
    throw Error(ErrorCode::kConfig, "need 0 < min_duration <= max_duration");
  }
  if (!std::isfinite(snr_min_db) || !std::isfinite(snr_max_db) || snr_max_db < snr_min_db) {
    throw Error(ErrorCode::kConfig, "snr range must be finite with min <= max");
  }
  if (noise_kinds.empty()) throw Error(ErrorCode::kConfig, "no noise kinds selected");
  ResolveGeometry(fbank, sample_rate);
}

Utterance SynthesizeUtterance(const SynthConfig& cfg, const std::string& id,
                              std::uint64_t set_tag, int index) {
  const std::uint64_t seed =
      DeriveSeed(cfg.seed, (set_tag << 32) | static_cast<std::uint32_t>(index));
  std::mt19937_64 rng(seed);
  const double duration =
      std::uniform_real_distribution<double>(cfg.min_duration_s, cfg.max_duration_s)(rng);
  const double snr = std::uniform_real_distribution<double>(cfg.snr_min_db, cfg.snr_max_db)(rng);
  const NoiseKind kind = cfg.noise_kinds[std::uniform_int_distribution<std::size_t>(
      0, cfg.noise_kinds.size() - 1)(rng)];
  const std::uint64_t clean_seed = rng();
  const std::uint64_t noise_seed = rng();

  const Waveform clean = SynthClean(clean_seed, duration, cfg.sample_rate);
  const Waveform noise = MakeNoise(kind, noise_seed, clean.samples.size(), cfg.sample_rate);
  const MixResult mix = MixAtSnr(clean, noise, snr);

  Utterance u;
  u.id = id;
  u.clean = LogMel(clean, cfg.fbank);
  u.noisy = AppendDeltas(LogMel(mix.mixture, cfg.fbank), cfg.delta_window);
  u.snr_db = snr;
  u.noise_kind = kind;
  return u;
}

ParallelCorpus BuildParallel(const SynthConfig& cfg) {
  cfg.Validate();
  ParallelCorpus corpus;
  for (int i = 0; i < cfg.n_utterances; ++i) {
    corpus.train.push_back(SynthesizeUtterance(cfg, MakeId("utt", i), kTrainSet, i));
  }
  for (int i = 0; i < cfg.n_heldout; ++i) {
    corpus.heldout.push_back(SynthesizeUtterance(cfg, MakeId("dev", i), kHeldoutSet, i));
  }
  return corpus;
}

UnparallelCorpus BuildUnparallel(const SynthConfig& cfg) {
  cfg.Validate();
  UnparallelCorpus corpus;
  for (int i = 0; i < cfg.n_utterances; ++i) {
    Utterance u = SynthesizeUtterance(cfg, MakeId("noisy", i), kNoisySet, i);
    u.clean.reset();
    corpus.noisy.push_back(std::move(u));
  }
  for (int i = 0; i < cfg.n_utterances; ++i) {
    Utterance v = SynthesizeUtterance(cfg, MakeId("clean", i), kCleanSet, i);
    v.noisy.reset();
    v.noise_kind.reset();
    v.snr_db = std::numeric_limits<double>::infinity();
    corpus.clean.push_back(std::move(v));
  }
  for (int i = 0; i < cfg.n_heldout; ++i) {
    corpus.heldout.push_back(SynthesizeUtterance(cfg, MakeId("dev", i), kHeldoutSet, i));
  }
  return corpus;
}

namespace {

Manifest WriteSet(const fs::path& dir, const std::vector<Utterance>& utts) {
  fs::create_directories(dir / "feats");
  Manifest manifest;
  for (const Utterance& u : utts) {
    ManifestRecord r;
    r.id = u.id;
    r.clean_path = "-";
    r.noisy_path = "-";
    if (u.clean) {
      r.clean_path = "feats/" + u.id + ".clean.ftr";
      WriteFeatures((dir / r.clean_path).string(), *u.clean);
    }
    if (u.noisy) {
      r.noisy_path = "feats/" + u.id + ".noisy.ftr";
      WriteFeatures((dir / r.noisy_path).string(), *u.noisy);
    }
    r.snr_db = u.snr_db;
    r.noise_kind = u.noise_kind ? NoiseKindName(*u.noise_kind) : "none";
    manifest.push_back(std::move(r));
  }
  return manifest;
}

}  // namespace

std::vector<std::string> WriteParallel(const std::string& dir, const ParallelCorpus& corpus) {
  const fs::path root(dir);
  const std::string train = (root / "train.tsv").string();
  const std::string heldout = (root / "heldout.tsv").string();
  WriteManifest(train, WriteSet(root, corpus.train));
  WriteManifest(heldout, WriteSet(root, corpus.heldout));
  return {train, heldout};
}

std::vector<std::string> WriteUnparallel(const std::string& dir,
                                         const UnparallelCorpus& corpus) {
  const fs::path root(dir);
  const std::string noisy = (root / "noisy.tsv").string();
  const std::string clean = (root / "clean.tsv").string();
  const std::string heldout = (root / "heldout.tsv").string();
  WriteManifest(noisy, WriteSet(root, corpus.noisy));
  WriteManifest(clean, WriteSet(root, corpus.clean));
  WriteManifest(heldout, WriteSet(root, corpus.heldout));
  return {noisy, clean, heldout};
}

std::vector<Utterance> LoadUtterances(const Manifest& manifest) {
  std::vector<Utterance> out;
  for (const ManifestRecord& r : manifest) {
    Utterance u;
    u.id = r.id;
    u.snr_db = r.snr_db;
    if (r.noise_kind != "none") u.noise_kind = ParseNoiseKind(r.noise_kind);
    if (r.has_clean()) u.clean = ReadFeatures(r.clean_path);
    if (r.has_noisy()) u.noisy = ReadFeatures(r.noisy_path);
    out.push_back(std::move(u));
  }
  return out;
}

NormStats NoisyStats(const std::vector<Utterance>& utts) {
  std::vector<FeatureSequence> seqs;
  for (const Utterance& u : utts) {
    if (u.noisy) seqs.push_back(*u.noisy);
  }
  return ComputeGlobalStats(seqs);
}

NormStats CleanStats(const std::vector<Utterance>& utts) {
  std::vector<FeatureSequence> seqs;
  for (const Utterance& u : utts) {
    if (u.clean) seqs.push_back(*u.clean);
  }
  return ComputeGlobalStats(seqs);
}

std::vector<ParallelPair> ToParallelPairs(const std::vector<Utterance>& utts,
                                          const NormStats& noisy, const NormStats& clean) {
  std::vector<ParallelPair> out;
  for (const Utterance& u : utts) {
    if (!u.clean || !u.noisy) {
      throw Error(ErrorCode::kData, "utterance " + u.id + " lacks a clean or noisy stream");
    }
    out.push_back({u.id, Normalize(*u.noisy, noisy).data(), Normalize(*u.clean, clean).data()});
  }
  return out;
}

}  // namespace cyclese
