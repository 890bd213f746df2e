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

#ifndef CYCLESE_CORPUS_H_
#define CYCLESE_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclese/features.h"
#include "cyclese/manifest.h"
#include "cyclese/synth.h"
#include "cyclese/trainer.h"

namespace cyclese {

struct SynthConfig {
  int n_utterances = 200;  // per training set
  int n_heldout = 40;
  double min_duration_s = 1.0;
  double max_duration_s = 3.0;
  int sample_rate = 16000;
  double snr_min_db = 0.0;
  double snr_max_db = 10.0;
  std::vector<NoiseKind> noise_kinds = {NoiseKind::kWhite, NoiseKind::kPink,
                                        NoiseKind::kRumble};
  std::uint64_t seed = 1;
  FbankConfig fbank;
  int delta_window = 2;

  void Validate() const;
};

// Raw (un-normalized) features of one synthetic utterance.
struct Utterance {
  std::string id;
  std::optional<FeatureSequence> clean;  // T x 29
  std::optional<FeatureSequence> noisy;  // T x 87
  double snr_db = 0.0;
  std::optional<NoiseKind> noise_kind;
};

struct ParallelCorpus {
  std::vector<Utterance> train;
  std::vector<Utterance> heldout;
};

struct UnparallelCorpus {
  std::vector<Utterance> noisy;    // noisy stream only
  std::vector<Utterance> clean;    // clean stream only, disjoint sources
  std::vector<Utterance> heldout;  // parallel, for evaluation
};

// Clean and noisy features of utterance `index` of set `set_tag`; both
// streams come from the same waveform so frame counts always agree.
Utterance SynthesizeUtterance(const SynthConfig& cfg, const std::string& id,
                              std::uint64_t set_tag, int index);

ParallelCorpus BuildParallel(const SynthConfig& cfg);
UnparallelCorpus BuildUnparallel(const SynthConfig& cfg);

// Writes <dir>/feats/<id>.{clean,noisy}.ftr and the manifests. Returns the
// manifest paths written: train.tsv + heldout.tsv, or noisy.tsv +
// clean.tsv + heldout.tsv.
std::vector<std::string> WriteParallel(const std::string& dir, const ParallelCorpus& corpus);
std::vector<std::string> WriteUnparallel(const std::string& dir,
                                         const UnparallelCorpus& corpus);

// Loads every record of a manifest back into raw features.
std::vector<Utterance> LoadUtterances(const Manifest& manifest);

// Stats over whichever streams are present in `utts`.
NormStats NoisyStats(const std::vector<Utterance>& utts);
NormStats CleanStats(const std::vector<Utterance>& utts);

// Normalized training views.
std::vector<ParallelPair> ToParallelPairs(const std::vector<Utterance>& utts,
                                          const NormStats& noisy, const NormStats& clean);

}  // namespace cyclese

#endif  // CYCLESE_CORPUS_H_
