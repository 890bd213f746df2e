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

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "cyclese/byte_io.h"
#include "cyclese/error.h"
#include "cyclese/feature_io.h"
#include "cyclese/features.h"
#include "cyclese/wav.h"
#include "oracles.h"
#include "test_util.h"

namespace cyclese {
namespace {

using testing::RandomMatrix;
using testing::ScopedTempDir;
using testing::OracleLogMel;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no cyclese::Error thrown";
  return ErrorCode::kIo;
}

// Minimal RIFF writer so malformed variants can be produced.
std::string RiffBytes(int channels, int bits, int format, const std::vector<int16_t>& pcm,
                      int rate = 16000) {
  std::string data;
  for (int16_t s : pcm) {
    data.push_back(static_cast<char>(s & 0xff));
    data.push_back(static_cast<char>((s >> 8) & 0xff));
  }
  std::string out = "RIFF";
  byte_io::PutU32(&out, static_cast<std::uint32_t>(36 + data.size()));
  out += "WAVEfmt ";
  byte_io::PutU32(&out, 16);
  out.push_back(static_cast<char>(format));
  out.push_back(0);
  out.push_back(static_cast<char>(channels));
  out.push_back(0);
  byte_io::PutU32(&out, rate);
  byte_io::PutU32(&out, rate * channels * bits / 8);
  out.push_back(static_cast<char>(channels * bits / 8));
  out.push_back(0);
  out.push_back(static_cast<char>(bits));
  out.push_back(0);
  out += "data";
  byte_io::PutU32(&out, static_cast<std::uint32_t>(data.size()));
  return out + data;
}

void WriteBytes(const std::string& path, const std::string& bytes) {
  std::ofstream(path, std::ios::binary) << bytes;
}

TEST(WavTest, ScalesBy32768) {
  ScopedTempDir dir("wav");
  WriteBytes(dir.File("a.wav"), RiffBytes(1, 16, 1, {0, 16384, -32768}));
  const Waveform w = ReadWav(dir.File("a.wav"));
  ASSERT_EQ(w.samples.size(), 3u);
  EXPECT_EQ(w.samples[0], 0.0);
  EXPECT_EQ(w.samples[1], 0.5);
  EXPECT_EQ(w.samples[2], -1.0);
  EXPECT_EQ(w.sample_rate, 16000);
}

TEST(WavTest, RejectsUnsupportedVariants) {
  ScopedTempDir dir("wav");
  WriteBytes(dir.File("u8.wav"), RiffBytes(1, 8, 1, {}));
  EXPECT_EQ(CodeOf([&] { ReadWav(dir.File("u8.wav")); }), ErrorCode::kUnsupported);
  WriteBytes(dir.File("stereo.wav"), RiffBytes(2, 16, 1, {1, 2}));
  EXPECT_EQ(CodeOf([&] { ReadWav(dir.File("stereo.wav")); }), ErrorCode::kUnsupported);
  WriteBytes(dir.File("float.wav"), RiffBytes(1, 16, 3, {1}));
  EXPECT_EQ(CodeOf([&] { ReadWav(dir.File("float.wav")); }), ErrorCode::kUnsupported);
  WriteBytes(dir.File("junk.wav"), "RIFX not a wave");
  EXPECT_EQ(CodeOf([&] { ReadWav(dir.File("junk.wav")); }), ErrorCode::kFormat);
  std::string truncated = RiffBytes(1, 16, 1, {1, 2, 3});
  truncated.resize(truncated.size() - 3);
  WriteBytes(dir.File("short.wav"), truncated);
  EXPECT_EQ(CodeOf([&] { ReadWav(dir.File("short.wav")); }), ErrorCode::kFormat);
}

TEST(WavTest, SineRoundTripWithinOneLsb) {
  ScopedTempDir dir("wav");
  Waveform w;
  w.sample_rate = 16000;
  for (int n = 0; n < 16000; ++n) {
    w.samples.push_back(0.8 * std::sin(2.0 * std::numbers::pi * 440.0 * n / 16000.0));
  }
  WriteWav(dir.File("sine.wav"), w);
  const Waveform r = ReadWav(dir.File("sine.wav"));
  ASSERT_EQ(r.samples.size(), w.samples.size());
  EXPECT_EQ(r.sample_rate, 16000);
  double worst = 0.0;
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    worst = std::max(worst, std::abs(r.samples[i] - w.samples[i]));
  }
  EXPECT_LT(worst, 1.0 / 32768.0);
}

TEST(FbankTest, DefaultGeometry) {
  const FrameGeometry g = ResolveGeometry(FbankConfig{}, 16000);
  EXPECT_EQ(g.window, 400);
  EXPECT_EQ(g.hop, 160);
  EXPECT_EQ(g.fft_size, 512);
  EXPECT_EQ(g.fmax_hz, 8000.0);
}

TEST(FbankTest, ConfigViolations) {
  FbankConfig c;
  c.fft_size = 256;
  EXPECT_EQ(CodeOf([&] { ResolveGeometry(c, 16000); }), ErrorCode::kConfig);
  c = {};
  c.fmax_hz = 9000;
  EXPECT_EQ(CodeOf([&] { ResolveGeometry(c, 16000); }), ErrorCode::kConfig);
  c = {};
  c.fmin_hz = 5000;
  c.fmax_hz = 4000;
  EXPECT_EQ(CodeOf([&] { ResolveGeometry(c, 16000); }), ErrorCode::kConfig);
  c = {};
  c.n_mels = 0;
  EXPECT_EQ(CodeOf([&] { ResolveGeometry(c, 16000); }), ErrorCode::kConfig);
}

TEST(FbankTest, SilenceGivesLogFloor) {
  Waveform w;
  w.samples.assign(4000, 0.0);
  const FeatureSequence f = LogMel(w);
  EXPECT_EQ(f.num_frames(), 1 + (4000 - 400) / 160);
  EXPECT_EQ(f.dim(), kStaticDim);
  EXPECT_EQ(f.kind(), DimKind::kStatic29);
  for (Eigen::Index k = 0; k < f.data().size(); ++k) {
    EXPECT_EQ(f.data().data()[k], std::log(1e-10));
  }
}

TEST(FbankTest, ShortWaveformRejected) {
  Waveform w;
  w.samples.assign(399, 0.1);
  EXPECT_EQ(CodeOf([&] { LogMel(w); }), ErrorCode::kData);
}

TEST(FbankTest, MatchesDirectDftOracle) {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> len(400, 1400);
    std::normal_distribution<double> amp(0.0, 0.2);
    Waveform w;
    w.samples.resize(len(rng));
    for (double& s : w.samples) s = std::clamp(amp(rng), -1.0, 1.0);
    const Matrix got = LogMel(w).data();
    const Matrix want = OracleLogMel(w.samples, 16000);
    ASSERT_EQ(got.rows(), want.rows());
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(FbankTest, ToneAtBandCenterPeaksInThatBand) {
  const std::vector<double> centers = MelBandCenters(FbankConfig{}, 16000);
  ASSERT_EQ(centers.size(), 29u);
  // The lowest bands are narrower than two FFT bins, so window leakage
  // spreads a tone over neighbours; they are skipped.
  for (int k = 4; k < 29; ++k) {
    Waveform w;
    for (int n = 0; n < 3200; ++n) {
      w.samples.push_back(0.5 * std::sin(2.0 * std::numbers::pi * centers[k] * n / 16000.0));
    }
    const Matrix f = LogMel(w).data();
    for (int t = 0; t < f.rows(); ++t) {
      Eigen::Index arg;
      f.row(t).maxCoeff(&arg);
      EXPECT_EQ(arg, k) << "band " << k << " frame " << t;
    }
  }
}

TEST(FbankTest, FilterbankRowsAreTriangles) {
  const Matrix w = MelFilterbank(FbankConfig{}, 16000);
  EXPECT_EQ(w.rows(), 29);
  EXPECT_EQ(w.cols(), 257);
  EXPECT_GE(w.minCoeff(), 0.0);
  EXPECT_LE(w.maxCoeff(), 1.0);
  for (int m = 4; m < 29; ++m) EXPECT_GT(w.row(m).sum(), 0.0);
}

FeatureSequence Static(const Matrix& m) { return FeatureSequence(m, DimKind::kStatic29); }

TEST(DeltaTest, ConstantSequenceHasZeroDeltas) {
  Matrix c(7, kStaticDim);
  c.rowwise() = RandomMatrix(1, kStaticDim, 3).row(0);
  const FeatureSequence a = AppendDeltas(Static(c));
  EXPECT_EQ(a.kind(), DimKind::kAugmented87);
  EXPECT_EQ(a.data().leftCols(kStaticDim), c);
  EXPECT_TRUE((a.data().rightCols(2 * kStaticDim).array() == 0.0).all());
}

TEST(DeltaTest, SingleFrameHasZeroDeltas) {
  const FeatureSequence a = AppendDeltas(Static(RandomMatrix(1, kStaticDim, 4)));
  EXPECT_TRUE((a.data().rightCols(2 * kStaticDim).array() == 0.0).all());
}

TEST(DeltaTest, RampGivesSlopeOnInteriorFrames) {
  // c_t = t v: sum_n n (c_{t+n} - c_{t-n}) = v sum 2 n^2, so delta = v.
  const Matrix v = RandomMatrix(1, kStaticDim, 5);
  Matrix c(10, kStaticDim);
  for (int t = 0; t < 10; ++t) c.row(t) = t * v.row(0);
  const Matrix a = AppendDeltas(Static(c), 2).data();
  for (int t = 2; t < 8; ++t) {
    EXPECT_LT((a.row(t).segment(kStaticDim, kStaticDim) - v.row(0)).cwiseAbs().maxCoeff(), 1e-12);
  }
  // Second-order deltas of a ramp vanish once both delta windows are
  // interior.
  for (int t = 4; t < 6; ++t) {
    EXPECT_LT(a.row(t).tail(kStaticDim).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DeltaTest, WrongKindRejected) {
  const FeatureSequence a = FeatureSequence::FromMatrix(RandomMatrix(3, kAugmentedDim, 6));
  EXPECT_EQ(CodeOf([&] { AppendDeltas(a); }), ErrorCode::kDimension);
}

TEST(StatsTest, TwoPointExample) {
  Matrix m(2, 1);
  m << 0.0, 2.0;
  const NormStats s = ComputeGlobalStats({FeatureSequence::FromMatrix(m)});
  EXPECT_EQ(s.mean[0], 1.0);
  EXPECT_EQ(s.std[0], 1.0);
}

TEST(StatsTest, ZeroVarianceIsDegenerate) {
  Matrix m = Matrix::Ones(4, 3);
  m.col(0) << 1, 2, 3, 4;
  EXPECT_EQ(CodeOf([&] { ComputeGlobalStats({FeatureSequence::FromMatrix(m)}); }),
            ErrorCode::kDegenerate);
}

TEST(StatsTest, MatchesNaiveAccumulation) {
  std::vector<FeatureSequence> corpus;
  for (int i = 0; i < 5; ++i) {
    corpus.push_back(Static(RandomMatrix(3 + 4 * i, kStaticDim, 20 + i, 2.0)));
  }
  const NormStats s = ComputeGlobalStats(corpus);
  for (int d = 0; d < kStaticDim; ++d) {
    double sum = 0.0, sq = 0.0;
    long n = 0;
    for (const auto& seq : corpus) {
      for (int t = 0; t < seq.num_frames(); ++t) {
        sum += seq.data()(t, d);
        sq += seq.data()(t, d) * seq.data()(t, d);
        ++n;
      }
    }
    const double mean = sum / n;
    EXPECT_NEAR(s.mean[d], mean, 1e-9);
    EXPECT_NEAR(s.std[d], std::sqrt(sq / n - mean * mean), 1e-9);
  }
}

TEST(StatsTest, NormalizedCorpusIsStandard) {
  std::vector<FeatureSequence> corpus, normed;
  for (int i = 0; i < 4; ++i) corpus.push_back(Static(RandomMatrix(9, kStaticDim, 40 + i, 3.0)));
  const NormStats s = ComputeGlobalStats(corpus);
  for (const auto& seq : corpus) normed.push_back(Normalize(seq, s));
  const NormStats again = ComputeGlobalStats(normed);
  EXPECT_LT(again.mean.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((again.std.array() - 1.0).abs().maxCoeff(), 1e-10);
}

TEST(NormalizeTest, RoundTripsBothWays) {
  const FeatureSequence x = Static(RandomMatrix(6, kStaticDim, 50, 4.0));
  NormStats s{RandomMatrix(kStaticDim, 1, 51), RandomMatrix(kStaticDim, 1, 52).cwiseAbs()};
  s.std.array() += 0.1;
  EXPECT_LT((Denormalize(Normalize(x, s), s).data() - x.data()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((Normalize(Denormalize(x, s), s).data() - x.data()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NormalizeTest, MeanMapsToZeroAndUnitStatsAreIdentity) {
  NormStats s{RandomMatrix(kStaticDim, 1, 53), Vector::Constant(kStaticDim, 2.5)};
  Matrix m(4, kStaticDim);
  m.rowwise() = s.mean.transpose();
  EXPECT_TRUE((Normalize(Static(m), s).data().array() == 0.0).all());
  const FeatureSequence x = Static(RandomMatrix(4, kStaticDim, 54));
  const NormStats unit{Vector::Zero(kStaticDim), Vector::Ones(kStaticDim)};
  EXPECT_EQ(Normalize(x, unit), x);
}

TEST(NormalizeTest, DimensionMismatch) {
  const NormStats s{Vector::Zero(3), Vector::Ones(3)};
  EXPECT_EQ(CodeOf([&] { Normalize(Static(RandomMatrix(2, kStaticDim, 1)), s); }),
            ErrorCode::kDimension);
}

TEST(FeatureSequenceTest, Invariants) {
  EXPECT_EQ(CodeOf([] { FeatureSequence(Matrix(0, kStaticDim), DimKind::kStatic29); }),
            ErrorCode::kData);
  EXPECT_EQ(CodeOf([] { FeatureSequence(Matrix::Zero(2, 5), DimKind::kStatic29); }),
            ErrorCode::kDimension);
  Matrix bad = Matrix::Zero(2, kStaticDim);
  bad(1, 3) = std::nan("");
  EXPECT_EQ(CodeOf([&] { FeatureSequence(bad, DimKind::kStatic29); }), ErrorCode::kData);
  EXPECT_EQ(FeatureSequence::FromMatrix(Matrix::Zero(1, 5)).kind(), DimKind::kArbitrary);
}

TEST(FeatureIoTest, BitExactRoundTrip) {
  ScopedTempDir dir("ftr");
  // Values representable in f32 survive the on-disk precision.
  Matrix m = RandomMatrix(5, kAugmentedDim, 60).cast<float>().cast<double>();
  const FeatureSequence seq = FeatureSequence::FromMatrix(m);
  WriteFeatures(dir.File("a.ftr"), seq);
  EXPECT_EQ(ReadFeatures(dir.File("a.ftr")), seq);
  const std::string bytes = EncodeFeatures(seq);
  EXPECT_EQ(bytes.size(), 13u + 4u * 5u * kAugmentedDim);
  EXPECT_EQ(bytes.substr(0, 4), "FTR1");
  EXPECT_EQ(EncodeFeatures(DecodeFeatures(bytes)), bytes);
}

TEST(FeatureIoTest, MalformedFilesRejected) {
  const std::string good = EncodeFeatures(FeatureSequence::FromMatrix(Matrix::Ones(2, 3)));
  std::string bad = good;
  bad[0] = 'X';
  EXPECT_EQ(CodeOf([&] { DecodeFeatures(bad); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { DecodeFeatures(good.substr(0, good.size() - 1)); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { DecodeFeatures(good + "x"); }), ErrorCode::kFormat);
  bad = good;
  bad[12] = 1;  // augmented87 code with D = 3
  EXPECT_EQ(CodeOf([&] { DecodeFeatures(bad); }), ErrorCode::kDimension);
}

TEST(FeatureIoTest, NormStatsRoundTrip) {
  ScopedTempDir dir("nrm");
  const NormStats s{RandomMatrix(kAugmentedDim, 1, 61), RandomMatrix(kAugmentedDim, 1, 62).cwiseAbs()};
  WriteNormStats(dir.File("s.nrm"), s);
  EXPECT_EQ(ReadNormStats(dir.File("s.nrm")), s);
  const std::string bytes = EncodeNormStats(s);
  EXPECT_EQ(bytes.substr(0, 4), "NRM1");
  EXPECT_EQ(bytes.size(), 8u + 16u * kAugmentedDim);
}

}  // namespace
}  // namespace cyclese
