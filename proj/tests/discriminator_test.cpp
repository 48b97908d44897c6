// Copyright 2026 The Syntagraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>
#include <vector>

#include "gtest/gtest.h"
#include "syntagraph/discriminator.hpp"
#include "syntagraph/error.hpp"
#include "syntagraph/gradcheck.hpp"
#include "syntagraph/ops.hpp"
#include "syntagraph/verify/generators.hpp"

namespace syntagraph {
namespace {

using verify::random_tensor;

DiscriminatorConfig small_config() {
  DiscriminatorConfig c;
  c.windows = {8};
  c.n_mels = 8;
  c.channels = 3;
  c.strides = {2, 1, 1};
  return c;
}

MelSpectrogram random_mel(std::size_t frames, std::size_t n_mels, Rng& rng) {
  return make_mel(random_tensor({frames, n_mels}, rng));
}

DiscriminatorParams kink_free_params(const DiscriminatorConfig& config, const Tensor& clip,
                                     Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    DiscriminatorParams p = zero_discriminator_params(config);
    std::vector<double> v(parameter_count(p));
    for (double& x : v) x = rng.uniform(-0.5, 0.5);
    unflatten(p, v);
    DiscriminatorTrace trace;
    Rng unused(0);
    disc_forward(clip, p.discriminators[0], config, unused, false, &trace);
    if (min_abs_preactivation(trace) >= 1e-3) return p;
  }
  throw InvariantViolation("no kink-free draw");
}

TEST(SampleWindowTest, ExactLengthStartsAtZero) {
  Rng rng(60);
  const MelSpectrogram mel = random_mel(32, 4, rng);
  for (int t = 0; t < 20; ++t) {
    const auto s = sample_window(mel, 32, rng);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->start, 0u);
    EXPECT_EQ(s->clip, mel.frames);
  }
}

TEST(SampleWindowTest, OneSpareFrameIsFairCoin) {
  Rng rng(61);
  const MelSpectrogram mel = random_mel(33, 2, rng);
  std::map<std::size_t, int> hits;
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) ++hits[sample_window(mel, 32, rng)->start];
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_NEAR(hits[0] / static_cast<double>(draws), 0.5, 0.05);
  EXPECT_NEAR(hits[1] / static_cast<double>(draws), 0.5, 0.05);
}

TEST(SampleWindowTest, ShortInputDrawsNothing) {
  Rng rng(62);
  const MelSpectrogram mel = random_mel(20, 2, rng);
  Rng probe = rng;
  EXPECT_FALSE(sample_window(mel, 32, rng).has_value());
  EXPECT_EQ(rng.next_u64(), probe.next_u64());
}

TEST(SampleWindowTest, ClipRowsMatchSource) {
  Rng rng(63);
  const MelSpectrogram mel = random_mel(50, 3, rng);
  const auto s = sample_window(mel, 16, rng);
  ASSERT_TRUE(s.has_value());
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(s->clip.at(r, c), mel.frames.at(s->start + r, c));
  }
}

TEST(DiscForwardTest, ZeroParamsScoreIsLinearBias) {
  Rng rng(64);
  const DiscriminatorConfig config;
  DiscriminatorParams p = zero_discriminator_params(config);
  p.discriminators[1].linear_bias[0] = 0.375;
  const Tensor clip = random_tensor({64, 80}, rng);
  EXPECT_EQ(disc_forward(clip, p.discriminators[1], config, rng, true), 0.375);
}

TEST(DiscForwardTest, InferenceIsDeterministic) {
  Rng rng(65);
  const DiscriminatorConfig config = small_config();
  const DiscriminatorParams p = init_discriminator_params(config, rng);
  const Tensor clip = random_tensor({8, 8}, rng);
  Rng a(1), b(999);
  EXPECT_EQ(disc_forward(clip, p.discriminators[0], config, a, false),
            disc_forward(clip, p.discriminators[0], config, b, false));
}

TEST(DiscForwardTest, TrainingDependsOnSeedOnly) {
  Rng rng(66);
  const DiscriminatorConfig config = small_config();
  const DiscriminatorParams p = init_discriminator_params(config, rng);
  const Tensor clip = random_tensor({8, 8}, rng);
  Rng a(7), b(7);
  EXPECT_EQ(disc_forward(clip, p.discriminators[0], config, a, true),
            disc_forward(clip, p.discriminators[0], config, b, true));
}

TEST(DiscForwardTest, WrongClipShapeIsShapeError) {
  Rng rng(67);
  const DiscriminatorConfig config = small_config();
  const DiscriminatorParams p = zero_discriminator_params(config);
  EXPECT_THROW(disc_forward(Tensor({8, 7}), p.discriminators[0], config, rng, false), ShapeError);
  EXPECT_THROW(disc_forward(Tensor({9, 8}), p.discriminators[0], config, rng, false), ShapeError);
}

TEST(DiscBackwardTest, ParamsAndClipAgreeWithFiniteDifferences) {
  Rng rng(68);
  const DiscriminatorConfig config = small_config();
  const Tensor clip = random_tensor({8, 8}, rng);
  const DiscriminatorParams p = kink_free_params(config, clip, rng);

  DiscriminatorTrace trace;
  Rng unused(0);
  disc_forward(clip, p.discriminators[0], config, unused, false, &trace);
  const DiscriminatorGrad g = disc_backward(p.discriminators[0], config, trace, 1.0);

  DiscriminatorParams scratch = p;
  const auto by_params = [&](std::span<const double> theta) {
    unflatten(scratch, theta);
    Rng r(0);
    return disc_forward(clip, scratch.discriminators[0], config, r, false);
  };
  DiscriminatorParams dp = p;
  dp.discriminators[0] = g.dparams;
  EXPECT_LT(max_relative_error(by_params, flatten(p), flatten(dp)), 1e-5);

  const auto by_clip = [&](std::span<const double> x) {
    Rng r(0);
    return disc_forward(Tensor({8, 8}, std::vector<double>(x.begin(), x.end())),
                        p.discriminators[0], config, r, false);
  };
  EXPECT_LT(max_relative_error(by_clip, clip.values(), g.dclip.values()), 1e-5);
}

TEST(ScoreLossesTest, LeastSquaresExamples) {
  const ScoreLosses perfect = score_losses(LossFamily::LeastSquares, 1.0, 0.0);
  EXPECT_EQ(perfect.d_loss, 0.0);
  EXPECT_EQ(perfect.g_loss, 0.5);
  const ScoreLosses fooled = score_losses(LossFamily::LeastSquares, 0.0, 1.0);
  EXPECT_EQ(fooled.d_loss, 1.0);
  EXPECT_EQ(fooled.g_loss, 0.0);
  const ScoreLosses half = score_losses(LossFamily::LeastSquares, 0.5, 0.5);
  EXPECT_EQ(half.d_loss, 0.25);
  EXPECT_EQ(half.g_loss, 0.125);
}

TEST(ScoreLossesTest, HingeExamples) {
  const ScoreLosses a = score_losses(LossFamily::Hinge, 2.0, -3.0);
  EXPECT_EQ(a.d_loss, 0.0);
  EXPECT_EQ(a.g_loss, 3.0);
  EXPECT_EQ(a.dd_dreal, 0.0);
  EXPECT_EQ(a.dd_dfake, 0.0);
  const ScoreLosses b = score_losses(LossFamily::Hinge, 0.0, 0.0);
  EXPECT_EQ(b.d_loss, 2.0);
  EXPECT_EQ(b.dd_dreal, -1.0);
  EXPECT_EQ(b.dd_dfake, 1.0);
  EXPECT_EQ(b.dg_dfake, -1.0);
}

TEST(ScoreLossesTest, NonnegativeOnRandomScores) {
  Rng rng(69);
  for (int t = 0; t < 1000; ++t) {
    const double r = rng.uniform(-10, 10), f = rng.uniform(-10, 10);
    const ScoreLosses ls = score_losses(LossFamily::LeastSquares, r, f);
    EXPECT_GE(ls.d_loss, 0.0);
    EXPECT_GE(ls.g_loss, 0.0);
    EXPECT_GE(score_losses(LossFamily::Hinge, r, f).d_loss, 0.0);
  }
}

TEST(LossFamilyTest, CodesRoundTrip) {
  for (LossFamily f : {LossFamily::LeastSquares, LossFamily::Hinge}) {
    EXPECT_EQ(loss_family_from_code(loss_family_code(f)), f);
  }
  EXPECT_THROW(loss_family_from_code("wgan"), ConfigError);
}

TEST(AdversarialTest, HundredFramesActivateTwoWindows) {
  Rng rng(70);
  const DiscriminatorParams p = zero_discriminator_params(DiscriminatorConfig{});
  const MelSpectrogram mel = random_mel(100, 80, rng);
  const AdversarialResult r = adversarial_losses(mel, mel, p, rng);
  ASSERT_EQ(r.per_window.size(), 2u);
  EXPECT_EQ(r.per_window[0].window, 32u);
  EXPECT_EQ(r.per_window[1].window, 64u);
  EXPECT_EQ(r.d_loss, 0.5);
  EXPECT_EQ(r.g_loss, 0.5);
}

TEST(AdversarialTest, TooShortInputThrows) {
  Rng rng(71);
  const DiscriminatorParams p = zero_discriminator_params(DiscriminatorConfig{});
  const MelSpectrogram mel = random_mel(16, 80, rng);
  EXPECT_THROW(adversarial_losses(mel, mel, p, rng), InputTooShortError);
}

TEST(AdversarialTest, MelMismatchIsShapeError) {
  Rng rng(72);
  const DiscriminatorParams p = zero_discriminator_params(DiscriminatorConfig{});
  EXPECT_THROW(adversarial_losses(random_mel(40, 80, rng), random_mel(40, 79, rng), p, rng),
               ShapeError);
}

TEST(AdversarialTest, ActiveWindowsIsMonotone) {
  const DiscriminatorConfig config;
  std::size_t previous = 0;
  for (std::size_t t = 1; t <= 300; ++t) {
    const std::size_t n = active_windows(config, t).size();
    EXPECT_GE(n, previous);
    previous = n;
  }
  EXPECT_EQ(active_windows(config, 31).size(), 0u);
  EXPECT_EQ(active_windows(config, 128).size(), 3u);
}

TEST(AdversarialTest, EnsembleMembersAreIndependent) {
  // Perturbing one window's parameters leaves the other windows' scores alone.
  Rng rng(73);
  DiscriminatorConfig config;
  config.windows = {8, 12};
  config.n_mels = 8;
  config.channels = 3;
  DiscriminatorParams p = init_discriminator_params(config, rng);
  const MelSpectrogram real = random_mel(20, 8, rng);
  const MelSpectrogram fake = random_mel(20, 8, rng);
  Rng a(5);
  const AdversarialResult before = adversarial_losses(real, fake, p, a, false);
  p.discriminators[1].linear_bias[0] += 1.0;
  Rng b(5);
  const AdversarialResult after = adversarial_losses(real, fake, p, b, false);
  EXPECT_EQ(before.per_window[0].real_score, after.per_window[0].real_score);
  EXPECT_EQ(before.per_window[0].fake_score, after.per_window[0].fake_score);
  EXPECT_NE(before.per_window[1].real_score, after.per_window[1].real_score);
}

TEST(AdversarialTest, MeanOverWindows) {
  Rng rng(74);
  DiscriminatorConfig config = small_config();
  config.windows = {8, 12};
  config.strides = {2, 2, 2};
  const DiscriminatorParams p = init_discriminator_params(config, rng);
  const AdversarialResult r =
      adversarial_losses(random_mel(14, 8, rng), random_mel(13, 8, rng), p, rng, false);
  ASSERT_EQ(r.per_window.size(), 2u);
  EXPECT_DOUBLE_EQ(r.d_loss, (r.per_window[0].d_loss + r.per_window[1].d_loss) / 2.0);
  EXPECT_DOUBLE_EQ(r.g_loss, (r.per_window[0].g_loss + r.per_window[1].g_loss) / 2.0);
}

TEST(DiscriminatorParamsTest, JsonRoundTripAndStrictKeys) {
  Rng rng(75);
  const DiscriminatorConfig config = small_config();
  const DiscriminatorParams p = init_discriminator_params(config, rng);
  auto j = discriminator_params_to_json(p);
  EXPECT_EQ(discriminator_params_from_json(nlohmann::ordered_json::parse(j.dump()), config), p);
  j.erase("w8.conv1.bias");
  try {
    discriminator_params_from_json(j, config);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("w8.conv1.bias"), std::string::npos) << e.what();
  }
  auto extra = discriminator_params_to_json(p);
  extra["w16.linear.bias"] = extra["w8.linear.bias"];
  EXPECT_THROW(discriminator_params_from_json(extra, config), ConfigError);
}

TEST(DiscriminatorParamsTest, InitKeepsBiasesZeroAndKernelsBounded) {
  Rng rng(76);
  const DiscriminatorConfig config;
  const DiscriminatorParams p = init_discriminator_params(config, rng);
  for (const auto& d : p.discriminators) {
    for (std::size_t l = 0; l < d.kernels.size(); ++l) {
      for (double b : d.biases[l].values()) EXPECT_EQ(b, 0.0);
      const auto& s = d.kernels[l].shape();
      const double bound = 1.0 / std::sqrt(static_cast<double>(s[1] * s[2] * s[3]));
      for (double w : d.kernels[l].values()) EXPECT_LE(std::abs(w), bound);
    }
  }
}

TEST(DiscriminatorConfigTest, RejectsBadPlans) {
  DiscriminatorConfig c;
  c.strides = {2, 2};
  EXPECT_THROW(validate_config(c), ConfigError);
  c = DiscriminatorConfig{};
  c.dropout = 1.0;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = DiscriminatorConfig{};
  c.windows = {};
  EXPECT_THROW(validate_config(c), ConfigError);
}

}  // namespace
}  // namespace syntagraph
