// Copyright 2026 The crzz Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "crzz/fit.hpp"

namespace crzz {
namespace {

TEST(Fit, ExponentialDecayRecoversParameters) {
  std::vector<double> m, y;
  for (int k : {1, 5, 10, 20, 40, 60, 80, 100}) {
    m.push_back(k);
    y.push_back(0.7 * std::pow(0.97, k) + 0.25);
  }
  const DecayFitParams f = fit_exponential_decay(m, y);
  EXPECT_NEAR(f.alpha, 0.97, 1e-6);
  EXPECT_NEAR(f.A, 0.7, 1e-5);
  EXPECT_NEAR(f.B, 0.25, 1e-5);
}

TEST(Fit, FlatDataGivesUnitAlpha) {
  const DecayFitParams f = fit_exponential_decay({1, 2, 3, 4}, {1, 1, 1, 1});
  EXPECT_EQ(f.alpha, 1.0);
  EXPECT_EQ(f.B, 1.0);
}

TEST(Fit, DecayNeedsThreePoints) {
  EXPECT_THROW(fit_exponential_decay({1, 2}, {0.9, 0.8}), Error);
}

TEST(Fit, SinusoidFrequency) {
  std::vector<double> t, y;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int i = 0; i < 300; ++i) {
    t.push_back(i * 10.0);
    y.push_back(0.5 + 0.4 * std::cos(kTwoPi * 1.137e-3 * t.back() + 0.3) + noise(rng));
  }
  const SinusoidFit s = fit_sinusoid(t, y, 0.2e-3, 3e-3);
  EXPECT_NEAR(s.frequency, 1.137e-3, 2e-6);
  EXPECT_NEAR(s.amplitude, 0.4, 0.01);
}

TEST(Fit, GaussianEcho) {
  std::vector<double> t, y;
  for (int i = 0; i < 40; ++i) {
    t.push_back(0.5 * i);
    y.push_back(0.05 + 0.9 * std::exp(-t.back() / 36.0 - std::pow(t.back() / 12.0, 2)));
  }
  const GaussianEchoFit g = fit_gaussian_echo(t, y, 18.0, 8.0);
  EXPECT_NEAR(g.T_phi, 12.0, 1e-4);
  EXPECT_NEAR(g.gamma_phi(), 1.0 / 12.0, 1e-6);
}

}  // namespace
}  // namespace crzz
