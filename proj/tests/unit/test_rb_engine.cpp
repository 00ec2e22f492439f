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
#include <map>

#include "crzz/device_card.hpp"
#include "crzz/rb_engine.hpp"

namespace crzz {
namespace {

TEST(Clifford, SingleQubitGroup) {
  const CliffordGroup& g = clifford_group(1);
  EXPECT_EQ(g.size(), 24u);
  EXPECT_DOUBLE_EQ(g.primitive_count_avg(), 2.205);
  EXPECT_EQ(g.count_histogram(), (std::vector<std::size_t>{1, 6, 13, 4}));
  EXPECT_NEAR(g.enumerated_count_avg(), 44.0 / 24.0, 1e-12);
  EXPECT_GE(g.find(MatC::Identity(2, 2)), 0);
  MatC t = MatC::Identity(2, 2);
  t(1, 1) = std::polar(1.0, 0.3);
  EXPECT_EQ(g.find(t), -1);
}

TEST(Clifford, TwoQubitGroup) {
  const CliffordGroup& g = clifford_group(2);
  EXPECT_EQ(g.size(), 11520u);
  EXPECT_NEAR(g.primitive_count_avg(), 1.5, 1e-12);
  EXPECT_EQ(g.count_histogram(), (std::vector<std::size_t>{576, 5184, 5184, 576}));
  EXPECT_GE(g.find(MatC::Identity(4, 4)), 0);
  EXPECT_GE(g.find(pauli::two("XZ")), 0);
}

TEST(Clifford, ClosureAndInverses) {
  const CliffordGroup& g = clifford_group(2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (int k = 0; k < 200; ++k) {
    const MatC& a = g.element(pick(rng));
    const MatC& b = g.element(pick(rng));
    const MatC& c = g.element(pick(rng));
    EXPECT_GE(g.find(a * b * c), 0);
    const MatC inv = g.element(g.inverse_of(a));
    EXPECT_EQ(g.find(inv * a), g.find(MatC::Identity(4, 4)));
  }
  EXPECT_THROW(CliffordGroup(3), Error);
}

TEST(ErrorPerGate, Examples) {
  EXPECT_EQ(error_per_gate(1.0, 1.5, 2), 0.0);
  EXPECT_NEAR(error_per_gate(0.95, 1.5, 2), 0.0253, 0.01 * 0.0253);
  EXPECT_NEAR(error_per_gate(0.95, 1.5, 2), 0.75 * (1.0 - std::pow(0.95, 1.0 / 1.5)), 1e-15);
  EXPECT_NEAR(error_per_gate(0.99, 2.205, 1), 0.00228, 0.01 * 0.00228);
  EXPECT_NEAR(error_per_gate(0.99, 2.205, 1), 0.5 * (1.0 - std::pow(0.99, 1.0 / 2.205)), 1e-15);
  Notes n;
  EXPECT_EQ(error_per_gate(1.01, 1.5, 2, &n), 0.0);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_THROW(error_per_gate(0.0, 1.5, 2), Error);
}

TEST(Rb, NoiselessIsFlat) {
  RbConfig cfg;
  cfg.n_seeds = 5;
  const RbResult r = simulate_rb(clifford_group(2), QuantumChannel::identity(4), cfg);
  EXPECT_NEAR(r.fit.alpha, 1.0, 1e-9);
  EXPECT_NEAR(r.fit.epsilon, 0.0, 1e-4);
  for (double p : r.mean_survival) EXPECT_NEAR(p, 1.0, 1e-10);
}

TEST(Rb, DepolarizingPerCliffordRecoversAlpha) {
  RbConfig cfg;
  cfg.attachment = NoiseAttachment::PerClifford;
  cfg.n_seeds = 10;
  cfg.threads = 4;
  for (int n : {1, 2}) {
    const int d = 1 << n;
    const RbResult r = simulate_rb(clifford_group(n), QuantumChannel::depolarizing(0.98, d), cfg);
    EXPECT_LT(std::abs(r.fit.alpha - 0.98) / 0.98, 0.005) << n;
    EXPECT_NEAR(r.fit.B, 1.0 / d, 1e-3);
  }
}

TEST(Rb, AgreesWithAverageGateError) {
  const double a = 0.99;
  const QuantumChannel noise = QuantumChannel::depolarizing(a, 4);
  RbConfig cfg;
  cfg.threads = 4;
  const RbResult r = simulate_rb(clifford_group(2), noise, cfg);
  const double eps_metric = average_gate_error(noise, Mat4::Identity()).epsilon;
  EXPECT_LT(std::abs(r.fit.epsilon - eps_metric) / eps_metric, 0.10);
}

TEST(Rb, ReproducibleAndSeedSensitive) {
  RbConfig cfg;
  cfg.n_seeds = 6;
  cfg.n_shots = 200;
  cfg.seed = 42;
  const QuantumChannel noise = QuantumChannel::depolarizing(0.97, 4);
  const RbResult a = simulate_rb(clifford_group(2), noise, cfg);
  cfg.threads = 3;
  const RbResult b = simulate_rb(clifford_group(2), noise, cfg);
  EXPECT_EQ(a.survival, b.survival);
  cfg.seed = 43;
  const RbResult c = simulate_rb(clifford_group(2), noise, cfg);
  EXPECT_NE(a.survival, c.survival);
}

TEST(Rb, InputValidation) {
  RbConfig cfg;
  EXPECT_THROW(simulate_rb(clifford_group(2), QuantumChannel::identity(2), cfg), Error);
  cfg.n_seeds = 0;
  EXPECT_THROW(simulate_rb(clifford_group(1), QuantumChannel::identity(2), cfg), Error);
}

const RbResult& device_rb(int n_seeds) {
  static std::map<int, RbResult> cache;
  auto it = cache.find(n_seeds);
  if (it != cache.end()) return it->second;
  const DeviceModel m = resolve(paper_device_card());
  const auto [ch, ideal] = device_gate_channel(m, 0.5, 200.0);
  RbConfig cfg;
  cfg.n_seeds = n_seeds;
  cfg.threads = 4;
  return cache.emplace(n_seeds, simulate_rb(clifford_group(2), primitive_noise_channel(ch, ideal), cfg))
      .first->second;
}

TEST(Rb, PresentDeviceSweetSpot) {
  const RbResult& r = device_rb(30);
  ASSERT_TRUE(r.fit.converged);
  EXPECT_LT(std::abs(r.fit.epsilon - 1.8e-2) / 1.8e-2, 0.5) << r.fit.epsilon;
  EXPECT_GT(r.fit.epsilon_stderr, 0.0);
}

TEST(Rb, FitStableUnderMoreSeeds) {
  const RbResult& a = device_rb(30);
  const RbResult& b = device_rb(60);
  EXPECT_LT(std::abs(a.fit.epsilon - b.fit.epsilon), a.fit.epsilon_stderr);
}

}  // namespace
}  // namespace crzz
