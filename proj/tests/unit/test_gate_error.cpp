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

#include <algorithm>
#include <cmath>

#include "crzz/device_card.hpp"
#include "crzz/gate_error.hpp"

namespace crzz {
namespace {

const DeviceModel& present() {
  static const DeviceModel m = resolve(paper_device_card());
  return m;
}

const FluxPointModel& sweet() {
  static const FluxPointModel p = flux_point(present(), 0.5);
  return p;
}

TEST(Fidelity, IdentityIsPerfect) {
  const GateFidelity g = average_gate_error(QuantumChannel::identity(4), Mat4::Identity());
  EXPECT_NEAR(g.epsilon, 0.0, 1e-15);
  EXPECT_NEAR(g.F_pro, 1.0, 1e-15);
}

TEST(Fidelity, DepolarizingClosedForm) {
  for (double a : {0.99, 0.95, 0.8}) {
    const Mat4 u = zx_gate(kPi / 2);
    const QuantumChannel ch = QuantumChannel::unitary(u).then(QuantumChannel::depolarizing(a, 4));
    EXPECT_NEAR(average_gate_error(ch, u).epsilon, 0.75 * (1.0 - a), 1e-12);
  }
}

TEST(Fidelity, VirtualZPhasesAreFree) {
  const Mat4 u = zx_gate(kPi / 2);
  const QuantumChannel ch = QuantumChannel::unitary(z_phases(0.7, -1.1) * u);
  EXPECT_LT(average_gate_error(ch, u).epsilon, 1e-10);
  EXPECT_GT(average_gate_error(ch, u, false).epsilon, 1e-2);
}

TEST(Echo, ZeroDriveIsIdentity) {
  const DeviceModel m = resolve(ideal_zz_free_card());
  const FluxPointModel p = flux_point(m, 0.5);
  const Mat4 h0 = least_action_block_diag(build_rotating_hamiltonian(p.d, p.drive)).H4;
  EchoedCrInputs in;
  in.H_plus = in.H_minus = h0;
  in.tau_eff = 40.0;
  in.t_g = 200.0;
  in.decoherence = false;
  EXPECT_LT(average_gate_error(echoed_sequence_channel(in), Mat4::Identity()).epsilon, 1e-6);
}

TEST(Echo, NoiselessCalibratedGateIsZX90) {
  CalibratedGate g = calibrate_gate(present(), sweet(), 200.0);
  EXPECT_NEAR(g.Omega, 50.0, 30.0);
  EchoedCrInputs in;
  PauliCoefficients p = g.plus0, mi = g.minus0;
  p.ZZ = mi.ZZ = 0.0;
  in.H_plus = pauli_hamiltonian(p);
  in.H_minus = pauli_hamiltonian(mi);
  in.tau_eff = g.schedule.tau_eff;
  in.t_g = g.schedule.t_g;
  in.decoherence = false;
  const GateFidelity f = average_gate_error(echoed_sequence_channel(in), g.ideal);
  EXPECT_GE(f.F_pro, 0.9999);
}

TEST(Echo, CalibrationRejectsShortGates) {
  try {
    calibrate_gate(present(), sweet(), 120.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfeasibleSchedule);
  }
}

TEST(GateError, BreakdownOrderingAt560) {
  const GateErrorPoint g = gate_error_point(present(), sweet(), 560.0);
  ASSERT_TRUE(g.ok) << g.message;
  EXPECT_LE(g.eps_coherence, g.eps_zz);
  EXPECT_LE(g.eps_zz, g.eps_full);
  EXPECT_NEAR(g.eps_full, 4.85e-2, 2e-3);
}

TEST(GateError, ShortGateNearSweetSpot) {
  const GateErrorPoint g = gate_error_point(present(), flux_point(present(), 0.496), 200.0);
  ASSERT_TRUE(g.ok) << g.message;
  EXPECT_LT(std::abs(g.eps_full - 1.6e-2) / 1.6e-2, 0.5) << g.eps_full;
}

TEST(GateError, WShapeAndShortestGateWins) {
  std::vector<double> fs;
  for (int i = 0; i <= 10; ++i) fs.push_back(0.490 + 0.002 * i);
  const std::vector<double> tgs{200.0, 300.0, 440.0, 560.0};
  const auto rows = error_vs_flux_sweep(present(), tgs, fs, 4);
  ASSERT_EQ(rows.size(), tgs.size() * fs.size());
  std::vector<double> mins;
  for (std::size_t k = 0; k < tgs.size(); ++k) {
    double lo = 1.0, hi = 1.0, mid = 0.0, best = 1.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const GateErrorPoint& g = rows[k * fs.size() + i];
      ASSERT_TRUE(g.ok) << g.message;
      EXPECT_DOUBLE_EQ(g.t_g, tgs[k]);
      EXPECT_DOUBLE_EQ(g.f, fs[i]);
      best = std::min(best, g.eps_full);
      if (g.f < 0.4999) lo = std::min(lo, g.eps_full);
      if (g.f > 0.5001) hi = std::min(hi, g.eps_full);
      if (std::abs(g.f - 0.5) < 1e-9) mid = g.eps_full;
    }
    mins.push_back(best);
    if (tgs[k] >= 440.0) {
      EXPECT_GT(mid, lo) << tgs[k];
      EXPECT_GT(mid, hi) << tgs[k];
    }
    // Rising wings.
    EXPECT_GT(rows[k * fs.size()].eps_full, lo);
    EXPECT_GT(rows[k * fs.size() + fs.size() - 1].eps_full, hi);
  }
  for (std::size_t k = 1; k < mins.size(); ++k) EXPECT_LT(mins[0], mins[k]);
}

TEST(GateError, NoZZNoCrosstalkCollapsesToCoherence) {
  DeviceModel m = present();
  m.zeta0_override = 0.0;
  m.eta_override = 0.0;
  m.crosstalk.enabled = false;
  for (double f : {0.496, 0.5}) {
    const GateErrorPoint g = gate_error_point(m, flux_point(m, f), 300.0);
    ASSERT_TRUE(g.ok);
    EXPECT_NEAR(g.eps_zz, g.eps_coherence, 0.03 * g.eps_coherence) << f;
    EXPECT_DOUBLE_EQ(g.eps_full, g.eps_zz);
  }
}

TEST(GateError, InvariantUnderTwoPiDrivePhase) {
  DeviceModel m = present();
  m.phi0 += kTwoPi;
  m.phi1 += kTwoPi;
  const GateErrorPoint a = gate_error_point(present(), sweet(), 300.0);
  const GateErrorPoint b = gate_error_point(m, flux_point(m, 0.5), 300.0);
  EXPECT_NEAR(a.eps_full, b.eps_full, 1e-9);
}

TEST(GateError, SweepRecordsFailuresPerPoint) {
  const auto rows = error_vs_flux_sweep(present(), {100.0, 200.0}, {0.5}, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].ok);
  EXPECT_NE(rows[0].message.find("infeasible-schedule"), std::string::npos);
  EXPECT_TRUE(rows[1].ok);
}

TEST(GateLength, TransmonPairRegime) {
  const DeviceModel m = resolve(transmon_transmon_card());
  const GateLengthCurve c = error_vs_gatelength(m, {180.0, 220.0, 260.0, 300.0}, 0.5, 4);
  EXPECT_LT(std::abs(c.best_eps - 5e-3) / 5e-3, 0.5) << c.best_eps;
  EXPECT_THROW(error_vs_gatelength(m, {150.0}, 0.5), Error);
}

TEST(Jazz, MatchesEigenvalueZZ) {
  for (double f : {0.49, 0.4925, 0.495, 0.4975, 0.5, 0.5025, 0.505, 0.51}) {
    const FluxPointModel p = flux_point(present(), f);
    const JazzResult j = jazz_extract(p.d);
    EXPECT_LT(std::abs(j.zeta - p.zeta), 1e-6) << f;
  }
}

TEST(Jazz, ZeroZZCard) {
  const FluxPointModel p = flux_point(resolve(ideal_zz_free_card()), 0.5);
  const JazzResult j = jazz_extract(p.d);
  EXPECT_LT(std::abs(j.zeta), 1e-6);
  EXPECT_NEAR(j.fringe_spectator0, 1e-3, 1e-6);
}

TEST(Jazz, SweetSpotMagnitude) {
  const JazzResult j = jazz_extract(sweet().d);
  EXPECT_LT(std::abs(j.zeta * 1e6 - 140.0) / 140.0, 0.30);
}

}  // namespace
}  // namespace crzz
