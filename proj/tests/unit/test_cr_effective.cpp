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

#include "crzz/device_card.hpp"
#include "crzz/fit.hpp"

namespace crzz {
namespace {

const FluxPointModel& sweet() {
  static const FluxPointModel p = flux_point(resolve(paper_device_card()), 0.5);
  return p;
}

CrDrive drive(double omega, double phi0 = kPi, double R = 0.0) {
  CrDrive d = sweet().drive.with_amplitude(omega);
  d.phi0 = phi0;
  d.R = R;
  return d;
}

BlockDiagResult block(const CrDrive& d) {
  return least_action_block_diag(build_rotating_hamiltonian(sweet().d, d));
}

TEST(RotatingFrame, ZeroDriveIsDiagonal) {
  const TruncatedFrame tf = build_rotating_hamiltonian(sweet().d, drive(0.0));
  MatC off = tf.H;
  off.diagonal().setZero();
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(tf.H(0, 0).real(), 0.0, 1e-15);
}

TEST(RotatingFrame, LinearInAmplitude) {
  const TruncatedFrame a = build_rotating_hamiltonian(sweet().d, drive(20.0, kPi, 0.02));
  const TruncatedFrame b = build_rotating_hamiltonian(sweet().d, drive(40.0, kPi, 0.02));
  MatC oa = a.H, ob = b.H;
  oa.diagonal().setZero();
  ob.diagonal().setZero();
  EXPECT_LT((ob - 2.0 * oa).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((a.H.diagonal() - b.H.diagonal()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RotatingFrame, InputValidation) {
  EXPECT_THROW(build_rotating_hamiltonian(sweet().d, drive(-1.0)), Error);
  const DressedFrame small = dress(build_hamiltonian(duffing_spectrum(5.0, -0.3, 3),
                                                     duffing_spectrum(4.8, -0.25, 3),
                                                     constant_J(3, 3, 1e-3), 3, 3));
  EXPECT_THROW(build_rotating_hamiltonian(small, CrDrive{}), Error);
}

TEST(BlockDiag, ZeroDriveIsIdentity) {
  const BlockDiagResult r = block(drive(0.0));
  EXPECT_LT(r.distance_from_identity, 1e-10);
  EXPECT_LT(r.off_block_residue, 1e-10);
  const CrPoint p = evaluate_cr(sweet().d, drive(0.0));
  EXPECT_NEAR(p.beta.ZZ, sweet().zeta * 1e3, 1e-9);
  EXPECT_NEAR(p.beta.ZX, 0.0, 1e-12);
  EXPECT_NEAR(p.f_ecr, sweet().zeta * 1e3, 1e-9);
}

TEST(BlockDiag, ExactnessAndUnitarity) {
  double prev = 0.0;
  for (double om : {1.0, 10.0, 50.0, 100.0, 150.0}) {
    const BlockDiagResult r = block(drive(om, kPi, 0.013));
    EXPECT_LT(r.off_block_residue, 1e-10) << om;
    EXPECT_LT(r.unitarity_defect, 1e-10) << om;
    EXPECT_GT(r.distance_from_identity, prev);
    prev = r.distance_from_identity;
  }
  // ||T - I|| = O(Omega) at small amplitude.
  const double d1 = block(drive(1.0)).distance_from_identity;
  const double d2 = block(drive(2.0)).distance_from_identity;
  EXPECT_NEAR(d2 / d1, 2.0, 0.05);
}

TEST(BlockDiag, AnticrossingIsFlagged) {
  const Anticrossing ac = find_anticrossing(sweet().d, drive(0.0), 150.0, 300.0);
  EXPECT_NEAR(ac.Omega, 219.17, 0.5);
  const BlockDiagResult far = block(drive(100.0));
  EXPECT_GT(far.min_block_singular_value, 0.95);
  bool flagged = false;
  try {
    const BlockDiagResult near = block(drive(ac.Omega));
    flagged = near.min_block_singular_value < 0.75 &&
              near.distance_from_identity > 4.0 * far.distance_from_identity;
  } catch (const Error& e) {
    flagged = e.kind() == ErrorKind::BlockDiagonalization;
  }
  EXPECT_TRUE(flagged);
}

TEST(Pauli, DecomposeKnownBlock) {
  const Mat4 h = 0.5 * 10e-3 * pauli::two("ZX");
  const PauliCoefficients b = pauli_decompose(h);
  EXPECT_NEAR(b.ZX, 10.0, 1e-12);
  for (double v : {b.ZI, b.IX, b.IY, b.ZY, b.ZZ}) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_NEAR(echoed_cr_frequency(b), 20.0, 1e-12);
  PauliCoefficients five;
  five.ZX = 5.0;
  EXPECT_NEAR(echoed_cr_frequency(five), 10.0, 1e-12);
}

TEST(Pauli, RoundTrip) {
  PauliCoefficients b;
  b.ZI = 0.3;
  b.IX = -0.7;
  b.IY = 0.2;
  b.ZX = 4.0;
  b.ZY = 0.05;
  b.ZZ = 0.11;
  const PauliCoefficients c = pauli_decompose(pauli_hamiltonian(b));
  EXPECT_NEAR(c.ZI, b.ZI, 1e-12);
  EXPECT_NEAR(c.IX, b.IX, 1e-12);
  EXPECT_NEAR(c.IY, b.IY, 1e-12);
  EXPECT_NEAR(c.ZX, b.ZX, 1e-12);
  EXPECT_NEAR(c.ZY, b.ZY, 1e-12);
  EXPECT_NEAR(c.ZZ, b.ZZ, 1e-12);
}

TEST(Pauli, PhaseFlipSymmetry) {
  for (double om : {15.0, 60.0}) {
    const PauliCoefficients a = evaluate_cr(sweet().d, drive(om, kPi)).beta;
    const PauliCoefficients b = evaluate_cr(sweet().d, drive(om, 0.0)).beta;
    EXPECT_NEAR(a.ZZ, b.ZZ, 1e-9);
    EXPECT_NEAR(a.ZX, -b.ZX, 1e-9);
    EXPECT_NEAR(a.IX, -b.IX, 1e-9);
  }
}

TEST(Pauli, RealDriveHasNoYTerms) {
  const PauliCoefficients b = evaluate_cr(sweet().d, drive(50.0, kPi, 0.0)).beta;
  EXPECT_NEAR(b.IY, 0.0, 1e-9);
  EXPECT_NEAR(b.ZY, 0.0, 1e-9);
  EXPECT_GT(std::abs(b.ZX), 1.0);
}

TEST(Pauli, CrosstalkShapesMatchSweetSpotCalibration) {
  CrDrive d = drive(60.0, kPi, 0.0125);
  d.phi1 = kPi + 0.4;
  const PauliCoefficients b = evaluate_cr(sweet().d, d).beta;
  EXPECT_GT(std::abs(b.ZX), 10.0 * std::abs(b.ZY));
  EXPECT_GT(std::abs(b.IY), 1e-3);
}

TEST(Pauli, InvariantUnderTwoPiPhase) {
  const PauliCoefficients a = evaluate_cr(sweet().d, drive(40.0, kPi, 0.02)).beta;
  CrDrive d = drive(40.0, kPi + kTwoPi, 0.02);
  d.phi1 += kTwoPi;
  const PauliCoefficients b = evaluate_cr(sweet().d, d).beta;
  EXPECT_NEAR(a.ZX, b.ZX, 1e-9);
  EXPECT_NEAR(a.IY, b.IY, 1e-9);
}

TEST(EchoRate, SweetSpotSlope) {
  const double g = low_amplitude_slope(sweet().d, drive(0.0));
  EXPECT_NEAR(g, 0.0861, 5e-4);
  EXPECT_NEAR(g, 0.1, 0.02);
  EXPECT_THROW(low_amplitude_slope(sweet().d, drive(0.0), DriveLadder::Unit, 0.0), Error);
}

TEST(EchoRate, PlateauNearAnticrossing) {
  const Anticrossing ac = find_anticrossing(sweet().d, drive(0.0), 150.0, 300.0);
  const PlateauEstimate p = plateau_onset(sweet().d, drive(0.0), 1.5 * ac.Omega);
  EXPECT_LT(std::abs(p.onset - ac.Omega) / ac.Omega, 0.10);
  EXPECT_LT(p.slope_high, p.slope_low);
}

// Independent oracle: evolve the 4x4 block through +Omega, XI, -Omega, XI and
// fit the target-qubit oscillation. The closed form ignores the control's own
// off-resonant drive, so the full block only matches it at low amplitude.
TEST(EchoRate, TimeDomainOracle) {
  for (double om : {20.0, 60.0, 120.0}) {
    CrDrive minus = drive(om);
    minus.phi0 += kPi;
    const Mat4 hp = block(drive(om)).H4;
    const Mat4 hm = block(minus).H4;
    const double f_ecr = echoed_cr_frequency(pauli_decompose(hp));
    const double f_td = echo_oracle_frequency(control_diagonal_part(hp), control_diagonal_part(hm), f_ecr);
    EXPECT_LT(std::abs(f_td - f_ecr) / f_ecr, 0.02) << om;
  }
  CrDrive minus = drive(20.0);
  minus.phi0 += kPi;
  const Mat4 hp = block(drive(20.0)).H4;
  const double f_ecr = echoed_cr_frequency(pauli_decompose(hp));
  const double f_full = echo_oracle_frequency(hp, block(minus).H4, f_ecr);
  EXPECT_LT(std::abs(f_full - f_ecr) / f_ecr, 0.02);
}

TEST(DynamicZZ, NeedsFivePoints) {
  EXPECT_THROW(dynamic_zz(sweet().d, drive(0.0), {1, 2, 3, 4}), Error);
}

TEST(DynamicZZ, PresentDeviceFit) {
  std::vector<double> om;
  for (int i = 1; i <= 8; ++i) om.push_back(5.0 * i);
  const DynamicZZFit f = dynamic_zz(sweet().d, drive(0.0), om);
  EXPECT_NEAR(f.zeta0, sweet().zeta, 2e-6);
  EXPECT_GT(f.eta, 0.0);
  EXPECT_NEAR(f.eta, 3.2e-7, 1e-7);
}

TEST(DynamicZZ, ZeroZZDeviceKeepsDynamicPart) {
  const DeviceModel m = resolve(ideal_zz_free_card());
  const FluxPointModel p = flux_point(m, 0.5);
  EXPECT_LT(std::abs(p.zeta), 1e-9);
  std::vector<double> om;
  for (int i = 1; i <= 8; ++i) om.push_back(5.0 * i);
  CrDrive base = p.drive;
  const DynamicZZFit f = dynamic_zz(p.d, base, om);
  EXPECT_NE(f.eta, 0.0);
  EXPECT_GT(std::abs(f.beta_zz.back()), 10.0 * std::abs(p.zeta) * 1e3);
}

TEST(Expansion, RecoversSyntheticCoefficients) {
  const double B = 0.05, C = -2e-6, D = 0.01, E = 3e-7, K = 0.9;
  std::vector<PauliSample> s;
  for (double om : {10.0, 20.0, 40.0, 60.0, 80.0}) {
    for (double phi0 : {kPi, kPi + 0.3}) {
      PauliSample x{om, phi0, kPi + 0.4, 0.02, {}};
      x.beta.ZX = (B * om + C * om * om * om) * std::cos(phi0);
      x.beta.ZY = (B * om + C * om * om * om) * std::sin(phi0);
      x.beta.IX = (D * om + E * om * om * om) * std::cos(phi0) + K * x.R * om * std::cos(x.phi1);
      x.beta.IY = (D * om + E * om * om * om) * std::sin(phi0) + K * x.R * om * std::sin(x.phi1);
      s.push_back(x);
    }
  }
  const PauliExpansionFit f = fit_pauli_expansion(s);
  EXPECT_NEAR(f.B, B, 1e-10);
  EXPECT_NEAR(f.C, C, 1e-12);
  EXPECT_NEAR(f.D, D, 1e-10);
  EXPECT_NEAR(f.E, E, 1e-12);
  ASSERT_TRUE(f.has_K);
  EXPECT_NEAR(f.K, K, 1e-8);
}

}  // namespace
}  // namespace crzz
