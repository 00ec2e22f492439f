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

#include "crzz/qubit_spectra.hpp"

namespace crzz {
namespace {

TEST(Transmon, PerturbativeOracle) {
  const TransmonParams p;  // E_J = 13.7, E_C = 0.286
  const SpectrumTable s = transmon_spectrum(p);
  const double oracle = std::sqrt(8.0 * p.E_J * p.E_C) - p.E_C;
  EXPECT_NEAR(oracle, 5.3127, 1e-4);
  EXPECT_LT(std::abs(s.omega(0) - oracle) / s.omega(0), 0.015);
  EXPECT_LT(s.delta(0), 0.0);
}

TEST(Transmon, EJScaling) {
  TransmonParams p;
  const double w = transmon_spectrum(p).omega(0);
  p.E_J *= 4.0;
  EXPECT_NEAR(transmon_spectrum(p).omega(0) / w, 2.0, 0.2);
}

TEST(Transmon, CutoffValidation) {
  TransmonParams p;
  p.charge_cutoff = 5;
  EXPECT_THROW(transmon_spectrum(p), Error);
}

TEST(Transmon, FitEJHitsTarget) {
  TransmonParams p;
  p.E_J = fit_transmon_EJ(p, 5.2920);
  EXPECT_NEAR(transmon_spectrum(p).omega(0), 5.2920, 1e-9);
  EXPECT_NEAR(p.E_J, 13.6821, 1e-3);
}

TEST(Csfq, SweetSpotValues) {
  const CsfqParams p;  // E_J = 123.1, E_C = 0.268, alpha = 0.43
  const SpectrumTable s = csfq_spectrum(p, FluxBias(0.5));
  EXPECT_LT(std::abs(s.omega(0) - 5.06) / 5.06, 0.05);
  EXPECT_GT(s.delta(0), 0.0);
  EXPECT_LT(std::abs(s.delta(0) - 0.59) / 0.59, 0.20);
}

TEST(Csfq, TableIdentities) {
  const SpectrumTable s = csfq_spectrum(CsfqParams{}, FluxBias(0.497));
  ASSERT_EQ(s.size(), 5);
  EXPECT_EQ(s.levels[0], 0.0);
  for (int n = 0; n + 1 < s.size(); ++n) {
    EXPECT_GT(s.levels[n + 1], s.levels[n]);
    EXPECT_NEAR(s.omega(n), s.levels[n + 1] - s.levels[n], 1e-12);
  }
  for (int n = 0; n + 2 < s.size(); ++n) EXPECT_NEAR(s.delta(n), s.omega(n + 1) - s.omega(n), 1e-12);
}

TEST(Csfq, FluxSymmetry) {
  const CsfqParams p;
  for (double f : {0.49, 0.496, 0.5, 0.503}) {
    const SpectrumTable a = csfq_spectrum(p, FluxBias(f));
    const SpectrumTable b = csfq_spectrum(p, FluxBias(1.0 - f));
    for (int n = 0; n < a.size(); ++n) EXPECT_NEAR(a.levels[n], b.levels[n], 1e-10) << f;
  }
}

TEST(Csfq, BasisConvergence) {
  CsfqParams p;
  const SpectrumTable a = csfq_spectrum(p, FluxBias(0.5), false);
  p.basis_size = 2 * p.basis_size + 1;
  const SpectrumTable b = csfq_spectrum(p, FluxBias(0.5), false);
  EXPECT_LT(std::abs(a.omega(0) - b.omega(0)), 1e-6);
  EXPECT_LT(std::abs(a.omega(1) - b.omega(1)), 1e-6);
}

TEST(Csfq, RegimeAndRangeErrors) {
  CsfqParams p;
  p.alpha = 0.5;
  try {
    csfq_spectrum(p, FluxBias(0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Regime);
  }
  EXPECT_THROW(FluxBias(1.2), Error);
  EXPECT_THROW(FluxBias(-0.1), Error);
}

TEST(Csfq, SweetSpotIsStationary) {
  const CsfqParams p;
  EXPECT_NEAR(flux_derivative(p, FluxBias(0.5)), 0.0, 1e-4);
  const double d490 = flux_derivative(p, FluxBias(0.49));
  const double d496 = flux_derivative(p, FluxBias(0.496));
  EXPECT_GT(std::abs(d490), std::abs(d496));
  // The sweet spot is a frequency minimum: the gradient has the sign of f - 0.5.
  EXPECT_GT(flux_derivative(p, FluxBias(0.504)), 0.0);
  EXPECT_LT(d496, 0.0);
  const double w50 = csfq_spectrum(p, FluxBias(0.5)).omega(0);
  for (double f : {0.49, 0.495, 0.505, 0.51}) EXPECT_GT(csfq_spectrum(p, FluxBias(f)).omega(0), w50);
}

TEST(Csfq, FluxDerivativeDomain) {
  EXPECT_THROW(flux_derivative(CsfqParams{}, FluxBias(0.0)), Error);
  EXPECT_THROW(flux_derivative(CsfqParams{}, FluxBias(0.5), 1e-12), Error);
}

TEST(Csfq, FitEJHitsBareFrequency) {
  CsfqParams p;
  p.E_J = fit_csfq_EJ(p, 5.0616);
  EXPECT_NEAR(csfq_spectrum(p, FluxBias(0.5)).omega(0), 5.0616, 1e-8);
  EXPECT_NEAR(p.E_J, 121.134, 0.01);
}

TEST(Duffing, Ladder) {
  const SpectrumTable s = duffing_spectrum(5.0, -0.3, 4);
  EXPECT_NEAR(s.omega(0), 5.0, 1e-12);
  EXPECT_NEAR(s.omega(2), 4.4, 1e-12);
  EXPECT_NEAR(s.delta(1), -0.3, 1e-12);
}

}  // namespace
}  // namespace crzz
