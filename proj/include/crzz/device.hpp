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

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "crzz/coupled_system.hpp"
#include "crzz/cr_effective.hpp"
#include "crzz/noise_model.hpp"
#include "crzz/parallel.hpp"
#include "crzz/pulse_calibration.hpp"
#include "crzz/qubit_spectra.hpp"

namespace crzz {

/// Flux-independent ladder given by a transition frequency and anharmonicity.
struct MeasuredLadder {
  double omega = 0.0;  // GHz
  double delta = 0.0;  // GHz
};

struct JOverride {
  int n1 = 0;
  int n2 = 0;
  double J = 0.0;  // GHz
};

/// Everything needed to evaluate the device at a flux point. Qubit 1 is the
/// CR control (CSFQ), qubit 2 the target (transmon).
struct DeviceModel {
  std::string label = "device";

  CsfqParams csfq;
  std::optional<double> csfq_fit_bare_GHz;  // fit E_J to bare w(0) at f = 0.5
  bool csfq_fit_zero_zz = false;            // fit E_J so that zeta(0.5) = 0
  std::optional<MeasuredLadder> csfq_measured;

  TransmonParams transmon;
  std::optional<double> transmon_fit_bare_GHz;
  std::optional<MeasuredLadder> transmon_measured;

  CouplingSet couplings;
  std::optional<double> J_uniform;  // GHz, replaces the bus formula
  std::vector<JOverride> J_overrides;
  int levels = 5;

  CoherenceCard coherence;
  bool flux_dependent_T2_q1 = true;
  DephasingModel dephasing;
  DephasingMode dephasing_mode = DephasingMode::RbEffective;

  CrosstalkModel crosstalk;
  double phi0 = kPi;
  double phi1 = kPi + 0.4;
  DriveLadder ladder = DriveLadder::Unit;
  double rise_fall = 20.0;
  double pi_pulse = 40.0;

  std::optional<double> zeta0_override;  // GHz
  std::optional<double> eta_override;    // 1/MHz
};

struct FluxPointModel {
  double f = 0.5;
  SpectrumTable s1, s2;
  JTable J;
  CoupledHamiltonian h;
  DressedFrame d;
  double zeta = 0.0;   // GHz
  double D_phi = 0.0;  // GHz per flux quantum
  double T2_q1 = 0.0;  // us, effective
  CrDrive drive;       // omega_d, phases; Omega = R = 0

  CoherenceCard coherence(const DeviceModel& m) const {
    CoherenceCard c = m.coherence;
    c.T2_q1 = T2_q1;
    return c;
  }
};

inline SpectrumTable control_spectrum(const DeviceModel& m, double f) {
  if (m.csfq_measured) return duffing_spectrum(m.csfq_measured->omega, m.csfq_measured->delta, m.levels);
  CsfqParams p = m.csfq;
  p.n_levels = std::max(p.n_levels, m.levels);
  return csfq_spectrum(p, FluxBias(f));
}

inline SpectrumTable target_spectrum(const DeviceModel& m) {
  if (m.transmon_measured) {
    return duffing_spectrum(m.transmon_measured->omega, m.transmon_measured->delta, m.levels);
  }
  TransmonParams p = m.transmon;
  p.n_levels = std::max(p.n_levels, m.levels);
  return transmon_spectrum(p);
}

inline JTable J_table_for(const DeviceModel& m, const SpectrumTable& s1, const SpectrumTable& s2) {
  JTable J = m.J_uniform ? constant_J(m.levels, m.levels, *m.J_uniform)
                         : J_table_from_couplings(m.couplings, s1, s2, m.levels, m.levels);
  for (const JOverride& o : m.J_overrides) {
    if (o.n1 < 0 || o.n2 < 0 || o.n1 >= m.levels - 1 || o.n2 >= m.levels - 1) {
      fail(ErrorKind::InvalidInput, "J override index out of range");
    }
    J.values(o.n1, o.n2) = o.J;
  }
  return J;
}

inline FluxPointModel flux_point(const DeviceModel& m, double f) {
  FluxPointModel p;
  p.f = f;
  p.s1 = control_spectrum(m, f);
  p.s2 = target_spectrum(m);
  p.J = J_table_for(m, p.s1, p.s2);
  p.h = build_hamiltonian(p.s1, p.s2, p.J, m.levels, m.levels);
  p.d = dress(p.h);
  p.zeta = static_zz_exact(p.d);
  if (!m.csfq_measured && f > 0.0 && f < 1.0) {
    CsfqParams c = m.csfq;
    p.D_phi = flux_derivative(c, FluxBias(f));
  }
  p.T2_q1 = m.flux_dependent_T2_q1
                ? effective_T2(m.coherence.T1_q1,
                               pure_dephasing_rate(p.D_phi, m.dephasing, m.dephasing_mode))
                : m.coherence.T2_q1;
  p.drive.omega_d = p.d.transition(2);
  p.drive.phi0 = m.phi0;
  p.drive.phi1 = m.phi1;
  return p;
}

/// Applies the E_J calibrations requested by the model and clears them.
inline DeviceModel resolve(DeviceModel m) {
  if (m.transmon_fit_bare_GHz && !m.transmon_measured) {
    m.transmon.E_J = fit_transmon_EJ(m.transmon, *m.transmon_fit_bare_GHz);
  }
  m.transmon_fit_bare_GHz.reset();
  if (m.csfq_fit_bare_GHz && !m.csfq_measured) {
    m.csfq.E_J = fit_csfq_EJ(m.csfq, *m.csfq_fit_bare_GHz, 0.5);
  }
  m.csfq_fit_bare_GHz.reset();
  if (m.csfq_fit_zero_zz && !m.csfq_measured) {
    auto zeta_at = [&](double ej) {
      DeviceModel q = m;
      q.csfq.E_J = ej;
      q.csfq_fit_zero_zz = false;
      return flux_point(q, 0.5).zeta;
    };
    // zeta decreases through zero as the CSFQ approaches the transmon.
    const double e0 = m.csfq.E_J;
    double lo = e0, flo = zeta_at(lo);
    double hi = e0, fhi = flo;
    for (int k = 1; k <= 40 && fhi * flo > 0.0; ++k) {
      hi = e0 * (1.0 + 0.0025 * k * (flo > 0.0 ? 1.0 : -1.0));
      fhi = zeta_at(hi);
    }
    if (fhi * flo > 0.0) fail(ErrorKind::InvalidInput, "no zero-ZZ E_J near the card value");
    std::uintmax_t iters = 60;
    const auto r = boost::math::tools::toms748_solve(
        zeta_at, std::min(lo, hi), std::max(lo, hi), lo < hi ? flo : fhi, lo < hi ? fhi : flo,
        boost::math::tools::eps_tolerance<double>(40), iters);
    m.csfq.E_J = 0.5 * (r.first + r.second);
  }
  m.csfq_fit_zero_zz = false;
  return m;
}

struct SpectrumRow {
  double f;
  double omega0, omega1, delta0;          // bare CSFQ, GHz
  double dressed_omega1, dressed_omega2;  // GHz
};

inline std::vector<SpectrumRow> spectrum_sweep(const DeviceModel& m, const std::vector<double>& fs,
                                               int threads = 1) {
  return parallel_map<SpectrumRow>(fs.size(), threads, [&](std::size_t i) {
    const FluxPointModel p = flux_point(m, fs[i]);
    return SpectrumRow{fs[i], p.s1.omega(0), p.s1.omega(1), p.s1.delta(0),
                       p.d.transition(1), p.d.transition(2)};
  });
}

struct ZZRow {
  double f;
  double zeta_exact;  // GHz
  double zeta_perturbative;
  double J01, J10, Delta, delta1, delta2;
};

inline ZZRow zz_row(const FluxPointModel& p) {
  ZZRow r{};
  r.f = p.f;
  r.zeta_exact = p.zeta;
  r.J01 = p.J(0, 1);
  r.J10 = p.J(1, 0);
  r.Delta = p.s2.omega(0) - p.s1.omega(0);
  r.delta1 = p.s1.delta(0);
  r.delta2 = p.s2.delta(0);
  r.zeta_perturbative = static_zz_perturbative(r.J01, r.J10, r.Delta, r.delta1, r.delta2);
  return r;
}

inline std::vector<ZZRow> zz_sweep(const DeviceModel& m, const std::vector<double>& fs,
                                   int threads = 1) {
  return parallel_map<ZZRow>(fs.size(), threads,
                             [&](std::size_t i) { return zz_row(flux_point(m, fs[i])); });
}

/// Sign changes of zeta_exact between adjacent rows, refined by root finding.
inline std::vector<double> zz_crossings(const DeviceModel& m, const std::vector<ZZRow>& rows) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double a = rows[i].zeta_exact, b = rows[i + 1].zeta_exact;
    if (a == 0.0) {
      out.push_back(rows[i].f);
      continue;
    }
    if (a * b >= 0.0) continue;
    auto fn = [&](double f) { return flux_point(m, f).zeta; };
    std::uintmax_t iters = 60;
    const auto r = boost::math::tools::toms748_solve(fn, rows[i].f, rows[i + 1].f, a, b,
                                                     boost::math::tools::eps_tolerance<double>(30),
                                                     iters);
    out.push_back(0.5 * (r.first + r.second));
  }
  return out;
}

}  // namespace crzz
