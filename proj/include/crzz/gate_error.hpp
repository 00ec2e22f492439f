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
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "crzz/cr_effective.hpp"
#include "crzz/device.hpp"
#include "crzz/fit.hpp"
#include "crzz/linalg.hpp"
#include "crzz/noise_model.hpp"
#include "crzz/parallel.hpp"
#include "crzz/pulse_calibration.hpp"

namespace crzz {

/// exp(-i theta ZX / 2).
inline Mat4 zx_gate(double theta) {
  return std::cos(theta / 2.0) * Mat4::Identity() -
         cplx(0.0, 1.0) * std::sin(theta / 2.0) * pauli::two("ZX");
}

/// Rz(a) (x) Rz(b), Rz(a) = diag(e^{-ia/2}, e^{ia/2}).
inline Mat4 z_phases(double a, double b) {
  Mat4 m = Mat4::Zero();
  for (int i = 0; i < 4; ++i) {
    const double s1 = (i & 2) ? 1.0 : -1.0;
    const double s2 = (i & 1) ? 1.0 : -1.0;
    m(i, i) = std::polar(1.0, 0.5 * (s1 * a + s2 * b));
  }
  return m;
}

struct EchoedCrInputs {
  Mat4 H_plus = Mat4::Zero();   // GHz, CR pulse at +Omega
  Mat4 H_minus = Mat4::Zero();  // GHz, CR pulse at -Omega
  double tau_eff = 0.0;         // ns
  double t_g = 0.0;             // ns
  double zeta = 0.0;            // GHz, rate used for the global ZZ map
  CoherenceCard coherence;
  bool decoherence = true;
};

/// U_CR+, XI, U_CR-, XI, U_ZZ, then relaxation on qubit 2 and qubit 1.
inline QuantumChannel echoed_sequence_channel(const EchoedCrInputs& in) {
  const MatC xi = pauli::two("XI");
  const MatC zz = pauli::two("ZZ");
  MatC u = evolution(in.H_plus, in.tau_eff);
  u = xi * u;
  u = evolution(in.H_minus, in.tau_eff) * u;
  u = xi * u;
  u = evolution(in.zeta * zz / 4.0, in.t_g) * u;
  QuantumChannel ch = QuantumChannel::unitary(u, "echoed-cr");
  if (in.decoherence) {
    const double t = in.t_g * 1e-3;
    ch = ch.then(on_qubit(decoherence_channel(in.coherence.T1_q2, in.coherence.T2_q2, t), 2))
             .then(on_qubit(decoherence_channel(in.coherence.T1_q1, in.coherence.T2_q1, t), 1));
  }
  return ch;
}

struct GateFidelity {
  double epsilon = 0.0;
  double F_pro = 1.0;
  double F_avg = 1.0;
  double z1 = 0.0;  // post-gate Z phase on qubit 1
  double z2 = 0.0;
};

/// 1 - F_avg with F_avg = (d F_pro + 1)/(d + 1); F_pro is maximized over a
/// virtual Rz(z1) (x) Rz(z2) applied after the ideal gate.
inline GateFidelity average_gate_error(const QuantumChannel& ch, const MatC& ideal,
                                       bool optimize_z = true) {
  const int d = ch.dim();
  if (ideal.rows() != d) fail(ErrorKind::InvalidInput, "ideal gate dimension mismatch");
  const double d2 = static_cast<double>(d) * d;
  const MatC q = ch.superop() * kron(ideal, ideal.conjugate()).adjoint();
  auto fpro = [&](double a, double b) {
    if (d != 4) return q.trace().real() / d2;
    const Mat4 z = z_phases(a, b);
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) s += std::conj(z(i, i)) * z(j, j) * q(i * 4 + j, i * 4 + j);
    }
    return s.real() / d2;
  };
  GateFidelity g;
  g.F_pro = fpro(0.0, 0.0);
  if (optimize_z && d == 4) {
    constexpr int grid = 24;
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const double a = kTwoPi * i / grid, b = kTwoPi * j / grid;
        const double v = fpro(a, b);
        if (v > g.F_pro) {
          g.F_pro = v;
          g.z1 = a;
          g.z2 = b;
        }
      }
    }
    const double h = kTwoPi / grid;
    for (int round = 0; round < 6; ++round) {
      std::uintmax_t it = 100;
      auto ra = boost::math::tools::brent_find_minima(
          [&](double a) { return -fpro(a, g.z2); }, g.z1 - h, g.z1 + h, 50, it);
      g.z1 = ra.first;
      it = 100;
      auto rb = boost::math::tools::brent_find_minima(
          [&](double b) { return -fpro(g.z1, b); }, g.z2 - h, g.z2 + h, 50, it);
      g.z2 = rb.first;
      g.F_pro = std::max(g.F_pro, -rb.second);
    }
  }
  g.F_avg = (d * g.F_pro + 1.0) / (d + 1.0);
  g.epsilon = std::clamp(1.0 - g.F_avg, 0.0, 1.0);
  return g;
}

/// Amplitude (MHz) with f_ECR(Omega) tau_eff = 1/4 at R = 0.
inline double calibrate_amplitude(const FluxPointModel& p, const DeviceModel& m,
                                  double tau_eff_ns) {
  const double target = 0.25 / (tau_eff_ns * 1e-3);  // MHz
  CrDrive base = p.drive;
  base.R = 0.0;
  auto fecr = [&](double om) { return evaluate_cr(p.d, base.with_amplitude(om), m.ladder).f_ecr; };
  const double gamma = low_amplitude_slope(p.d, base, m.ladder);
  const double om0 = amplitude_for_zx90(gamma, tau_eff_ns);
  auto fn = [&](double om) { return fecr(om) - target; };
  double lo = 0.5 * om0;
  double flo = fn(lo);
  if (flo > 0.0) {
    lo = 0.05 * om0;
    flo = fn(lo);
  }
  const double steps[] = {0.75, 1.0, 1.15, 1.3, 1.5, 1.75, 2.0, 2.5, 3.0};
  for (double s : steps) {
    const double hi = s * om0;
    double fhi;
    try {
      fhi = fn(hi);
    } catch (const Error&) {
      break;
    }
    if (flo <= 0.0 && fhi >= 0.0) {
      std::uintmax_t iters = 80;
      const auto r = boost::math::tools::toms748_solve(
          fn, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(40), iters);
      return 0.5 * (r.first + r.second);
    }
    lo = hi;
    flo = fhi;
  }
  fail(ErrorKind::UnreachableRotation,
       "ZX90 not reachable for tau_eff = " + std::to_string(tau_eff_ns) + " ns");
}

struct GateErrorPoint {
  double f = 0.5;
  double t_g = 0.0;
  double Omega = 0.0;  // MHz
  double R = 0.0;
  double zeta_static = 0.0;  // GHz
  double zeta_drive = 0.0;   // GHz, zeta(Omega) used in the sequence
  double T2_q1 = 0.0;
  double eps_coherence = 0.0;
  double eps_zz = 0.0;
  double eps_full = 0.0;
  bool ok = false;
  std::string message;
};

namespace detail {

inline PauliCoefficients zx_only(const PauliCoefficients& b) {
  PauliCoefficients o;
  o.ZX = b.ZX;
  return o;
}

}  // namespace detail

/// zeta(Omega) in GHz: scenario overrides when present, otherwise the
/// computed beta_ZZ at this amplitude.
inline double drive_zeta(const DeviceModel& m, const FluxPointModel& p, double omega,
                         double beta_zz_mhz) {
  if (!m.zeta0_override && !m.eta_override) return beta_zz_mhz * 1e-3;
  const double z0 = m.zeta0_override ? *m.zeta0_override : p.zeta;
  double eta = 0.0;
  if (m.eta_override) {
    eta = *m.eta_override;
  } else {
    eta = (beta_zz_mhz - p.zeta * 1e3) / std::max(omega * omega, 1e-12);
  }
  return z0 + eta * omega * omega * 1e-3;
}

/// Calibrated echoed-CR gate at one flux point: Pauli coefficients of the
/// +Omega and -Omega pulses with and without crosstalk, beta_ZZ replaced by
/// zeta(Omega).
struct CalibratedGate {
  PulseSchedule schedule;
  double Omega = 0.0;  // MHz
  double R = 0.0;
  double zeta = 0.0;  // GHz
  PauliCoefficients plus0, minus0;  // R = 0
  PauliCoefficients plus, minus;    // R from the crosstalk model
  Mat4 ideal = Mat4::Identity();
};

inline CalibratedGate calibrate_gate(const DeviceModel& m, const FluxPointModel& p, double t_g) {
  CalibratedGate g;
  g.schedule = schedule_from_gate_length(t_g, m.rise_fall, m.pi_pulse);
  g.R = crosstalk_scale(p.f, g.schedule, m.crosstalk);
  g.Omega = calibrate_amplitude(p, m, g.schedule.tau_eff);
  CrDrive plus = p.drive.with_amplitude(g.Omega);
  CrDrive minus = plus;
  minus.phi0 += kPi;
  minus.phi1 += kPi;
  plus.R = minus.R = 0.0;
  g.plus0 = evaluate_cr(p.d, plus, m.ladder).beta;
  g.minus0 = evaluate_cr(p.d, minus, m.ladder).beta;
  if (g.R > 0.0) {
    plus.R = minus.R = g.R;
    g.plus = evaluate_cr(p.d, plus, m.ladder).beta;
    g.minus = evaluate_cr(p.d, minus, m.ladder).beta;
  } else {
    g.plus = g.plus0;
    g.minus = g.minus0;
  }
  g.zeta = drive_zeta(m, p, g.Omega, g.plus0.ZZ);
  g.plus0.ZZ = g.minus0.ZZ = g.plus.ZZ = g.minus.ZZ = g.zeta * 1e3;
  g.ideal = zx_gate(std::copysign(kPi / 2.0, g.plus0.ZX));
  return g;
}

enum class GateVariant { CoherenceOnly, WithZZ, Full };

inline QuantumChannel gate_channel(const CalibratedGate& g, const CoherenceCard& c,
                                   GateVariant v) {
  EchoedCrInputs in;
  in.tau_eff = g.schedule.tau_eff;
  in.t_g = g.schedule.t_g;
  in.coherence = c;
  switch (v) {
    case GateVariant::CoherenceOnly:
      in.H_plus = pauli_hamiltonian(detail::zx_only(g.plus0));
      in.H_minus = pauli_hamiltonian(detail::zx_only(g.minus0));
      in.zeta = 0.0;
      break;
    case GateVariant::WithZZ:
      in.H_plus = pauli_hamiltonian(g.plus0);
      in.H_minus = pauli_hamiltonian(g.minus0);
      in.zeta = g.zeta;
      break;
    case GateVariant::Full:
      in.H_plus = pauli_hamiltonian(g.plus);
      in.H_minus = pauli_hamiltonian(g.minus);
      in.zeta = g.zeta;
      break;
  }
  return echoed_sequence_channel(in);
}

inline GateErrorPoint gate_error_point(const DeviceModel& m, const FluxPointModel& p, double t_g) {
  GateErrorPoint g;
  g.f = p.f;
  g.t_g = t_g;
  g.zeta_static = p.zeta;
  g.T2_q1 = p.T2_q1;
  try {
    const CalibratedGate cg = calibrate_gate(m, p, t_g);
    g.Omega = cg.Omega;
    g.R = cg.R;
    g.zeta_drive = cg.zeta;
    const CoherenceCard c = p.coherence(m);
    g.eps_coherence = average_gate_error(gate_channel(cg, c, GateVariant::CoherenceOnly), cg.ideal).epsilon;
    g.eps_zz = average_gate_error(gate_channel(cg, c, GateVariant::WithZZ), cg.ideal).epsilon;
    g.eps_full = average_gate_error(gate_channel(cg, c, GateVariant::Full), cg.ideal).epsilon;
    g.ok = true;
  } catch (const Error& e) {
    g.ok = false;
    g.message = e.what();
  }
  return g;
}

/// Rows ordered by (t_g, f). Failing points carry ok = false and a message.
inline std::vector<GateErrorPoint> error_vs_flux_sweep(const DeviceModel& m,
                                                       const std::vector<double>& t_gs,
                                                       const std::vector<double>& fs,
                                                       int threads = 1) {
  for (double f : fs) {
    if (f < 0.0 || f > 1.0) fail(ErrorKind::InvalidInput, "flux outside [0, 1]");
  }
  const auto per_f = parallel_map<std::vector<GateErrorPoint>>(fs.size(), threads, [&](std::size_t i) {
    std::vector<GateErrorPoint> row;
    try {
      const FluxPointModel p = flux_point(m, fs[i]);
      for (double tg : t_gs) row.push_back(gate_error_point(m, p, tg));
    } catch (const Error& e) {
      for (double tg : t_gs) {
        GateErrorPoint g;
        g.f = fs[i];
        g.t_g = tg;
        g.message = e.what();
        row.push_back(g);
      }
    }
    return row;
  });
  std::vector<GateErrorPoint> out;
  for (std::size_t k = 0; k < t_gs.size(); ++k) {
    for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(per_f[i][k]);
  }
  return out;
}

struct GateLengthPoint {
  double t_g = 0.0;
  double eps_total = 0.0;
  double eps_coherence_limit = 0.0;
  bool ok = false;
  std::string message;
};

struct GateLengthCurve {
  std::vector<GateLengthPoint> points;
  double best_t_g = 0.0;
  double best_eps = 1.0;
};

/// Error vs gate length at one flux point. The total includes crosstalk when
/// the model enables it.
inline GateLengthCurve error_vs_gatelength(const DeviceModel& m, const std::vector<double>& t_gs,
                                           double f = 0.5, int threads = 1) {
  const FluxPointModel p = flux_point(m, f);
  GateLengthCurve c;
  c.points = parallel_map<GateLengthPoint>(t_gs.size(), threads, [&](std::size_t i) {
    if (t_gs[i] < 4.0 * m.rise_fall + 2.0 * m.pi_pulse) {
      fail(ErrorKind::InfeasibleSchedule, "gate length below the fixed overhead");
    }
    const GateErrorPoint g = gate_error_point(m, p, t_gs[i]);
    GateLengthPoint q;
    q.t_g = t_gs[i];
    q.ok = g.ok;
    q.message = g.message;
    q.eps_coherence_limit = g.eps_coherence;
    q.eps_total = m.crosstalk.enabled ? g.eps_full : g.eps_zz;
    return q;
  });
  for (const auto& q : c.points) {
    if (q.ok && q.eps_total < c.best_eps) {
      c.best_eps = q.eps_total;
      c.best_t_g = q.t_g;
    }
  }
  return c;
}

struct JazzParams {
  double detuning = 1.0e-3;  // GHz, artificial fringe frequency
  double t_max = 10.0e3;     // ns
  int n_points = 401;
};

struct JazzResult {
  double zeta = 0.0;  // GHz
  double fringe_spectator0 = 0.0;  // GHz
  double fringe_spectator1 = 0.0;
};

/// Echo-Ramsey on qubit 2 with a pi pulse on both qubits at the midpoint,
/// run with qubit 1 prepared in |0> and in |1>. Pulses are ideal rotations
/// between dressed states; free evolution uses the dressed energies in the
/// frame rotating at both dressed qubit frequencies.
inline JazzResult jazz_extract(const DressedFrame& d, const JazzParams& jp = {}) {
  if (d.dims.size() != 2) fail(ErrorKind::InvalidInput, "JAZZ needs a two-mode frame");
  const int n1 = d.dims[0], n2 = d.dims[1];
  const int n = n1 * n2;
  const double w1 = d.transition(1), w2 = d.transition(2);
  VecR e(n);
  for (int a = 0; a < n1; ++a) {
    for (int b = 0; b < n2; ++b) {
      e(d.index(a, b)) = d.level(a, b) - d.level(0, 0) - a * w1 - b * w2;
    }
  }
  auto rot = [&](int q, double theta, double phase) {
    MatC r2(2, 2);
    r2 << std::cos(theta / 2), cplx(0, -1) * std::polar(1.0, -phase) * std::sin(theta / 2),
        cplx(0, -1) * std::polar(1.0, phase) * std::sin(theta / 2), std::cos(theta / 2);
    MatC full1 = MatC::Identity(n1, n1), full2 = MatC::Identity(n2, n2);
    (q == 1 ? full1 : full2).topLeftCorner(2, 2) = r2;
    return MatC(kron(full1, full2));
  };
  auto free = [&](const VecC& psi, double t) {
    VecC out(n);
    for (int k = 0; k < n; ++k) out(k) = std::polar(1.0, -kTwoPi * e(k) * t) * psi(k);
    return out;
  };
  const MatC pi_both = rot(1, kPi, 0.0) * rot(2, kPi, 0.0);
  std::vector<double> ts(static_cast<std::size_t>(jp.n_points));
  for (int i = 0; i < jp.n_points; ++i) ts[i] = jp.t_max * i / (jp.n_points - 1);

  double fr[2];
  for (int s = 0; s < 2; ++s) {
    std::vector<double> p1(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      VecC psi = VecC::Zero(n);
      psi(d.index(s, 0)) = 1.0;
      psi = rot(2, kPi / 2, 0.0) * psi;
      psi = free(psi, ts[i] / 2);
      psi = pi_both * psi;
      psi = free(psi, ts[i] / 2);
      psi = rot(2, kPi / 2, kTwoPi * jp.detuning * ts[i]) * psi;
      double pop = 0.0;
      for (int a = 0; a < n1; ++a) pop += std::norm(psi(d.index(a, 1)));
      p1[i] = pop;
    }
    const SinusoidFit sf = fit_sinusoid(ts, p1, 0.2 * jp.detuning, 3.0 * jp.detuning);
    fr[s] = sf.frequency;
  }
  JazzResult r;
  r.fringe_spectator0 = fr[0];
  r.fringe_spectator1 = fr[1];
  r.zeta = fr[0] - fr[1];
  return r;
}

}  // namespace crzz
