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
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "crzz/coupled_system.hpp"
#include "crzz/fit.hpp"
#include "crzz/linalg.hpp"
#include "crzz/types.hpp"

namespace crzz {

/// Ladder matrix elements used for the drive operators. Unit elements follow
/// sum_n |n><n+1| + h.c.; Harmonic uses sqrt(n+1).
enum class DriveLadder { Unit, Harmonic };

struct CrDrive {
  double Omega = 0.0;    // MHz
  double omega_d = 0.0;  // GHz
  double phi0 = 0.0;     // rad
  double phi1 = 0.0;     // rad
  double R = 0.0;

  CrDrive with_amplitude(double omega_mhz) const {
    CrDrive d = *this;
    d.Omega = omega_mhz;
    return d;
  }
};

/// Excitation-number-limited basis as (n1, n2) with n1 the control.
inline const std::array<std::pair<int, int>, 15>& truncated_states() {
  static const std::array<std::pair<int, int>, 15> s = {{{0, 0}, {0, 1}, {1, 0}, {1, 1},
                                                         {0, 2}, {2, 0}, {0, 3}, {1, 2},
                                                         {2, 1}, {3, 0}, {0, 4}, {1, 3},
                                                         {2, 2}, {3, 1}, {4, 0}}};
  return s;
}

struct TruncatedFrame {
  MatC H;  // 15 x 15, GHz
  double omega_d = 0.0;
  double Omega = 0.0;
  Notes notes;
};

namespace detail {

inline MatR ladder_lowering(int n, DriveLadder kind) {
  MatR b = MatR::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    b(k, k + 1) = kind == DriveLadder::Harmonic ? std::sqrt(k + 1.0) : 1.0;
  }
  return b;
}

}  // namespace detail

/// Time-independent rotating-frame Hamiltonian. The drive on qubit q reads
/// (A/2)(e^{i phi} L^dag + e^{-i phi} L) with L the dressed lowering operator,
/// so that phi = 0 yields an X-type and phi = pi/2 a Y-type drive.
inline TruncatedFrame build_rotating_hamiltonian(const DressedFrame& d,
                                                 const CrDrive& drive,
                                                 DriveLadder ladder = DriveLadder::Unit) {
  if (d.dims.size() != 2 || d.dims[0] < 5 || d.dims[1] < 5) {
    fail(ErrorKind::InvalidInput, "rotating frame needs two modes with >= 5 levels");
  }
  if (!(drive.Omega >= 0.0) || !(drive.R >= 0.0)) {
    fail(ErrorKind::InvalidInput, "drive amplitude and crosstalk scale must be >= 0");
  }
  TruncatedFrame tf;
  tf.omega_d = drive.omega_d;
  tf.Omega = drive.Omega;
  if (std::abs(drive.omega_d - d.transition(2)) > 0.1) {
    tf.notes.push_back("drive more than 100 MHz from the dressed target frequency");
  }
  const int n1 = d.dims[0];
  const int n2 = d.dims[1];
  const MatC b1 = kron(detail::ladder_lowering(n1, ladder), MatR::Identity(n2, n2));
  const MatC b2 = kron(MatR::Identity(n1, n1), detail::ladder_lowering(n2, ladder));
  const MatC L1 = d.U.adjoint() * b1 * d.U;
  const MatC L2 = d.U.adjoint() * b2 * d.U;

  const double amp1 = 0.5 * drive.Omega * 1e-3;
  const double amp2 = 0.5 * drive.R * drive.Omega * 1e-3;
  const cplx e0 = std::polar(1.0, drive.phi0);
  const cplx e1 = std::polar(1.0, drive.phi1);
  const MatC Hd = amp1 * (e0 * L1.adjoint() + std::conj(e0) * L1) +
                  amp2 * (e1 * L2.adjoint() + std::conj(e1) * L2);

  const auto& st = truncated_states();
  const double e00 = d.level(0, 0);
  tf.H = MatC::Zero(15, 15);
  for (int a = 0; a < 15; ++a) {
    const auto [p1, p2] = st[a];
    const int ia = d.index(p1, p2);
    for (int b = 0; b < 15; ++b) {
      const auto [q1, q2] = st[b];
      tf.H(a, b) = Hd(ia, d.index(q1, q2));
    }
    tf.H(a, a) += d.energies(ia) - e00 - drive.omega_d * (p1 + p2);
  }
  return tf;
}

struct BlockDiagResult {
  MatC H_bd;    // T^dag H T, 15 x 15
  MatC T;       // least-action unitary
  Mat4 H4;      // computational block {00, 01, 10, 11}
  MatC H_leak;  // 11 x 11
  Mat2 H_q1;    // single-qubit sub-blocks of H4 (partial traces / 2)
  Mat2 H_q2;
  double off_block_residue = 0.0;  // relative to ||H||
  double unitarity_defect = 0.0;
  double distance_from_identity = 0.0;  // ||T - I||_F
  double min_block_singular_value = 0.0;
};

inline BlockDiagResult least_action_block_diag(const TruncatedFrame& tf,
                                               double singular_tol = 1e-6) {
  constexpr int nc = 4;
  const int n = static_cast<int>(tf.H.rows());
  if (hermiticity_defect(tf.H) > 1e-12) {
    fail(ErrorKind::InvalidInput, "rotating-frame Hamiltonian is not Hermitian");
  }
  const EigenPairs ep = eigh(tf.H);
  const std::vector<int> col = assign_by_overlap(ep.vectors);
  MatC X(n, n);
  for (int r = 0; r < n; ++r) X.col(r) = ep.vectors.col(col[r]);

  MatC Xbd = MatC::Zero(n, n);
  Xbd.topLeftCorner(nc, nc) = X.topLeftCorner(nc, nc);
  Xbd.bottomRightCorner(n - nc, n - nc) = X.bottomRightCorner(n - nc, n - nc);
  const double s = std::min(smallest_singular_value(X.topLeftCorner(nc, nc)),
                            smallest_singular_value(X.bottomRightCorner(n - nc, n - nc)));
  if (s < singular_tol) {
    fail(ErrorKind::BlockDiagonalization,
         "X_BD singular at Omega = " + std::to_string(tf.Omega) + " MHz");
  }
  BlockDiagResult r;
  r.min_block_singular_value = s;
  r.T = X * Xbd.adjoint() * inverse_sqrt_hpd(Xbd * Xbd.adjoint());
  r.H_bd = r.T.adjoint() * tf.H * r.T;
  r.H_bd = 0.5 * (r.H_bd + r.H_bd.adjoint()).eval();
  r.H4 = r.H_bd.topLeftCorner(nc, nc);
  r.H_leak = r.H_bd.bottomRightCorner(n - nc, n - nc);

  const double hnorm = std::max(tf.H.norm(), 1e-300);
  const double off = std::sqrt(r.H_bd.topRightCorner(nc, n - nc).squaredNorm() +
                               r.H_bd.bottomLeftCorner(n - nc, nc).squaredNorm());
  r.off_block_residue = off / hnorm;
  r.unitarity_defect =
      (r.T.adjoint() * r.T - MatC::Identity(n, n)).cwiseAbs().maxCoeff();
  r.distance_from_identity = (r.T - MatC::Identity(n, n)).norm();

  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      r.H_q1(a, b) = 0.5 * (r.H4(2 * a, 2 * b) + r.H4(2 * a + 1, 2 * b + 1));
      r.H_q2(a, b) = 0.5 * (r.H4(a, b) + r.H4(2 + a, 2 + b));
    }
  }
  return r;
}

/// Pauli coefficients in MHz (linear frequency).
struct PauliCoefficients {
  double ZI = 0.0, IX = 0.0, IY = 0.0, ZX = 0.0, ZY = 0.0, ZZ = 0.0;
};

inline PauliCoefficients pauli_decompose(const Mat4& h4) {
  if (hermiticity_defect(h4) > 1e-10) {
    fail(ErrorKind::InvalidInput, "computational block is not Hermitian");
  }
  auto tr = [&](const char* p) { return (h4 * pauli::two(p)).trace().real() * 1e3; };
  PauliCoefficients b;
  b.ZI = tr("ZI") / 2.0;
  b.IX = tr("IX") / 2.0;
  b.IY = tr("IY") / 2.0;
  b.ZX = tr("ZX") / 2.0;
  b.ZY = tr("ZY") / 2.0;
  b.ZZ = tr("ZZ");
  return b;
}

/// Inverse of pauli_decompose restricted to the six reported terms (GHz).
inline Mat4 pauli_hamiltonian(const PauliCoefficients& b) {
  Mat4 h = b.ZI * pauli::two("ZI") / 2.0 + b.IX * pauli::two("IX") / 2.0 +
           b.IY * pauli::two("IY") / 2.0 + b.ZX * pauli::two("ZX") / 2.0 +
           b.ZY * pauli::two("ZY") / 2.0 + b.ZZ * pauli::two("ZZ") / 4.0;
  return h * 1e-3;
}

/// Echoed-CR oscillation frequency (MHz); equals 2 ZX when only ZX is present.
inline double echoed_cr_frequency(const PauliCoefficients& b) {
  const double zz = b.ZZ / 2.0;
  return std::sqrt(std::pow(b.ZX + b.IX, 2) + std::pow(b.ZY + b.IY, 2) + zz * zz) +
         std::sqrt(std::pow(b.ZX - b.IX, 2) + std::pow(b.ZY - b.IY, 2) + zz * zz);
}

/// Part of H4 that commutes with Z on the control: drops XI, YI and the
/// control-transverse exchange terms (XX, YY, ...).
inline Mat4 control_diagonal_part(const Mat4& h4) {
  Mat4 h = h4;
  h.topRightCorner<2, 2>().setZero();
  h.bottomLeftCorner<2, 2>().setZero();
  return h;
}

/// Time-domain echoed-CR rate (MHz): evolve |00> through hp, XI, hm, XI for
/// four nominal periods and fit the target <Z> oscillation.
inline double echo_oracle_frequency(const Mat4& hp, const Mat4& hm, double f_guess_MHz,
                                    int samples = 400) {
  const MatC xi = pauli::two("XI");
  const MatC zt = pauli::two("IZ");
  const double t_max = 4.0 / (f_guess_MHz * 1e-3);
  std::vector<double> t, y;
  for (int i = 0; i < samples; ++i) {
    const double tau = t_max * i / (samples - 1);
    const VecC psi = (xi * evolution(hm, tau) * xi * evolution(hp, tau)).col(0);
    t.push_back(tau);
    y.push_back((psi.adjoint() * zt * psi)(0).real());
  }
  return fit_sinusoid(t, y, 0.5 * f_guess_MHz * 1e-3, 2.0 * f_guess_MHz * 1e-3).frequency * 1e3;
}

struct CrPoint {
  double Omega = 0.0;
  bool ok = false;
  std::string message;
  PauliCoefficients beta;
  double f_ecr = 0.0;
  double distance_from_identity = 0.0;
  double off_block_residue = 0.0;
};

inline CrPoint evaluate_cr(const DressedFrame& d, const CrDrive& drive,
                           DriveLadder ladder = DriveLadder::Unit) {
  CrPoint p;
  p.Omega = drive.Omega;
  const BlockDiagResult bd = least_action_block_diag(build_rotating_hamiltonian(d, drive, ladder));
  p.beta = pauli_decompose(bd.H4);
  p.f_ecr = echoed_cr_frequency(p.beta);
  p.distance_from_identity = bd.distance_from_identity;
  p.off_block_residue = bd.off_block_residue;
  p.ok = true;
  return p;
}

/// Sweep that records per-point failures instead of aborting.
inline std::vector<CrPoint> cr_sweep(const DressedFrame& d, const CrDrive& base,
                                     const std::vector<double>& amplitudes,
                                     DriveLadder ladder = DriveLadder::Unit) {
  std::vector<CrPoint> out;
  out.reserve(amplitudes.size());
  for (double om : amplitudes) {
    try {
      out.push_back(evaluate_cr(d, base.with_amplitude(om), ladder));
    } catch (const Error& e) {
      CrPoint p;
      p.Omega = om;
      p.message = e.what();
      out.push_back(p);
    }
  }
  return out;
}

/// Low-amplitude slope of f_ECR(Omega) as the secant between omega_small and
/// 2 omega_small. f_ECR(0) equals the static ZZ rate, so a plain ratio at
/// small Omega is biased upward.
inline double low_amplitude_slope(const DressedFrame& d, CrDrive base,
                                  DriveLadder ladder = DriveLadder::Unit,
                                  double omega_small = 10.0) {
  if (!(omega_small > 0.0)) fail(ErrorKind::InvalidInput, "omega_small must be > 0");
  base.R = 0.0;
  const double a = evaluate_cr(d, base.with_amplitude(omega_small), ladder).f_ecr;
  const double b = evaluate_cr(d, base.with_amplitude(2.0 * omega_small), ladder).f_ecr;
  return (b - a) / omega_small;
}

struct DynamicZZFit {
  double zeta0 = 0.0;  // GHz
  double eta = 0.0;    // 1/MHz, beta_ZZ[MHz] = zeta0[MHz] + eta Omega^2
  double rms_residual = 0.0;  // MHz
  std::vector<double> amplitudes;
  std::vector<double> beta_zz;  // MHz
};

inline DynamicZZFit dynamic_zz(const DressedFrame& d, const CrDrive& base,
                               const std::vector<double>& amplitudes,
                               DriveLadder ladder = DriveLadder::Unit) {
  if (amplitudes.size() < 5) {
    fail(ErrorKind::InvalidInput, "dynamic ZZ fit needs at least 5 amplitudes");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(amplitudes.size());
  MatR A(m, 2);
  VecR y(m);
  DynamicZZFit fit;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double om = amplitudes[static_cast<std::size_t>(i)];
    A(i, 0) = 1.0;
    A(i, 1) = om * om;
    y(i) = evaluate_cr(d, base.with_amplitude(om), ladder).beta.ZZ;
  }
  const VecR c = A.colPivHouseholderQr().solve(y);
  const VecR res = y - A * c;
  fit.zeta0 = c(0) * 1e-3;
  fit.eta = c(1);
  fit.rms_residual = std::sqrt(res.squaredNorm() / static_cast<double>(m));
  fit.amplitudes = amplitudes;
  fit.beta_zz.assign(y.data(), y.data() + m);
  const double range = y.maxCoeff() - y.minCoeff();
  if (range > 1e-9 && fit.rms_residual > 0.1 * range) {
    fail(ErrorKind::ModelMismatch, "beta_ZZ(Omega) is not quadratic over the sweep");
  }
  return fit;
}

/// Polynomial fits of the Pauli coefficients against amplitude and phase.
struct PauliExpansionFit {
  double B = 0.0, C = 0.0, D = 0.0, E = 0.0, K = 0.0;
  bool has_K = false;
};

struct PauliSample {
  double Omega, phi0, phi1, R;
  PauliCoefficients beta;
};

inline PauliExpansionFit fit_pauli_expansion(const std::vector<PauliSample>& samples) {
  if (samples.size() < 2) fail(ErrorKind::InvalidInput, "need at least two samples");
  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  bool any_r = false;
  for (const auto& s : samples) any_r = any_r || s.R > 0.0;
  MatR A1(2 * m, 2);
  VecR y1(2 * m);
  MatR A2(2 * m, any_r ? 3 : 2);
  VecR y2(2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const PauliSample& s = samples[static_cast<std::size_t>(i)];
    const double w = s.Omega, w3 = w * w * w;
    const double c0 = std::cos(s.phi0), s0 = std::sin(s.phi0);
    A1.row(2 * i) << w * c0, w3 * c0;
    A1.row(2 * i + 1) << w * s0, w3 * s0;
    y1(2 * i) = s.beta.ZX;
    y1(2 * i + 1) = s.beta.ZY;
    A2(2 * i, 0) = w * c0;
    A2(2 * i, 1) = w3 * c0;
    A2(2 * i + 1, 0) = w * s0;
    A2(2 * i + 1, 1) = w3 * s0;
    if (any_r) {
      A2(2 * i, 2) = s.R * w * std::cos(s.phi1);
      A2(2 * i + 1, 2) = s.R * w * std::sin(s.phi1);
    }
    y2(2 * i) = s.beta.IX;
    y2(2 * i + 1) = s.beta.IY;
  }
  const VecR c1 = A1.colPivHouseholderQr().solve(y1);
  const VecR c2 = A2.colPivHouseholderQr().solve(y2);
  PauliExpansionFit f;
  f.B = c1(0);
  f.C = c1(1);
  f.D = c2(0);
  f.E = c2(1);
  if (any_r) {
    f.K = c2(2);
    f.has_K = true;
  }
  return f;
}

struct Anticrossing {
  double Omega = 0.0;  // MHz
  double gap = 0.0;    // GHz
};

/// Gap between the two rotating-frame eigenvalues carrying the most weight on
/// span{|11>, |02>}.
inline double gap_11_02(const DressedFrame& d, const CrDrive& drive,
                        DriveLadder ladder = DriveLadder::Unit) {
  const TruncatedFrame tf = build_rotating_hamiltonian(d, drive, ladder);
  const EigenPairs ep = eigh(tf.H);
  const int n = static_cast<int>(ep.values.size());
  std::vector<std::pair<double, int>> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    w[static_cast<std::size_t>(k)] = {std::norm(ep.vectors(3, k)) + std::norm(ep.vectors(4, k)), k};
  }
  std::sort(w.begin(), w.end(), [](auto a, auto b) { return a.first > b.first; });
  return std::abs(ep.values(w[0].second) - ep.values(w[1].second));
}

inline Anticrossing find_anticrossing(const DressedFrame& d, const CrDrive& base,
                                      double omega_lo, double omega_hi,
                                      DriveLadder ladder = DriveLadder::Unit,
                                      int n_scan = 80) {
  if (!(omega_hi > omega_lo) || omega_lo < 0.0 || n_scan < 3) {
    fail(ErrorKind::InvalidInput, "invalid anticrossing search window");
  }
  CrDrive b = base;
  b.R = 0.0;
  auto gap = [&](double om) { return gap_11_02(d, b.with_amplitude(om), ladder); };
  const double step = (omega_hi - omega_lo) / (n_scan - 1);
  int best = 0;
  double best_gap = gap(omega_lo);
  for (int k = 1; k < n_scan; ++k) {
    const double g = gap(omega_lo + k * step);
    if (g < best_gap) {
      best_gap = g;
      best = k;
    }
  }
  const double lo = omega_lo + std::max(0, best - 1) * step;
  const double hi = omega_lo + std::min(n_scan - 1, best + 1) * step;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(gap, lo, hi, 40, iters);
  Anticrossing a;
  a.Omega = r.first;
  a.gap = r.second;
  return a;
}

struct PlateauEstimate {
  double onset = 0.0;       // MHz, knee amplitude
  double level = 0.0;       // MHz, f_ECR at the end of the window
  double slope_low = 0.0;   // low-amplitude slope
  double slope_high = 0.0;  // terminal slope
};

/// Knee of f_ECR(Omega) on [0, omega_max]: intersection of the low-amplitude
/// tangent with the secant through the last two sweep points.
inline PlateauEstimate plateau_onset(const DressedFrame& d, const CrDrive& base,
                                     double omega_max, DriveLadder ladder = DriveLadder::Unit,
                                     int n_points = 61) {
  if (!(omega_max > 0.0) || n_points < 4) fail(ErrorKind::InvalidInput, "invalid plateau window");
  CrDrive b = base;
  b.R = 0.0;
  auto f = [&](double om) { return evaluate_cr(d, b.with_amplitude(om), ladder).f_ecr; };
  PlateauEstimate p;
  p.slope_low = low_amplitude_slope(d, b, ladder);
  const double f0 = f(10.0) - 10.0 * p.slope_low;
  const double step = omega_max / (n_points - 1);
  const double om1 = omega_max - step;
  const double f1 = f(om1);
  p.level = f(omega_max);
  p.slope_high = (p.level - f1) / step;
  if (!(p.slope_low > p.slope_high)) {
    fail(ErrorKind::ModelMismatch, "no slope reduction inside the plateau window");
  }
  p.onset = (p.level - p.slope_high * omega_max - f0) / (p.slope_low - p.slope_high);
  return p;
}

}  // namespace crzz
