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

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "crzz/linalg.hpp"
#include "crzz/qubit_spectra.hpp"
#include "crzz/types.hpp"

namespace crzz {

/// Qubit 1 is the CSFQ (subscript m), qubit 2 the transmon (subscript T).
/// All couplings and frequencies in GHz; signs follow the capacitance
/// network (g_rm < 0, g_rT > 0, g_mT < 0 for the reference device).
struct CouplingSet {
  double g_rm = 0.0;
  double g_rT = 0.0;
  double g_mT = 0.0;
  double g_hm = 0.0;
  double g_aT = 0.0;
  double omega_r = 0.0;
  double J_direct() const { return g_mT; }
};

/// Lumped-element capacitances (fF) and inductances (nH).
struct CapacitanceNetwork {
  double C_rT = 452.1, C_ab = 3.9, C_b0 = 58, C_shT = 30, C_T = 5, C_c0 = 60,
         C_cd = 10, C_R = 468.9;
  double C_rCSFQ = 438.8, C_gh = 3.9, C_g0 = 59, C_shCSFQ = 30, C_1 = 5,
         C_e0 = 50.2, C_de = 14.5, C_3 = 2.25;
  double L_R = 1.3, L_rT = 1.2, L_rCSFQ = 1.2;
};

struct CapacitanceCombinations {
  double C_gs, C_gT, C_cder, C_T0, C_m0, C_h0, C_dm, C_dT, C_a0;
  // Diagonal of the reduced capacitance matrix, modes (a, T, r, m, h).
  double Cp_a, Cp_T, Cp_r, Cp_m, Cp_h;
};

/// Closed-form coupling ratios in 1/fF, before conversion to frequency.
struct NetworkCouplingRatios {
  double g_hm, g_rm, g_aT, g_rT, g_mT;
  CapacitanceCombinations combos;
};

/// Bare mode frequencies (GHz) used to convert ratios into couplings.
struct ModeFrequencies {
  double omega_m = 5.0616;
  double omega_T = 5.2920;
  double omega_r = 6.3062;
  double omega_h = 6.9065;
  double omega_a = 6.8050;
};

inline CapacitanceCombinations capacitance_combinations(const CapacitanceNetwork& n) {
  const std::array<double, 19> all = {n.C_rT, n.C_ab, n.C_b0, n.C_shT, n.C_T,
                                      n.C_c0, n.C_cd, n.C_R, n.C_rCSFQ, n.C_gh,
                                      n.C_g0, n.C_shCSFQ, n.C_1, n.C_e0, n.C_de,
                                      n.C_3, n.L_R, n.L_rT, n.L_rCSFQ};
  for (double v : all) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::InvalidInput, "network values must be non-negative");
    }
  }
  CapacitanceCombinations c{};
  c.C_T0 = n.C_ab + n.C_b0 + n.C_c0 + n.C_cd;
  c.C_h0 = n.C_g0 + n.C_gh;
  c.C_m0 = n.C_de + n.C_e0 + n.C_g0 + n.C_gh;
  c.C_dm = n.C_de + n.C_e0;
  c.C_dT = n.C_cd + n.C_c0;
  c.C_a0 = n.C_ab + n.C_b0;
  c.C_gs = 2.0 * n.C_1 + 4.0 * n.C_g0 + 4.0 * n.C_gh + 4.0 * (n.C_3 + n.C_shCSFQ);
  c.C_gT = n.C_cd + n.C_c0 + n.C_shT + n.C_T;
  c.C_cder = n.C_cd + n.C_de + n.C_R;
  if (c.C_T0 == 0.0 || c.C_m0 == 0.0) {
    fail(ErrorKind::SingularNetwork, "C_T0 or C_m0 vanishes");
  }
  c.Cp_a = -n.C_ab * n.C_ab / c.C_T0 + n.C_ab + n.C_rT;
  c.Cp_T = c.C_dT + n.C_shT + n.C_T - c.C_dT * c.C_dT / c.C_T0;
  c.Cp_m = 2.0 * n.C_1 + 4.0 * (n.C_3 + n.C_shCSFQ) - 4.0 * c.C_h0 * c.C_h0 / c.C_m0 +
           4.0 * c.C_h0;
  c.Cp_r = -n.C_cd * n.C_cd / c.C_T0 + n.C_cd + n.C_de + n.C_R -
           n.C_de * n.C_de / c.C_m0;
  c.Cp_h = -n.C_gh * n.C_gh / c.C_m0 + n.C_gh + n.C_rCSFQ;
  return c;
}

inline NetworkCouplingRatios network_coupling_ratios(const CapacitanceNetwork& n) {
  const CapacitanceCombinations c = capacitance_combinations(n);
  const double dm = c.C_gs * c.C_m0 - 4.0 * c.C_h0 * c.C_h0;
  const double dt = c.C_gT * c.C_T0 - c.C_a0 * c.C_a0;
  const double dh = n.C_gh + n.C_rCSFQ;
  const double da = n.C_ab + n.C_rT;
  const double dr = c.C_dT * c.C_dT - c.C_gT * c.C_T0;
  if (dm == 0.0 || dt == 0.0 || dh == 0.0 || da == 0.0 || dr == 0.0 ||
      c.C_cder == 0.0) {
    fail(ErrorKind::SingularNetwork, "vanishing denominator in coupling formulas");
  }
  NetworkCouplingRatios g{};
  g.combos = c;
  g.g_hm = -2.0 * n.C_gh * c.C_dm / (dh * dm);
  g.g_rm = 2.0 * n.C_de * c.C_h0 / (c.C_cder * (4.0 * c.C_h0 * c.C_h0 - c.C_gs * c.C_m0));
  g.g_aT = n.C_ab * c.C_dT / (da * dt);
  g.g_rT = -n.C_cd * c.C_a0 / (c.C_cder * dr);
  g.g_mT = -2.0 * n.C_cd * n.C_de * c.C_a0 * c.C_h0 / (c.C_cder * dt * dm);
  return g;
}

/// Couplings in GHz: g_ij = (r_ij / 2) sqrt(C'_i C'_j) sqrt(w_i w_j), i.e. the
/// normalized inverse-capacitance element times the geometric-mean frequency.
inline CouplingSet couplings_from_network(const CapacitanceNetwork& n,
                                          const ModeFrequencies& w = {}) {
  const NetworkCouplingRatios r = network_coupling_ratios(n);
  const CapacitanceCombinations& c = r.combos;
  auto conv = [](double ratio, double ci, double cj, double wi, double wj) {
    return 0.5 * ratio * std::sqrt(ci * cj) * std::sqrt(wi * wj);
  };
  CouplingSet s;
  s.g_hm = conv(r.g_hm, c.Cp_h, c.Cp_m, w.omega_h, w.omega_m);
  s.g_rm = conv(r.g_rm, c.Cp_r, c.Cp_m, w.omega_r, w.omega_m);
  s.g_aT = conv(r.g_aT, c.Cp_a, c.Cp_T, w.omega_a, w.omega_T);
  s.g_rT = conv(r.g_rT, c.Cp_r, c.Cp_T, w.omega_r, w.omega_T);
  s.g_mT = conv(r.g_mT, c.Cp_m, c.Cp_T, w.omega_m, w.omega_T);
  s.omega_r = w.omega_r;
  return s;
}

/// Bus-mediated exchange J_{n1,n2} (GHz) with n1 the CSFQ level and n2 the
/// transmon level. Couplings enter unscaled: the sqrt((n1+1)(n2+1)) matrix
/// element factor is applied once, in build_hamiltonian.
inline double indirect_J(const CouplingSet& c, const SpectrumTable& spec1,
                         const SpectrumTable& spec2, int n1, int n2,
                         double breakdown_ratio = 1.0) {
  if (c.g_rm == 0.0 || c.g_rT == 0.0) return c.J_direct();
  const double wm = spec1.omega(n1);
  const double wt = spec2.omega(n2);
  const double dm = c.omega_r - wm;
  const double dt = c.omega_r - wt;
  if (std::abs(dm) < breakdown_ratio * std::abs(c.g_rm) ||
      std::abs(dt) < breakdown_ratio * std::abs(c.g_rT)) {
    fail(ErrorKind::DispersiveBreakdown,
         "bus detuning too small for levels (" + std::to_string(n1) + "," +
             std::to_string(n2) + ")");
  }
  const double sm = c.omega_r + wm;
  const double st = c.omega_r + wt;
  const double indir = -0.5 * c.g_rm * c.g_rT * (1.0 / dm + 1.0 / dt + 1.0 / sm + 1.0 / st);
  return c.J_direct() + indir;
}

/// J_{n1,n2} for n1 < dims1-1, n2 < dims2-1.
struct JTable {
  MatR values;
  double operator()(int n1, int n2) const { return values(n1, n2); }
};

inline JTable constant_J(int dims1, int dims2, double j) {
  return {MatR::Constant(dims1 - 1, dims2 - 1, j)};
}

inline JTable J_table_from_couplings(const CouplingSet& c, const SpectrumTable& s1,
                                     const SpectrumTable& s2, int dims1, int dims2) {
  JTable t{MatR(dims1 - 1, dims2 - 1)};
  for (int a = 0; a < dims1 - 1; ++a) {
    for (int b = 0; b < dims2 - 1; ++b) t.values(a, b) = indirect_J(c, s1, s2, a, b);
  }
  return t;
}

struct CoupledHamiltonian {
  std::vector<int> dims;  // {q1, q2} or {q1, q2, bus}
  MatC matrix;
  JTable J_table;
  Notes notes;

  int index(int n1, int n2, int nb = 0) const {
    if (dims.size() == 2) return n1 * dims[1] + n2;
    return (n1 * dims[1] + n2) * dims[2] + nb;
  }
  int size() const { return static_cast<int>(matrix.rows()); }
};

inline CoupledHamiltonian build_hamiltonian(const SpectrumTable& s1,
                                            const SpectrumTable& s2, const JTable& J,
                                            int dims1 = 5, int dims2 = 5) {
  if (dims1 < 2 || dims2 < 2 || dims1 > s1.size() || dims2 > s2.size()) {
    fail(ErrorKind::InvalidInput, "requested dimensions exceed spectrum sizes");
  }
  if (J.values.rows() < dims1 - 1 || J.values.cols() < dims2 - 1) {
    fail(ErrorKind::InvalidInput, "J table dimension mismatch");
  }
  CoupledHamiltonian h;
  h.dims = {dims1, dims2};
  h.J_table = J;
  const int n = dims1 * dims2;
  h.matrix = MatC::Zero(n, n);
  for (int a = 0; a < dims1; ++a) {
    for (int b = 0; b < dims2; ++b) {
      h.matrix(h.index(a, b), h.index(a, b)) = s1.levels[a] + s2.levels[b];
    }
  }
  for (int a = 0; a + 1 < dims1; ++a) {
    for (int b = 0; b + 1 < dims2; ++b) {
      const double el = std::sqrt(double(a + 1) * (b + 1)) * J(a, b);
      const int i = h.index(a + 1, b);
      const int k = h.index(a, b + 1);
      h.matrix(i, k) = el;
      h.matrix(k, i) = el;
      const double gap = std::abs(h.matrix(i, i).real() - h.matrix(k, k).real());
      if (gap > 0.0 && std::abs(el) / gap > 0.5 && a + b < 2) {
        h.notes.push_back("|J/Delta| above 0.5 near the computational subspace");
      }
    }
  }
  return h;
}

/// Qubits plus an explicit bus mode with harmonic ladder, RWA exchange
/// couplings g_rm, g_rT and the direct g_mT.
inline CoupledHamiltonian build_hamiltonian_with_bus(const SpectrumTable& s1,
                                                     const SpectrumTable& s2,
                                                     const CouplingSet& c,
                                                     int dims1 = 4, int dims2 = 4,
                                                     int bus_levels = 4) {
  if (dims1 > s1.size() || dims2 > s2.size() || bus_levels < 2) {
    fail(ErrorKind::InvalidInput, "bus Hamiltonian dimensions out of range");
  }
  CoupledHamiltonian h;
  h.dims = {dims1, dims2, bus_levels};
  h.J_table = constant_J(dims1, dims2, c.g_mT);
  const int n = dims1 * dims2 * bus_levels;
  h.matrix = MatC::Zero(n, n);
  auto add = [&](int i, int k, double v) {
    h.matrix(i, k) += v;
    h.matrix(k, i) += v;
  };
  for (int a = 0; a < dims1; ++a) {
    for (int b = 0; b < dims2; ++b) {
      for (int r = 0; r < bus_levels; ++r) {
        const int i = h.index(a, b, r);
        h.matrix(i, i) = s1.levels[a] + s2.levels[b] + r * c.omega_r;
        if (r + 1 < bus_levels) {
          const double sr = std::sqrt(double(r + 1));
          if (a + 1 < dims1) {
            add(h.index(a + 1, b, r), h.index(a, b, r + 1), c.g_rm * sr * std::sqrt(a + 1.0));
          }
          if (b + 1 < dims2) {
            add(h.index(a, b + 1, r), h.index(a, b, r + 1), c.g_rT * sr * std::sqrt(b + 1.0));
          }
        }
        if (a + 1 < dims1 && b + 1 < dims2) {
          add(h.index(a + 1, b, r), h.index(a, b + 1, r),
              c.g_mT * std::sqrt((a + 1.0) * (b + 1.0)));
        }
      }
    }
  }
  return h;
}

struct DressedFrame {
  std::vector<int> dims;
  MatC U;               // columns: dressed states, ordered by bare label
  VecR energies;        // dressed energies indexed by bare label (GHz)
  Notes notes;

  int index(int n1, int n2) const {
    if (dims.size() == 2) return n1 * dims[1] + n2;
    return (n1 * dims[1] + n2) * dims[2];
  }
  double level(int n1, int n2) const { return energies(index(n1, n2)); }
  /// Dressed transition of qubit q (1 or 2) from n to n+1, other qubit in 0.
  double transition(int q, int n = 0) const {
    return q == 1 ? level(n + 1, 0) - level(n, 0) : level(0, n + 1) - level(0, n);
  }
};

inline DressedFrame dress(const CoupledHamiltonian& h, double tie_tol = 1e-6) {
  const EigenPairs ep = eigh(h.matrix);
  const std::vector<int> col = assign_by_overlap(ep.vectors, tie_tol);
  DressedFrame d;
  d.dims = h.dims;
  d.notes = h.notes;
  const int n = h.size();
  d.U.resize(n, n);
  d.energies.resize(n);
  for (int r = 0; r < n; ++r) {
    VecC v = ep.vectors.col(col[r]);
    const cplx ph = v(r);
    if (std::abs(ph) > 0.0) v *= std::conj(ph) / std::abs(ph);
    d.U.col(r) = v;
    d.energies(r) = ep.values(col[r]);
  }
  return d;
}

/// zeta = (E11 - E10) - (E01 - E00), GHz.
inline double static_zz_exact(const DressedFrame& d) {
  return d.level(1, 1) - d.level(1, 0) - d.level(0, 1) + d.level(0, 0);
}

/// Second-order estimate; delta = w2 - w1.
inline double static_zz_perturbative(double J01, double J10, double delta,
                                     double delta1, double delta2) {
  const double p2 = delta + delta2;
  const double p1 = delta - delta1;
  if (std::abs(p2) < 1e-9 || std::abs(p1) < 1e-9) {
    fail(ErrorKind::Divergence, "straddling pole in perturbative ZZ");
  }
  return -2.0 * J01 * J01 / p2 + 2.0 * J10 * J10 / p1;
}

}  // namespace crzz
