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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "crzz/linalg.hpp"
#include "crzz/types.hpp"

namespace crzz {

/// Transmon, charge basis: H = 4 E_C (n - ng)^2 - E_J cos(phi).
struct TransmonParams {
  double E_J = 13.7;   // GHz
  double E_C = 0.286;  // GHz
  int n_levels = 5;
  int charge_cutoff = 30;
};

/// Capacitively shunted flux qubit, 1D reduction:
/// H = E_C n^2 - 2 E_J cos(phi) - alpha E_J cos(2 pi f - 2 phi).
struct CsfqParams {
  double E_J = 123.1;  // GHz
  double E_C = 0.268;  // GHz
  double alpha = 0.43;
  int n_levels = 5;
  int basis_size = 201;  // odd number of phase-grid points on [-pi, pi)
};

class FluxBias {
 public:
  explicit FluxBias(double f) : f_(f) {
    if (!(f >= 0.0 && f <= 1.0)) {
      fail(ErrorKind::InvalidInput, "flux bias must lie in [0, 1]");
    }
  }
  double value() const { return f_; }

 private:
  double f_;
};

/// Levels referenced to E_0 = 0; transitions w(n) = E_{n+1} - E_n;
/// anharmonicities d(n) = w(n+1) - w(n). All in GHz.
struct SpectrumTable {
  std::vector<double> levels;
  std::vector<double> transitions;
  std::vector<double> anharmonicities;
  Notes notes;

  static SpectrumTable from_levels(const std::vector<double>& raw) {
    if (raw.size() < 2) {
      fail(ErrorKind::InvalidInput, "spectrum needs at least two levels");
    }
    SpectrumTable t;
    t.levels.reserve(raw.size());
    for (double e : raw) t.levels.push_back(e - raw.front());
    for (std::size_t n = 0; n + 1 < t.levels.size(); ++n) {
      const double w = t.levels[n + 1] - t.levels[n];
      if (!(w > 0.0)) {
        fail(ErrorKind::NumericalPrecision, "levels are not strictly increasing");
      }
      t.transitions.push_back(w);
    }
    for (std::size_t n = 0; n + 1 < t.transitions.size(); ++n) {
      t.anharmonicities.push_back(t.transitions[n + 1] - t.transitions[n]);
    }
    return t;
  }

  int size() const { return static_cast<int>(levels.size()); }
  double omega(int n = 0) const { return transitions.at(static_cast<std::size_t>(n)); }
  double delta(int n = 0) const {
    return anharmonicities.at(static_cast<std::size_t>(n));
  }
};

/// Weakly anharmonic ladder E_n = n w + n(n-1) d / 2 (measured-parameter input).
inline SpectrumTable duffing_spectrum(double omega, double delta, int n_levels) {
  if (n_levels < 2) fail(ErrorKind::InvalidInput, "n_levels must be >= 2");
  std::vector<double> e(static_cast<std::size_t>(n_levels));
  for (int n = 0; n < n_levels; ++n) {
    e[static_cast<std::size_t>(n)] = n * omega + 0.5 * n * (n - 1) * delta;
  }
  return SpectrumTable::from_levels(e);
}

namespace detail {

inline std::vector<double> lowest(const VecR& evals, int n) {
  if (evals.size() < n) {
    fail(ErrorKind::Truncation, "basis smaller than requested level count");
  }
  return std::vector<double>(evals.data(), evals.data() + n);
}

inline std::vector<double> transmon_levels(const TransmonParams& p, double ng,
                                           int cutoff) {
  const int dim = 2 * cutoff + 1;
  MatR h = MatR::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double n = k - cutoff - ng;
    h(k, k) = 4.0 * p.E_C * n * n;
    if (k + 1 < dim) {
      h(k, k + 1) = -0.5 * p.E_J;
      h(k + 1, k) = -0.5 * p.E_J;
    }
  }
  Eigen::SelfAdjointEigenSolver<MatR> es(h, Eigen::EigenvaluesOnly);
  return lowest(es.eigenvalues(), p.n_levels);
}

/// Fourier-grid kinetic matrix on an odd periodic grid; real symmetric.
inline MatR csfq_hamiltonian(const CsfqParams& p, double f, int npts) {
  const int m = (npts - 1) / 2;
  const double dphi = kTwoPi / npts;
  VecR kin_row(npts);
  for (int d = 0; d < npts; ++d) {
    double s = 0.0;
    for (int n = 1; n <= m; ++n) s += 2.0 * n * n * std::cos(n * d * dphi);
    kin_row(d) = p.E_C * s / npts;
  }
  MatR h(npts, npts);
  for (int j = 0; j < npts; ++j) {
    for (int k = 0; k < npts; ++k) h(j, k) = kin_row(std::abs(j - k));
  }
  for (int j = 0; j < npts; ++j) {
    const double phi = -kPi + j * dphi;
    h(j, j) += -2.0 * p.E_J * std::cos(phi) -
               p.alpha * p.E_J * std::cos(kTwoPi * f - 2.0 * phi);
  }
  return h;
}

inline std::vector<double> csfq_levels(const CsfqParams& p, double f, int npts) {
  Eigen::SelfAdjointEigenSolver<MatR> es(csfq_hamiltonian(p, f, npts),
                                         Eigen::EigenvaluesOnly);
  return lowest(es.eigenvalues(), p.n_levels);
}

inline void check_converged(const std::vector<double>& a,
                            const std::vector<double>& b, const char* who) {
  // Transitions w(0), w(1) must agree within 1 kHz.
  for (std::size_t n = 0; n < 2 && n + 1 < a.size(); ++n) {
    const double wa = a[n + 1] - a[n];
    const double wb = b[n + 1] - b[n];
    if (std::abs(wa - wb) > 1e-6) {
      fail(ErrorKind::Truncation,
           std::string(who) + " spectrum not converged in basis size");
    }
  }
}

}  // namespace detail

inline SpectrumTable transmon_spectrum(const TransmonParams& p, double ng = 0.0,
                                       bool verify_convergence = true) {
  if (!(p.E_J > 0.0) || !(p.E_C > 0.0)) {
    fail(ErrorKind::InvalidInput, "transmon E_J and E_C must be positive");
  }
  if (p.charge_cutoff < 10) {
    fail(ErrorKind::InvalidInput, "charge_cutoff must be >= 10");
  }
  if (p.n_levels < 3 || p.n_levels > 2 * p.charge_cutoff) {
    fail(ErrorKind::InvalidInput, "n_levels must be in [3, 2*charge_cutoff]");
  }
  const auto e = detail::transmon_levels(p, ng, p.charge_cutoff);
  if (verify_convergence) {
    detail::check_converged(e, detail::transmon_levels(p, ng, 2 * p.charge_cutoff),
                            "transmon");
  }
  SpectrumTable t = SpectrumTable::from_levels(e);
  if (p.E_J / p.E_C < 10.0) {
    t.notes.push_back("E_J/E_C below 10: outside the transmon regime");
  }
  return t;
}

inline void validate(const CsfqParams& p) {
  if (!(p.E_J > 0.0) || !(p.E_C > 0.0)) {
    fail(ErrorKind::InvalidInput, "CSFQ E_J and E_C must be positive");
  }
  if (!(p.alpha > 0.0) || !(p.alpha < 0.5)) {
    fail(ErrorKind::Regime, "CSFQ alpha must satisfy 0 < alpha < 0.5");
  }
  if (p.basis_size < 21 || p.basis_size % 2 == 0) {
    fail(ErrorKind::InvalidInput, "CSFQ basis_size must be odd and >= 21");
  }
  if (p.n_levels < 3 || p.n_levels > p.basis_size / 4) {
    fail(ErrorKind::InvalidInput, "CSFQ n_levels out of range");
  }
}

inline SpectrumTable csfq_spectrum(const CsfqParams& p, FluxBias f,
                                   bool verify_convergence = true) {
  validate(p);
  const auto e = detail::csfq_levels(p, f.value(), p.basis_size);
  if (verify_convergence) {
    detail::check_converged(e, detail::csfq_levels(p, f.value(), 2 * p.basis_size + 1),
                            "CSFQ");
  }
  return SpectrumTable::from_levels(e);
}

/// d w(0) / d f by central difference, GHz per flux quantum.
inline double flux_derivative(const CsfqParams& p, FluxBias f, double step = 1e-5) {
  const double x = f.value();
  if (!(x > 0.0 && x < 1.0)) {
    fail(ErrorKind::InvalidInput, "flux_derivative needs f in (0, 1)");
  }
  if (!(step >= 1e-9) || x - step <= 0.0 || x + step >= 1.0) {
    fail(ErrorKind::NumericalPrecision, "finite-difference step underflow");
  }
  const double wp = csfq_spectrum(p, FluxBias(x + step), false).omega(0);
  const double wm = csfq_spectrum(p, FluxBias(x - step), false).omega(0);
  return (wp - wm) / (2.0 * step);
}

namespace detail {

template <typename F>
double solve_monotone(F fn, double lo, double hi, const char* who) {
  double flo = fn(lo);
  double fhi = fn(hi);
  for (int i = 0; i < 20 && flo * fhi > 0.0; ++i) {
    lo *= 0.8;
    hi *= 1.25;
    flo = fn(lo);
    fhi = fn(hi);
  }
  if (flo * fhi > 0.0) {
    fail(ErrorKind::InvalidInput, std::string(who) + ": target not bracketed");
  }
  std::uintmax_t iters = 100;
  auto r = boost::math::tools::toms748_solve(
      fn, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(48), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace detail

/// E_J giving bare w(0) = target at flux f; other parameters fixed.
inline double fit_csfq_EJ(const CsfqParams& p, double target_ghz, double f = 0.5) {
  validate(p);
  auto fn = [&](double ej) {
    CsfqParams q = p;
    q.E_J = ej;
    return csfq_spectrum(q, FluxBias(f), false).omega(0) - target_ghz;
  };
  return detail::solve_monotone(fn, 0.8 * p.E_J, 1.25 * p.E_J, "fit_csfq_EJ");
}

inline double fit_transmon_EJ(const TransmonParams& p, double target_ghz) {
  auto fn = [&](double ej) {
    TransmonParams q = p;
    q.E_J = ej;
    return transmon_spectrum(q, 0.0, false).omega(0) - target_ghz;
  };
  return detail::solve_monotone(fn, 0.8 * p.E_J, 1.25 * p.E_J, "fit_transmon_EJ");
}

}  // namespace crzz
