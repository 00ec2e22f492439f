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
#include <functional>
#include <vector>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "crzz/types.hpp"

namespace crzz {

using ResidualFn = std::function<void(const VecR& params, VecR& residuals)>;

struct LeastSquaresResult {
  VecR params;
  MatR covariance;  // residual-variance scaled (J^T J)^{-1}
  double rss = 0.0;
  int status = 0;
  bool converged = false;
};

namespace detail {

struct ResidualFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = VecR;
  using ValueType = VecR;
  using JacobianType = MatR;

  ResidualFn fn;
  int n_in;
  int n_out;
  int inputs() const { return n_in; }
  int values() const { return n_out; }
  int operator()(const VecR& x, VecR& f) const {
    fn(x, f);
    return 0;
  }
};

}  // namespace detail

/// Levenberg-Marquardt with forward-difference Jacobian.
inline LeastSquaresResult least_squares(const ResidualFn& fn, const VecR& x0, int n_residuals) {
  detail::ResidualFunctor functor{fn, static_cast<int>(x0.size()), n_residuals};
  Eigen::NumericalDiff<detail::ResidualFunctor> nd(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::ResidualFunctor>, double> lm(nd);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.parameters.maxfev = 4000;
  LeastSquaresResult r;
  r.params = x0;
  r.status = static_cast<int>(lm.minimize(r.params));
  r.converged = r.status >= 1 && r.status <= 4;

  VecR f0(n_residuals);
  fn(r.params, f0);
  r.rss = f0.squaredNorm();
  const int p = static_cast<int>(x0.size());
  MatR J(n_residuals, p);
  for (int k = 0; k < p; ++k) {
    VecR xp = r.params;
    const double h = 1e-7 * std::max(1.0, std::abs(xp(k)));
    xp(k) += h;
    VecR fp(n_residuals);
    fn(xp, fp);
    J.col(k) = (fp - f0) / h;
  }
  const double dof = std::max(1, n_residuals - p);
  const MatR jtj = J.transpose() * J;
  Eigen::FullPivLU<MatR> lu(jtj);
  r.covariance = lu.isInvertible() ? MatR(lu.inverse() * (r.rss / dof))
                                   : MatR::Constant(p, p, std::numeric_limits<double>::infinity());
  return r;
}

struct DecayFitParams {
  double A = 0.0, B = 0.0, alpha = 1.0;
  MatR covariance = MatR::Zero(3, 3);  // order (A, alpha, B)
  bool converged = true;
};

/// y = A alpha^m + B.
inline DecayFitParams fit_exponential_decay(const std::vector<double>& m,
                                            const std::vector<double>& y) {
  if (m.size() != y.size() || m.size() < 3) {
    fail(ErrorKind::FitFailure, "decay fit needs >= 3 matched points");
  }
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  DecayFitParams out;
  if (*hi - *lo < 1e-12) {
    out.A = 0.0;
    out.B = *lo;
    out.alpha = 1.0;
    return out;
  }
  const int n = static_cast<int>(m.size());
  ResidualFn fn = [&](const VecR& x, VecR& r) {
    for (int i = 0; i < n; ++i) r(i) = x(0) * std::pow(x(1), m[i]) + x(2) - y[i];
  };
  // Initial guess from the first and last points with B near the floor.
  const double b0 = std::min(*lo, 0.25);
  double a0 = y.front() - b0;
  double al = 0.99;
  if (y.back() - b0 > 0.0 && a0 > 0.0 && m.back() > m.front()) {
    al = std::pow((y.back() - b0) / a0, 1.0 / (m.back() - m.front()));
    al = std::clamp(al, 0.5, 0.999999);
    a0 /= std::pow(al, m.front());
  }
  VecR x0(3);
  x0 << a0, al, b0;
  const LeastSquaresResult r = least_squares(fn, x0, n);
  out.A = r.params(0);
  out.alpha = r.params(1);
  out.B = r.params(2);
  out.covariance = r.covariance;
  out.converged = r.converged && std::isfinite(out.alpha);
  if (!out.converged) fail(ErrorKind::FitFailure, "decay fit did not converge");
  return out;
}

struct SinusoidFit {
  double offset = 0.0, amplitude = 0.0, frequency = 0.0, phase = 0.0;
  double rms_residual = 0.0;
};

/// y = offset + amplitude cos(2 pi frequency t + phase); frequency in 1/[t].
inline SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y,
                                double f_min, double f_max) {
  const int n = static_cast<int>(t.size());
  if (n < 8 || y.size() != t.size() || !(f_max > f_min) || f_min < 0.0) {
    fail(ErrorKind::FitFailure, "sinusoid fit needs >= 8 points and a frequency window");
  }
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;
  // Periodogram scan for the starting frequency.
  const double span = t.back() - t.front();
  const int n_scan = std::max(200, static_cast<int>(20.0 * (f_max - f_min) * span));
  double best_f = f_min, best_p = -1.0;
  for (int k = 0; k <= n_scan; ++k) {
    const double f = f_min + (f_max - f_min) * k / n_scan;
    double c = 0.0, s = 0.0;
    for (int i = 0; i < n; ++i) {
      c += (y[i] - mean) * std::cos(kTwoPi * f * t[i]);
      s += (y[i] - mean) * std::sin(kTwoPi * f * t[i]);
    }
    if (c * c + s * s > best_p) {
      best_p = c * c + s * s;
      best_f = f;
    }
  }
  double c = 0.0, s = 0.0;
  for (int i = 0; i < n; ++i) {
    c += (y[i] - mean) * std::cos(kTwoPi * best_f * t[i]);
    s += (y[i] - mean) * std::sin(kTwoPi * best_f * t[i]);
  }
  VecR x0(4);
  x0 << mean, 2.0 * std::hypot(c, s) / n, best_f, std::atan2(-s, c);
  ResidualFn fn = [&](const VecR& x, VecR& r) {
    for (int i = 0; i < n; ++i) r(i) = x(0) + x(1) * std::cos(kTwoPi * x(2) * t[i] + x(3)) - y[i];
  };
  const LeastSquaresResult r = least_squares(fn, x0, n);
  if (!std::isfinite(r.params(2))) fail(ErrorKind::FitFailure, "sinusoid fit diverged");
  SinusoidFit out;
  out.offset = r.params(0);
  out.amplitude = r.params(1);
  out.frequency = r.params(2);
  out.phase = r.params(3);
  if (out.amplitude < 0.0) {
    out.amplitude = -out.amplitude;
    out.phase += kPi;
  }
  out.rms_residual = std::sqrt(r.rss / n);
  return out;
}

struct GaussianEchoFit {
  double A = 0.0, B = 0.0, T_phi = 0.0;
  double gamma_phi() const { return 1.0 / T_phi; }
};

/// y = A + B exp(-t/(2 T1) - (t/T_phi)^2) with T1 fixed.
inline GaussianEchoFit fit_gaussian_echo(const std::vector<double>& t,
                                         const std::vector<double>& y, double T1,
                                         double T_phi_guess) {
  const int n = static_cast<int>(t.size());
  if (n < 4 || y.size() != t.size()) fail(ErrorKind::FitFailure, "echo fit needs >= 4 points");
  ResidualFn fn = [&](const VecR& x, VecR& r) {
    for (int i = 0; i < n; ++i) {
      r(i) = x(0) + x(1) * std::exp(-t[i] / (2.0 * T1) - std::pow(t[i] / x(2), 2)) - y[i];
    }
  };
  VecR x0(3);
  x0 << y.back(), y.front() - y.back(), T_phi_guess;
  const LeastSquaresResult r = least_squares(fn, x0, n);
  if (!r.converged) fail(ErrorKind::FitFailure, "echo fit did not converge");
  return {r.params(0), r.params(1), std::abs(r.params(2))};
}

}  // namespace crzz
