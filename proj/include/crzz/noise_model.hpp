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
#include <limits>
#include <string>
#include <utility>

#include "crzz/linalg.hpp"
#include "crzz/types.hpp"

namespace crzz {

/// Linear map on d x d density matrices, stored as a d^2 x d^2 superoperator
/// acting on row-major vectorization: vec(A rho B) = (A kron B^T) vec(rho).
class QuantumChannel {
 public:
  QuantumChannel() = default;
  QuantumChannel(MatC superop, std::string label)
      : S_(std::move(superop)), label_(std::move(label)) {
    const auto n = S_.rows();
    dim_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (S_.cols() != n || dim_ * dim_ != n) {
      fail(ErrorKind::InvalidInput, "superoperator must be d^2 x d^2");
    }
  }

  static QuantumChannel identity(int d) {
    return QuantumChannel(MatC::Identity(d * d, d * d), "identity");
  }
  static QuantumChannel unitary(const MatC& u, std::string label = "unitary") {
    return QuantumChannel(kron(u, u.conjugate()), std::move(label));
  }
  /// rho -> a rho + (1 - a) Tr(rho) I / d.
  static QuantumChannel depolarizing(double a, int d) {
    MatC s = a * MatC::Identity(d * d, d * d);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) s(i * d + i, k * d + k) += (1.0 - a) / d;
    }
    return QuantumChannel(s, "depolarizing");
  }

  int dim() const { return dim_; }
  const MatC& superop() const { return S_; }
  const std::string& label() const { return label_; }

  /// this first, then `next`.
  QuantumChannel then(const QuantumChannel& next) const {
    if (next.dim_ != dim_) fail(ErrorKind::InvalidInput, "channel dimension mismatch");
    return QuantumChannel(next.S_ * S_, label_ + " > " + next.label_);
  }

  MatC apply(const MatC& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
      fail(ErrorKind::InvalidInput, "density matrix dimension mismatch");
    }
    VecC v(dim_ * dim_);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) v(i * dim_ + j) = rho(i, j);
    }
    const VecC w = S_ * v;
    MatC out(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) out(i, j) = w(i * dim_ + j);
    }
    return 0.5 * (out + out.adjoint());
  }

  /// max |Tr(Lambda(|k><l|)) - delta_kl|.
  double trace_preservation_defect() const {
    double worst = 0.0;
    for (int k = 0; k < dim_; ++k) {
      for (int l = 0; l < dim_; ++l) {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += S_(i * dim_ + i, k * dim_ + l);
        worst = std::max(worst, std::abs(t - (k == l ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

  /// Smallest eigenvalue of the Choi matrix sum_kl |k><l| (x) Lambda(|k><l|).
  double choi_min_eigenvalue() const {
    const int d = dim_;
    MatC choi = MatC::Zero(d * d, d * d);
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            choi(k * d + i, l * d + j) = S_(i * d + j, k * d + l);
          }
        }
      }
    }
    return eigh(0.5 * (choi + choi.adjoint())).values.minCoeff();
  }

 private:
  MatC S_;
  std::string label_;
  int dim_ = 0;
};

/// A rho B as a superoperator.
inline MatC sandwich(const MatC& a, const MatC& b) {
  return kron(a, b.transpose());
}

struct CoherenceCard {
  double T1_q1 = 18.0, T2_q1 = 15.0, T1_q2 = 40.0, T2_q2 = 45.0;  // us

  void validate() const {
    auto check = [](double t1, double t2, const char* q) {
      if (!(t1 > 0.0) || !(t2 > 0.0)) {
        fail(ErrorKind::UnphysicalCard, std::string("coherence times must be positive for ") + q);
      }
      if (t2 > 2.0 * t1 * (1.0 + 1e-12)) {
        fail(ErrorKind::UnphysicalCard, std::string("T2 > 2 T1 for ") + q);
      }
    };
    check(T1_q1, T2_q1, "qubit 1");
    check(T1_q2, T2_q2, "qubit 2");
  }
};

/// Single-qubit relaxation/dephasing map over `duration` (all in us):
/// rho -> (1-e2)/2 Z rho Z + (1+e2)/2 rho + p/2 |0><1| rho |1><0| - p/2 P1 rho P1
/// with e2 = exp(-t/T2) and p = 1 - exp(-t/T1).
inline QuantumChannel decoherence_channel(double T1, double T2, double duration) {
  if (!(duration >= 0.0)) fail(ErrorKind::InvalidInput, "duration must be >= 0");
  CoherenceCard{T1, T2, 1.0, 1.0}.validate();
  const double e2 = std::exp(-duration / T2);
  const double p = 1.0 - std::exp(-duration / T1);
  MatC z = pauli::Z();
  MatC i2 = MatC::Identity(2, 2);
  MatC lower = MatC::Zero(2, 2);
  lower(0, 1) = 1.0;
  MatC p1 = MatC::Zero(2, 2);
  p1(1, 1) = 1.0;
  const MatC s = 0.5 * (1.0 - e2) * sandwich(z, z) + 0.5 * (1.0 + e2) * sandwich(i2, i2) +
                 0.5 * p * sandwich(lower, lower.adjoint()) - 0.5 * p * sandwich(p1, p1);
  return QuantumChannel(s, "decoherence");
}

/// Embed a single-qubit channel on qubit `q` (1 = most significant) of two.
inline QuantumChannel on_qubit(const QuantumChannel& ch, int q) {
  if (ch.dim() != 2 || (q != 1 && q != 2)) {
    fail(ErrorKind::InvalidInput, "on_qubit expects a single-qubit channel and q in {1,2}");
  }
  // Reorder (i1 i2)(j1 j2) <- (i j) x (i' j') index layout.
  const MatC& s = ch.superop();
  MatC out = MatC::Zero(16, 16);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
          for (int k1 = 0; k1 < 2; ++k1)
            for (int k2 = 0; k2 < 2; ++k2)
              for (int l1 = 0; l1 < 2; ++l1)
                for (int l2 = 0; l2 < 2; ++l2) {
                  cplx v;
                  if (q == 1) {
                    if (i2 != k2 || j2 != l2) continue;
                    v = s(i1 * 2 + j1, k1 * 2 + l1);
                  } else {
                    if (i1 != k1 || j1 != l1) continue;
                    v = s(i2 * 2 + j2, k2 * 2 + l2);
                  }
                  const int row = (i1 * 2 + i2) * 4 + (j1 * 2 + j2);
                  const int col = (k1 * 2 + k2) * 4 + (l1 * 2 + l2);
                  out(row, col) = v;
                }
  return QuantumChannel(out, ch.label() + "@q" + std::to_string(q));
}

enum class DephasingMode { Raw, RbEffective };

struct DephasingModel {
  double A_phi_sqrt = 1.5;       // uPhi0 at 1 Hz
  double slope_reduction = 2.7;  // applied in RbEffective mode
  double offset = 0.039;         // 1/us
  double slope = 0.00288;        // tabulated effective slope, for reference

  /// Flux-noise rate per unit gradient, 1/us per (GHz/Phi0).
  double raw_slope() const {
    return kTwoPi * std::sqrt(std::log(2.0)) * A_phi_sqrt * 1e-6 * 1e3;
  }
};

inline double pure_dephasing_rate(double D_phi, const DephasingModel& m,
                                  DephasingMode mode = DephasingMode::RbEffective) {
  if (!std::isfinite(D_phi)) fail(ErrorKind::InvalidInput, "flux gradient must be finite");
  double k = m.raw_slope();
  if (mode == DephasingMode::RbEffective) k /= m.slope_reduction;
  return k * std::abs(D_phi) + m.offset;
}

/// 1/T2 = 1/(2 T1) + Gamma_phi.
inline double effective_T2(double T1, double gamma_phi) {
  if (!(T1 > 0.0) || !(gamma_phi >= 0.0)) {
    fail(ErrorKind::InvalidInput, "effective_T2 needs T1 > 0 and Gamma_phi >= 0");
  }
  return 1.0 / (1.0 / (2.0 * T1) + gamma_phi);
}

}  // namespace crzz
