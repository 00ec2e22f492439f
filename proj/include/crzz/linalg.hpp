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
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "crzz/types.hpp"

namespace crzz {

template <typename A, typename B>
MatC kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  MatC out = Eigen::kroneckerProduct(a.template cast<cplx>().eval(),
                                     b.template cast<cplx>().eval());
  return out;
}

inline double hermiticity_defect(const MatC& h) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

struct EigenPairs {
  VecR values;
  MatC vectors;
};

inline EigenPairs eigh(const MatC& h) {
  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  if (es.info() != Eigen::Success) {
    fail(ErrorKind::NumericalPrecision, "Hermitian eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

/// exp(-i 2 pi H t) for Hermitian H in GHz and t in ns.
inline MatC evolution(const MatC& h, double t) {
  const EigenPairs ep = eigh(h);
  VecC phases(ep.values.size());
  for (Eigen::Index k = 0; k < ep.values.size(); ++k) {
    phases(k) = std::exp(cplx(0.0, -kTwoPi * ep.values(k) * t));
  }
  return ep.vectors * phases.asDiagonal() * ep.vectors.adjoint();
}

/// M^{-1/2} for Hermitian positive-definite M.
inline MatC inverse_sqrt_hpd(const MatC& m) {
  const EigenPairs ep = eigh(m);
  if (ep.values.minCoeff() <= 0.0) {
    fail(ErrorKind::NumericalPrecision, "matrix is not positive definite");
  }
  VecC d = ep.values.cwiseSqrt().cwiseInverse().cast<cplx>();
  return ep.vectors * d.asDiagonal() * ep.vectors.adjoint();
}

inline double smallest_singular_value(const MatC& m) {
  Eigen::JacobiSVD<MatC> svd(m);
  return svd.singularValues().minCoeff();
}

/// Greedy global maximum-overlap assignment. Returns col_of[row]: the column
/// of `x` (an eigenvector) assigned to basis row `row`. `tie_tol` > 0 makes
/// near-equal competing overlaps an error.
inline std::vector<int> assign_by_overlap(const MatC& x, double tie_tol = 0.0) {
  const int n = static_cast<int>(x.rows());
  struct Cand {
    double w;
    int row;
    int col;
  };
  std::vector<Cand> cands;
  cands.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) cands.push_back({std::norm(x(r, c)), r, c});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.w > b.w; });
  std::vector<int> col_of(n, -1);
  std::vector<char> col_used(n, 0);
  int assigned = 0;
  for (std::size_t i = 0; i < cands.size() && assigned < n; ++i) {
    const Cand& c = cands[i];
    if (col_of[c.row] >= 0 || col_used[c.col]) continue;
    if (tie_tol > 0.0) {
      for (int other = 0; other < n; ++other) {
        if (other == c.col || col_used[other]) continue;
        if (std::abs(std::norm(x(c.row, other)) - c.w) < tie_tol &&
            c.w > tie_tol) {
          fail(ErrorKind::Labeling,
               "ambiguous eigenvector assignment for basis state " +
                   std::to_string(c.row));
        }
      }
    }
    col_of[c.row] = c.col;
    col_used[c.col] = 1;
    ++assigned;
  }
  return col_of;
}

namespace pauli {

inline Mat2 I() { return Mat2::Identity(); }
inline Mat2 X() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
inline Mat2 Y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Mat2 Z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
inline Mat2 single(char c) {
  switch (c) {
    case 'I': return I();
    case 'X': return X();
    case 'Y': return Y();
    case 'Z': return Z();
    default: fail(ErrorKind::InvalidInput, std::string("unknown Pauli ") + c);
  }
}
/// Two-qubit Pauli, first letter acts on qubit 1 (most significant).
inline Mat4 two(const char* s) {
  return kron(single(s[0]), single(s[1]));
}

}  // namespace pauli

}  // namespace crzz
