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
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "crzz/fit.hpp"
#include "crzz/gate_error.hpp"
#include "crzz/linalg.hpp"
#include "crzz/noise_model.hpp"
#include "crzz/parallel.hpp"

namespace crzz {

namespace detail {

/// Unitary with global phase fixed so the first non-negligible entry
/// (column-major) is real and positive.
inline MatC canonical_phase(const MatC& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      const double a = std::abs(u(r, c));
      if (a > 1e-6) return u * (std::conj(u(r, c)) / a);
    }
  }
  fail(ErrorKind::ClosureFailure, "zero matrix in Clifford enumeration");
}

inline std::vector<std::int64_t> unitary_key(const MatC& canon) {
  std::vector<std::int64_t> k;
  k.reserve(static_cast<std::size_t>(2 * canon.size()));
  for (Eigen::Index i = 0; i < canon.size(); ++i) {
    k.push_back(std::llround(canon.data()[i].real() * 1e5));
    k.push_back(std::llround(canon.data()[i].imag() * 1e5));
  }
  return k;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& k) const {
    return boost::hash_range(k.begin(), k.end());
  }
};

}  // namespace detail

/// Clifford group on one or two qubits, enumerated as unitaries.
/// For two qubits `primitive_count[i]` is the minimal number of ZX90 gates
/// (single-qubit gates free); for one qubit it is the minimal number of
/// +-X90, +-Y90, X180, Y180 pulses.
class CliffordGroup {
 public:
  static constexpr double kSingleQubitN = 2.205;

  explicit CliffordGroup(int n_qubits) : n_(n_qubits) {
    if (n_qubits != 1 && n_qubits != 2) fail(ErrorKind::InvalidInput, "n_qubits must be 1 or 2");
    dim_ = 1 << n_qubits;
    enumerate();
    verify_closure();
  }

  int n_qubits() const { return n_; }
  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const MatC& element(std::size_t i) const { return elements_.at(i); }
  int primitive_count(std::size_t i) const { return counts_.at(i); }

  /// Average primitive count per Clifford used in the error conversion.
  double primitive_count_avg() const {
    if (n_ == 1) return kSingleQubitN;
    return enumerated_count_avg();
  }
  double enumerated_count_avg() const {
    double s = 0.0;
    for (int c : counts_) s += c;
    return s / static_cast<double>(counts_.size());
  }
  std::vector<std::size_t> count_histogram() const {
    std::vector<std::size_t> h;
    for (int c : counts_) {
      if (static_cast<std::size_t>(c) >= h.size()) h.resize(static_cast<std::size_t>(c) + 1, 0);
      ++h[static_cast<std::size_t>(c)];
    }
    return h;
  }

  /// Index of u (up to global phase); -1 if u is not in the group.
  long find(const MatC& u) const {
    const auto it = index_.find(detail::unitary_key(detail::canonical_phase(u)));
    return it == index_.end() ? -1 : static_cast<long>(it->second);
  }
  std::size_t inverse_of(const MatC& u) const {
    const long i = find(u.adjoint());
    if (i < 0) fail(ErrorKind::ClosureFailure, "inverse not found in the Clifford group");
    return static_cast<std::size_t>(i);
  }

 private:
  void enumerate() {
    std::vector<std::pair<MatC, int>> gens;  // (generator, cost)
    const cplx im(0.0, 1.0);
    if (n_ == 1) {
      for (char ax : {'X', 'Y'}) {
        const MatC p = pauli::single(ax);
        for (double th : {kPi / 2, -kPi / 2, kPi}) {
          gens.emplace_back(std::cos(th / 2) * MatC::Identity(2, 2) - im * std::sin(th / 2) * p, 1);
        }
      }
    } else {
      MatC h(2, 2);
      h << 1.0, 1.0, 1.0, -1.0;
      h /= std::sqrt(2.0);
      MatC s = MatC::Identity(2, 2);
      s(1, 1) = im;
      const MatC i2 = MatC::Identity(2, 2);
      gens.emplace_back(kron(h, i2), 0);
      gens.emplace_back(kron(s, i2), 0);
      gens.emplace_back(kron(i2, h), 0);
      gens.emplace_back(kron(i2, s), 0);
      gens.emplace_back(MatC(zx_gate(kPi / 2)), 1);
    }
    // 0-1 BFS: minimal cost to reach each element.
    std::deque<std::size_t> queue;
    add(MatC::Identity(dim_, dim_), 0);
    queue.push_back(0);
    std::vector<bool> done;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      if (done.size() < elements_.size()) done.resize(elements_.size(), false);
      if (done[cur]) continue;
      done[cur] = true;
      for (const auto& [g, cost] : gens) {
        const MatC next = g * elements_[cur];
        const int c = counts_[cur] + cost;
        const auto key = detail::unitary_key(detail::canonical_phase(next));
        const auto it = index_.find(key);
        std::size_t j;
        if (it == index_.end()) {
          j = add(next, c);
        } else {
          j = it->second;
          if (c >= counts_[j]) continue;
          counts_[j] = c;
        }
        if (cost == 0) {
          queue.push_front(j);
        } else {
          queue.push_back(j);
        }
      }
      if (elements_.size() > 20000) fail(ErrorKind::ClosureFailure, "Clifford enumeration overflow");
    }
    const std::size_t expected = n_ == 1 ? 24 : 11520;
    if (elements_.size() != expected) {
      fail(ErrorKind::ClosureFailure, "Clifford group has " + std::to_string(elements_.size()) +
                                          " elements, expected " + std::to_string(expected));
    }
  }

  std::size_t add(const MatC& u, int count) {
    MatC c = detail::canonical_phase(u);
    const std::size_t i = elements_.size();
    index_.emplace(detail::unitary_key(c), i);
    elements_.push_back(std::move(c));
    counts_.push_back(count);
    return i;
  }

  void verify_closure() const {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<std::size_t> pick(0, elements_.size() - 1);
    for (int k = 0; k < 64; ++k) {
      const MatC& a = elements_[pick(rng)];
      const MatC& b = elements_[pick(rng)];
      if (find(a * b) < 0 || find(a.adjoint()) < 0) {
        fail(ErrorKind::ClosureFailure, "sampled product or inverse outside the group");
      }
    }
  }

  int n_ = 0;
  int dim_ = 0;
  std::vector<MatC> elements_;
  std::vector<int> counts_;
  std::unordered_map<std::vector<std::int64_t>, std::size_t, detail::KeyHash> index_;
};

/// Shared, lazily built group instances.
inline const CliffordGroup& clifford_group(int n_qubits) {
  static std::once_flag f1, f2;
  static std::unique_ptr<CliffordGroup> g1, g2;
  if (n_qubits == 1) {
    std::call_once(f1, [] { g1 = std::make_unique<CliffordGroup>(1); });
    return *g1;
  }
  if (n_qubits == 2) {
    std::call_once(f2, [] { g2 = std::make_unique<CliffordGroup>(2); });
    return *g2;
  }
  fail(ErrorKind::InvalidInput, "n_qubits must be 1 or 2");
}

/// epsilon = (1/2)(1 - alpha^{1/N}) for one qubit, (3/4)(1 - alpha^{1/N})
/// for two. alpha > 1 clamps to 0 and appends a warning to `notes`.
inline double error_per_gate(double alpha, double N, int n_qubits, Notes* notes = nullptr) {
  if (!(alpha > 0.0) || !(N > 0.0) || (n_qubits != 1 && n_qubits != 2)) {
    fail(ErrorKind::InvalidInput, "error_per_gate needs alpha > 0, N > 0, n_qubits in {1,2}");
  }
  if (alpha > 1.0) {
    if (notes) notes->push_back("alpha > 1 clamped to epsilon = 0");
    return 0.0;
  }
  const double pre = n_qubits == 1 ? 0.5 : 0.75;
  return pre * (1.0 - std::pow(alpha, 1.0 / N));
}

struct DecayFit {
  double A = 0.0, B = 0.0, alpha = 1.0;
  MatR covariance = MatR::Zero(3, 3);  // (A, alpha, B)
  double epsilon = 0.0;
  double epsilon_stderr = 0.0;
  bool converged = true;
  Notes notes;
};

enum class NoiseAttachment { PerPrimitive, PerClifford };

struct RbConfig {
  std::vector<int> lengths{1, 5, 10, 20, 40, 60, 80, 100};
  int n_seeds = 30;
  int n_shots = 0;  // 0: exact populations
  std::uint64_t seed = 1;
  NoiseAttachment attachment = NoiseAttachment::PerPrimitive;
  int threads = 1;
};

struct RbResult {
  std::vector<int> lengths;
  std::vector<double> mean_survival;
  std::vector<double> std_survival;
  std::vector<std::vector<double>> survival;  // [length][seed]
  DecayFit fit;
  double N = 0.0;
};

/// Random Clifford sequences of each length plus the recovery element, each
/// Clifford followed by the noise channel (once, or once per primitive).
inline RbResult simulate_rb(const CliffordGroup& group, const QuantumChannel& noise,
                            const RbConfig& cfg) {
  const int d = group.dim();
  if (noise.dim() != d) fail(ErrorKind::InvalidInput, "noise channel dimension mismatch");
  if (cfg.lengths.empty() || cfg.n_seeds < 1) {
    fail(ErrorKind::InvalidInput, "RB needs at least one length and one seed");
  }
  for (int m : cfg.lengths) {
    if (m < 0) fail(ErrorKind::InvalidInput, "negative RB length");
  }
  int max_count = 1;
  for (std::size_t i = 0; i < group.size(); ++i) max_count = std::max(max_count, group.primitive_count(i));
  std::vector<MatC> noise_pow(static_cast<std::size_t>(max_count) + 1);
  noise_pow[0] = MatC::Identity(d * d, d * d);
  for (int k = 1; k <= max_count; ++k) noise_pow[k] = noise.superop() * noise_pow[k - 1];

  const std::size_t n_len = cfg.lengths.size();
  const std::size_t total = n_len * static_cast<std::size_t>(cfg.n_seeds);
  const auto pops = parallel_map<double>(total, cfg.threads, [&](std::size_t job) {
    const std::size_t li = job / static_cast<std::size_t>(cfg.n_seeds);
    const std::size_t si = job % static_cast<std::size_t>(cfg.n_seeds);
    std::seed_seq ss{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                     static_cast<std::uint32_t>(li), static_cast<std::uint32_t>(si)};
    std::mt19937_64 rng(ss);
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    VecC rho = VecC::Zero(d * d);
    rho(0) = 1.0;
    MatC acc = MatC::Identity(d, d);
    auto step = [&](std::size_t idx) {
      const MatC& c = group.element(idx);
      rho = kron(c, c.conjugate()) * rho;
      const int k = cfg.attachment == NoiseAttachment::PerClifford ? 1 : group.primitive_count(idx);
      if (k > 0) rho = noise_pow[static_cast<std::size_t>(k)] * rho;
      acc = c * acc;
    };
    for (int i = 0; i < cfg.lengths[li]; ++i) step(pick(rng));
    step(group.inverse_of(acc));
    double p = std::clamp(rho(0).real(), 0.0, 1.0);
    if (cfg.n_shots > 0) {
      std::binomial_distribution<int> shots(cfg.n_shots, p);
      p = static_cast<double>(shots(rng)) / cfg.n_shots;
    }
    return p;
  });

  RbResult r;
  r.lengths = cfg.lengths;
  r.N = group.primitive_count_avg();
  std::vector<double> m, y;
  for (std::size_t li = 0; li < n_len; ++li) {
    std::vector<double> row(pops.begin() + static_cast<long>(li * cfg.n_seeds),
                            pops.begin() + static_cast<long>((li + 1) * cfg.n_seeds));
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(row.size());
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    var /= std::max<std::size_t>(1, row.size() - 1);
    r.mean_survival.push_back(mean);
    r.std_survival.push_back(std::sqrt(var));
    r.survival.push_back(std::move(row));
    m.push_back(cfg.lengths[li]);
    y.push_back(mean);
  }
  try {
    const DecayFitParams f = fit_exponential_decay(m, y);
    r.fit.A = f.A;
    r.fit.B = f.B;
    r.fit.alpha = f.alpha;
    r.fit.covariance = f.covariance;
    r.fit.epsilon = error_per_gate(f.alpha, r.N, group.n_qubits(), &r.fit.notes);
    const double pre = group.n_qubits() == 1 ? 0.5 : 0.75;
    const double sa = std::sqrt(std::max(0.0, f.covariance(1, 1)));
    r.fit.epsilon_stderr = f.alpha > 1.0 ? 0.0 : pre / r.N * std::pow(f.alpha, 1.0 / r.N - 1.0) * sa;
  } catch (const Error& e) {
    r.fit.converged = false;
    r.fit.notes.push_back(e.what());
  }
  return r;
}

/// Per-ZX90 noise from the gate pipeline: E = Lambda_actual o V^{-1}, with V
/// the ideal gate including the optimal virtual Z phases.
inline QuantumChannel primitive_noise_channel(const QuantumChannel& actual, const Mat4& ideal) {
  const GateFidelity g = average_gate_error(actual, ideal);
  const MatC v = z_phases(g.z1, g.z2) * ideal;
  return QuantumChannel(actual.superop() * kron(v, v.conjugate()).adjoint(), "zx90-noise");
}

/// Echoed-CR channel at one flux point and gate length with every error
/// source the model enables, and its ideal ZX90 target.
inline std::pair<QuantumChannel, Mat4> device_gate_channel(const DeviceModel& m, double f,
                                                           double t_g) {
  const FluxPointModel p = flux_point(m, f);
  const CalibratedGate g = calibrate_gate(m, p, t_g);
  return {gate_channel(g, p.coherence(m), GateVariant::Full), g.ideal};
}

}  // namespace crzz
