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

#include "crzz/types.hpp"

namespace crzz {

/// Echoed-CR timing in ns. t_g = 2 tau0 + 4 rise_fall + 2 pi_pulse.
struct PulseSchedule {
  double tau0 = 0.0;
  double rise_fall = 20.0;
  double pi_pulse = 40.0;
  double t_g = 160.0;
  double tau_eff = 20.0;

  /// Square-equivalent CR drive time summed over both pulses, in us.
  double total_cr_time_us() const { return 2.0 * tau_eff * 1e-3; }
  double tau_eff_us() const { return tau_eff * 1e-3; }
  double t_g_us() const { return t_g * 1e-3; }
};

inline PulseSchedule schedule_from_gate_length(double t_g, double rise_fall = 20.0,
                                               double pi_pulse = 40.0) {
  const double overhead = 4.0 * rise_fall + 2.0 * pi_pulse;
  if (!(t_g >= overhead - 1e-12)) {
    fail(ErrorKind::InfeasibleSchedule, "gate length shorter than the fixed overhead");
  }
  PulseSchedule s;
  s.rise_fall = rise_fall;
  s.pi_pulse = pi_pulse;
  s.t_g = t_g;
  s.tau0 = std::max(0.0, 0.5 * (t_g - overhead));
  s.tau_eff = s.tau0 + rise_fall;
  return s;
}

/// Omega (MHz) giving a ZX90 for a low-amplitude slope gamma and tau_eff (ns).
inline double amplitude_for_zx90(double gamma, double tau_eff_ns) {
  if (!(gamma > 0.0)) fail(ErrorKind::UnreachableRotation, "non-positive CR slope");
  if (!(tau_eff_ns > 0.0)) fail(ErrorKind::InvalidInput, "tau_eff must be positive");
  return 1.0 / (4.0 * gamma * tau_eff_ns * 1e-3);
}

struct CrosstalkModel {
  double a0 = 0.07;
  double slope = 40.0;
  double exponent_flux = 1.2;
  double exponent_time = 2.0 / 3.0;
  bool enabled = true;
};

inline double crosstalk_scale(double f, const PulseSchedule& s,
                              const CrosstalkModel& m = {}) {
  if (!m.enabled) return 0.0;
  const double flux = std::max(0.0, m.a0 - m.slope * std::pow(std::abs(f - 0.5), m.exponent_flux));
  return flux * std::pow(s.total_cr_time_us(), m.exponent_time);
}

}  // namespace crzz
