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

// Prints a short report of the bundled device at its flux sweet spot.

#include <cstdio>

#include "crzz/crzz.hpp"

int main() {
  using namespace crzz;
  const DeviceModel m = resolve(paper_device_card());
  const FluxPointModel p = flux_point(m, 0.5);

  std::printf("control  bare %.4f GHz  dressed %.4f GHz  delta %+.1f MHz\n", p.s1.omega(0),
              p.d.transition(1), p.s1.delta(0) * 1e3);
  std::printf("target   bare %.4f GHz  dressed %.4f GHz  delta %+.1f MHz\n", p.s2.omega(0),
              p.d.transition(2), p.s2.delta(0) * 1e3);
  std::printf("static ZZ %.1f kHz, effective T2 of the control %.1f us\n", p.zeta * 1e6, p.T2_q1);

  const double gamma = low_amplitude_slope(p.d, p.drive, m.ladder);
  const Anticrossing ac = find_anticrossing(p.d, p.drive, 150.0, 300.0, m.ladder);
  std::printf("CR slope %.4f, E11/E02 anticrossing at %.1f MHz\n", gamma, ac.Omega);

  for (double tg : {200.0, 300.0, 440.0, 560.0}) {
    const GateErrorPoint g = gate_error_point(m, p, tg);
    if (!g.ok) {
      std::printf("t_g = %.0f ns: %s\n", tg, g.message.c_str());
      continue;
    }
    std::printf("t_g = %.0f ns: Omega %.1f MHz, R %.4f, error %.3e (coherence %.3e, +ZZ %.3e)\n", tg,
                g.Omega, g.R, g.eps_full, g.eps_coherence, g.eps_zz);
  }
  return 0;
}
