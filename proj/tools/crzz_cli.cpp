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

// crzz_cli: sweeps over device cards, CSV output with '#' metadata lines.
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crzz/crzz.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace crzz;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string card = "paper-device";
  std::string out;
  bool plot = false;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct Table {
  std::vector<std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> failures;  // sweep points that failed

  void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }
};

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.10g", v);
  return b;
}

std::vector<double> flux_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) fail(ErrorKind::InvalidInput, "--f-step must be > 0");
  std::vector<double> v;
  if (hi < lo) return v;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= n; ++i) v.push_back(lo + step * i);
  for (double f : v) {
    if (f < 0.0 || f > 1.0) fail(ErrorKind::InvalidInput, "flux range must lie in [0, 1]");
  }
  return v;
}

fs::path output_path(const std::string& out) {
  fs::path p(out);
  if (const char* dir = std::getenv("CRZZ_OUT_DIR"); dir && *dir && p.is_relative()) {
    p = fs::path(dir) / p;
  }
  return p;
}

/// Writes the table (stdout when --out is empty) and an optional SVG.
void emit(const Common& c, const std::string& command, const DeviceCard& card, const Table& t,
          const std::function<void(const fs::path&)>& plot = {}) {
  std::ostringstream o;
  o << "# crzz " << kVersion << "\n";
  o << "# command: " << command << "\n";
  o << "# card: " << card.model.label << " " << hex64(card_hash(card)) << "\n";
  o << "# seed: " << c.seed << "\n";
  for (const auto& m : t.meta) o << "# " << m << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) o << (i ? "," : "") << t.columns[i];
  o << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << r[i];
    o << "\n";
  }
  if (c.out.empty()) {
    if (c.plot) fail(ErrorKind::InvalidInput, "--plot needs --out");
    std::cout << o.str();
    return;
  }
  const fs::path p = output_path(c.out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) fail(ErrorKind::InvalidInput, "cannot write " + p.string());
  f << o.str();
  if (c.plot && plot) {
    fs::path svg = p;
    svg.replace_extension(".svg");
    plot(svg);
  }
}

/// Reports failed sweep points on stderr; numerical failures exit with 2.
int finish(const Table& t) {
  for (const auto& f : t.failures) std::cerr << "failed point: " << f << "\n";
  return t.failures.empty() ? 0 : 2;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--card", c.card, "Bundled card name or JSON path")->capture_default_str();
  app->add_option("--out", c.out, "Output CSV path (stdout if omitted)");
  app->add_flag("--plot", c.plot, "Also write an SVG next to the CSV");
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

std::vector<double> column(const Table& t, std::size_t i) {
  std::vector<double> v;
  for (const auto& r : t.rows) v.push_back(std::strtod(r[i].c_str(), nullptr));
  return v;
}

// --- commands ---------------------------------------------------------------

struct FluxRange {
  double lo = 0.49, hi = 0.51, step = 0.001;
};

void add_flux_range(CLI::App* app, FluxRange& r) {
  app->add_option("--f-min", r.lo, "Lowest flux bias")->capture_default_str();
  app->add_option("--f-max", r.hi, "Highest flux bias")->capture_default_str();
  app->add_option("--f-step", r.step, "Flux step")->capture_default_str();
}

int cmd_spectrum(const Common& c, const FluxRange& r) {
  const DeviceCard card = card_by_name_or_path(c.card);
  const DeviceModel m = resolve(card);
  Table t;
  t.columns = {"f", "omega0_GHz", "omega1_GHz", "delta0_GHz", "dressed_omega1_GHz", "dressed_omega2_GHz"};
  for (const SpectrumRow& s : spectrum_sweep(m, flux_grid(r.lo, r.hi, r.step), c.threads)) {
    t.add({num(s.f), num(s.omega0), num(s.omega1), num(s.delta0), num(s.dressed_omega1),
           num(s.dressed_omega2)});
  }
  emit(c, "spectrum", card, t, [&](const fs::path& p) {
    const auto f = column(t, 0);
    tools::write_svg(p.string(), {"Control qubit spectrum", "flux bias f", "frequency (GHz)"},
                     {{"omega(0)", f, column(t, 1)}, {"omega(1)", f, column(t, 2)}});
  });
  return 0;
}

int cmd_zz(const Common& c, const FluxRange& r) {
  const DeviceCard card = card_by_name_or_path(c.card);
  const DeviceModel m = resolve(card);
  const auto rows = zz_sweep(m, flux_grid(r.lo, r.hi, r.step), c.threads);
  Table t;
  for (double x : zz_crossings(m, rows)) t.meta.push_back("zero crossing: f = " + num(x));
  t.columns = {"f", "zeta_exact_kHz", "zeta_perturbative_kHz", "J01_MHz", "J10_MHz"};
  for (const ZZRow& z : rows) {
    t.add({num(z.f), num(z.zeta_exact * 1e6), num(z.zeta_perturbative * 1e6), num(z.J01 * 1e3),
           num(z.J10 * 1e3)});
  }
  emit(c, "zz-sweep", card, t, [&](const fs::path& p) {
    const auto f = column(t, 0);
    tools::write_svg(p.string(), {"Static ZZ", "flux bias f", "zeta (kHz)"},
                     {{"exact", f, column(t, 1)}, {"perturbative", f, column(t, 2)}});
  });
  return 0;
}

int cmd_cr_rate(const Common& c, const std::vector<double>& fluxes, double om_max, double om_step) {
  const DeviceCard card = card_by_name_or_path(c.card);
  const DeviceModel m = resolve(card);
  if (!(om_step > 0.0) || !(om_max > 0.0)) fail(ErrorKind::InvalidInput, "amplitude range must be positive");
  std::vector<double> amps;
  for (double a = 0.0; a <= om_max + 1e-9; a += om_step) amps.push_back(a);
  Table t;
  t.columns = {"f", "Omega_MHz", "f_ecr_MHz", "beta_ZX_MHz", "beta_IX_MHz", "beta_ZY_MHz",
               "beta_IY_MHz", "beta_ZZ_MHz", "beta_ZI_MHz", "T_distance", "ok"};
  const auto per_f = parallel_map<std::vector<CrPoint>>(fluxes.size(), c.threads, [&](std::size_t i) {
    const FluxPointModel p = flux_point(m, fluxes[i]);
    return cr_sweep(p.d, p.drive, amps, m.ladder);
  });
  for (std::size_t i = 0; i < fluxes.size(); ++i) {
    const FluxPointModel p = flux_point(m, fluxes[i]);
    try {
      t.meta.push_back("f = " + num(fluxes[i]) + ": gamma = " +
                       num(low_amplitude_slope(p.d, p.drive, m.ladder)));
    } catch (const Error& e) {
      t.failures.push_back("f = " + num(fluxes[i]) + " gamma: " + e.what());
    }
    for (const CrPoint& q : per_f[i]) {
      if (!q.ok) t.failures.push_back("f = " + num(fluxes[i]) + ", Omega = " + num(q.Omega) + ": " + q.message);
      const auto& b = q.beta;
      t.add({num(fluxes[i]), num(q.Omega), num(q.f_ecr), num(b.ZX), num(b.IX), num(b.ZY), num(b.IY),
             num(b.ZZ), num(b.ZI), num(q.distance_from_identity), q.ok ? "1" : "0"});
    }
  }
  emit(c, "cr-rate", card, t, [&](const fs::path& p) {
    std::vector<tools::Series> s;
    for (std::size_t i = 0; i < fluxes.size(); ++i) {
      tools::Series x{"f = " + num(fluxes[i]), {}, {}};
      for (const CrPoint& q : per_f[i]) {
        if (!q.ok) continue;
        x.x.push_back(q.Omega);
        x.y.push_back(q.f_ecr);
      }
      s.push_back(x);
    }
    tools::write_svg(p.string(), {"Echoed CR rate", "Omega (MHz)", "f_ECR (MHz)"}, s);
  });
  return finish(t);
}

int cmd_gate_error(const Common& c, const std::vector<double>& tgs, const FluxRange& r, bool no_zz,
                   bool no_crosstalk) {
  const DeviceCard card = card_by_name_or_path(c.card);
  DeviceModel m = resolve(card);
  if (no_zz) {
    m.zeta0_override = 0.0;
    m.eta_override = 0.0;
  }
  if (no_crosstalk) m.crosstalk.enabled = false;
  const auto fsv = flux_grid(r.lo, r.hi, r.step);
  const auto rows = error_vs_flux_sweep(m, tgs, fsv, c.threads);
  Table t;
  if (no_zz) t.meta.push_back("zz: disabled");
  if (no_crosstalk) t.meta.push_back("crosstalk: disabled");
  t.columns = {"t_g_ns", "f", "Omega_MHz", "R", "zeta_static_kHz", "zeta_drive_kHz", "T2_q1_us",
               "eps_coherence", "eps_zz", "eps_full", "ok"};
  for (const GateErrorPoint& g : rows) {
    if (!g.ok) t.failures.push_back("t_g = " + num(g.t_g) + ", f = " + num(g.f) + ": " + g.message);
    t.add({num(g.t_g), num(g.f), num(g.Omega), num(g.R), num(g.zeta_static * 1e6), num(g.zeta_drive * 1e6),
           num(g.T2_q1), num(g.eps_coherence), num(g.eps_zz), num(g.eps_full), g.ok ? "1" : "0"});
  }
  emit(c, "gate-error", card, t, [&](const fs::path& p) {
    std::vector<tools::Series> s;
    for (double tg : tgs) {
      tools::Series full{num(tg) + " ns", {}, {}}, coh{num(tg) + " ns coherence", {}, {}};
      for (const auto& g : rows) {
        if (g.t_g != tg || !g.ok) continue;
        full.x.push_back(g.f);
        full.y.push_back(g.eps_full);
        coh.x.push_back(g.f);
        coh.y.push_back(g.eps_coherence);
      }
      s.push_back(full);
      s.push_back(coh);
    }
    tools::write_svg(p.string(), {"Two-qubit gate error", "flux bias f", "error per gate", true}, s);
  });
  return finish(t);
}

int cmd_predict(const Common& c, const std::vector<std::string>& scenarios, double lo, double hi,
                double step, double f) {
  if (!(step > 0.0)) fail(ErrorKind::InvalidInput, "--tg-step must be > 0");
  std::vector<double> tgs;
  for (double x = lo; x <= hi + 1e-9; x += step) tgs.push_back(x);
  struct Item {
    DeviceCard card;
    GateLengthCurve curve;
  };
  std::vector<Item> items;
  for (const auto& s : scenarios) {
    Item it{card_by_name_or_path(s), {}};
    it.curve = error_vs_gatelength(resolve(it.card), tgs, f, c.threads);
    items.push_back(std::move(it));
  }
  Table t;
  t.meta.push_back("flux: " + num(f));
  for (const auto& it : items) {
    t.meta.push_back("scenario " + it.card.model.label + " (" + hex64(card_hash(it.card)) +
                     "): best eps = " + num(it.curve.best_eps) + " at t_g = " + num(it.curve.best_t_g) + " ns");
  }
  t.columns = {"scenario", "t_g_ns", "eps_total", "eps_coherence_limit", "ok"};
  for (const auto& it : items) {
    for (const auto& q : it.curve.points) {
      if (!q.ok) t.failures.push_back(it.card.model.label + ", t_g = " + num(q.t_g) + ": " + q.message);
      t.add({it.card.model.label, num(q.t_g), num(q.eps_total), num(q.eps_coherence_limit), q.ok ? "1" : "0"});
    }
  }
  const DeviceCard& head = items.empty() ? card_by_name_or_path(c.card) : items.front().card;
  emit(c, "predict", head, t, [&](const fs::path& p) {
    std::vector<tools::Series> s;
    for (const auto& it : items) {
      tools::Series a{it.card.model.label, {}, {}}, b{it.card.model.label + " coherence", {}, {}};
      for (const auto& q : it.curve.points) {
        if (!q.ok) continue;
        a.x.push_back(q.t_g);
        a.y.push_back(q.eps_total);
        b.x.push_back(q.t_g);
        b.y.push_back(q.eps_coherence_limit);
      }
      s.push_back(a);
      s.push_back(b);
    }
    tools::write_svg(p.string(), {"Gate error vs gate length", "t_g (ns)", "error per gate", true}, s);
  });
  return finish(t);
}

int cmd_rb(const Common& c, int qubits, double tg, double f, const std::vector<int>& lengths, int seeds,
           int shots, bool per_clifford) {
  const DeviceCard card = card_by_name_or_path(c.card);
  const DeviceModel m = resolve(card);
  RbConfig cfg;
  cfg.lengths = lengths;
  cfg.n_seeds = seeds;
  cfg.n_shots = shots;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.attachment = per_clifford ? NoiseAttachment::PerClifford : NoiseAttachment::PerPrimitive;
  QuantumChannel noise;
  Table t;
  if (qubits == 2) {
    const auto [ch, ideal] = device_gate_channel(m, f, tg);
    noise = primitive_noise_channel(ch, ideal);
    t.meta.push_back("two-qubit RB, ZX90 noise at f = " + num(f) + ", t_g = " + num(tg) + " ns");
  } else if (qubits == 1) {
    const FluxPointModel p = flux_point(m, f);
    noise = decoherence_channel(m.coherence.T1_q1, p.T2_q1, m.pi_pulse * 1e-3);
    t.meta.push_back("single-qubit RB on qubit 1, pulse " + num(m.pi_pulse) + " ns at f = " + num(f));
  } else {
    fail(ErrorKind::InvalidInput, "--qubits must be 1 or 2");
  }
  const RbResult r = simulate_rb(clifford_group(qubits), noise, cfg);
  t.meta.push_back("N = " + num(r.N));
  if (r.fit.converged) {
    t.meta.push_back("fit: A = " + num(r.fit.A) + ", alpha = " + num(r.fit.alpha) + ", B = " + num(r.fit.B));
    t.meta.push_back("epsilon = " + num(r.fit.epsilon) + " +/- " + num(r.fit.epsilon_stderr));
  } else {
    t.failures.push_back("decay fit: raw populations reported");
  }
  for (const auto& n : r.fit.notes) t.meta.push_back("note: " + n);
  t.columns = {"length", "mean_survival", "std_survival"};
  for (std::size_t i = 0; i < r.lengths.size(); ++i) {
    t.add({std::to_string(r.lengths[i]), num(r.mean_survival[i]), num(r.std_survival[i])});
  }
  emit(c, "rb", card, t, [&](const fs::path& p) {
    tools::Series fit{"fit", {}, {}};
    for (int len : r.lengths) {
      fit.x.push_back(len);
      fit.y.push_back(r.fit.A * std::pow(r.fit.alpha, len) + r.fit.B);
    }
    std::vector<double> x(r.lengths.begin(), r.lengths.end());
    tools::write_svg(p.string(), {"Randomized benchmarking", "sequence length", "survival probability"},
                     {{"mean survival", x, r.mean_survival}, fit});
  });
  return finish(t);
}

int cmd_card(const Common& c, const std::string& write, bool check) {
  const DeviceCard card = card_by_name_or_path(c.card);
  const std::string text = card_to_string(card);
  if (check) {
    const std::string again = card_to_string(card_from_string(text));
    if (again != text) fail(ErrorKind::InvalidInput, "card does not round-trip");
  }
  if (!write.empty()) {
    const fs::path p = output_path(write);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
  }
  std::cout << card.model.label << " " << hex64(card_hash(card)) << (check ? " round-trip ok" : "") << "\n";
  if (write.empty() && !check) std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSFQ-transmon cross-resonance device simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common common;

  FluxRange r_spec, r_zz, r_gate;
  auto* spec = app.add_subcommand("spectrum", "Control-qubit spectrum vs flux");
  add_common(spec, common);
  add_flux_range(spec, r_spec);

  auto* zz = app.add_subcommand("zz-sweep", "Static ZZ vs flux");
  add_common(zz, common);
  add_flux_range(zz, r_zz);

  std::vector<double> cr_f{0.49, 0.495, 0.5, 0.505};
  double om_max = 300.0, om_step = 5.0;
  auto* cr = app.add_subcommand("cr-rate", "Echoed CR rate and Pauli coefficients vs amplitude");
  add_common(cr, common);
  cr->add_option("--flux", cr_f, "Flux points")->delimiter(',')->capture_default_str();
  cr->add_option("--omega-max", om_max, "Largest amplitude (MHz)")->capture_default_str();
  cr->add_option("--omega-step", om_step, "Amplitude step (MHz)")->capture_default_str();

  std::vector<double> ge_tg{200, 300, 440, 560};
  bool no_zz = false, no_xt = false;
  auto* ge = app.add_subcommand("gate-error", "Gate error vs flux with breakdown");
  add_common(ge, common);
  add_flux_range(ge, r_gate);
  ge->add_option("--tg", ge_tg, "Gate lengths (ns)")->delimiter(',')->capture_default_str();
  ge->add_flag("--no-zz", no_zz, "Force zeta = 0");
  ge->add_flag("--no-crosstalk", no_xt, "Force R = 0");

  std::vector<std::string> scen = bundled_card_names();
  double tg_lo = 160, tg_hi = 600, tg_step = 20, pr_f = 0.5;
  auto* pr = app.add_subcommand("predict", "Gate error vs gate length per scenario");
  add_common(pr, common);
  pr->add_option("--scenario", scen, "Card names or paths")->delimiter(',')->capture_default_str();
  pr->add_option("--tg-min", tg_lo, "Shortest gate (ns)")->capture_default_str();
  pr->add_option("--tg-max", tg_hi, "Longest gate (ns)")->capture_default_str();
  pr->add_option("--tg-step", tg_step, "Gate-length step (ns)")->capture_default_str();
  pr->add_option("--flux", pr_f, "Flux bias")->capture_default_str();

  int qubits = 2, seeds = 30, shots = 0;
  double rb_tg = 200, rb_f = 0.5;
  bool per_clifford = false;
  std::vector<int> lengths{1, 5, 10, 20, 40, 60, 80, 100};
  auto* rb = app.add_subcommand("rb", "Randomized benchmarking on the channel model");
  add_common(rb, common);
  rb->add_option("--qubits", qubits, "1 or 2")->capture_default_str();
  rb->add_option("--tg", rb_tg, "Gate length (ns)")->capture_default_str();
  rb->add_option("--flux", rb_f, "Flux bias")->capture_default_str();
  rb->add_option("--lengths", lengths, "Sequence lengths")->delimiter(',')->capture_default_str();
  rb->add_option("--seeds", seeds, "Random sequences per length")->capture_default_str();
  rb->add_option("--shots", shots, "Shots per sequence (0: exact)")->capture_default_str();
  rb->add_flag("--per-clifford", per_clifford, "Attach noise once per Clifford");

  std::string write;
  bool check = false;
  auto* cd = app.add_subcommand("card", "Print, check or write a device card");
  add_common(cd, common);
  cd->add_option("--write", write, "Write the canonical card to this path");
  cd->add_flag("--check", check, "Verify the card round-trips");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*spec) return cmd_spectrum(common, r_spec);
    if (*zz) return cmd_zz(common, r_zz);
    if (*cr) return cmd_cr_rate(common, cr_f, om_max, om_step);
    if (*ge) return cmd_gate_error(common, ge_tg, r_gate, no_zz, no_xt);
    if (*pr) return cmd_predict(common, scen, tg_lo, tg_hi, tg_step, pr_f);
    if (*rb) return cmd_rb(common, qubits, rb_tg, rb_f, lengths, seeds, shots, per_clifford);
    if (*cd) return cmd_card(common, write, check);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_validation_error(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
