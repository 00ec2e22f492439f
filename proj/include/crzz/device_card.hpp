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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "crzz/coupled_system.hpp"
#include "crzz/device.hpp"

namespace crzz {

using Json = nlohmann::json;

/// Device description as stored on disk. Couplings come from exactly one of
/// a capacitance network, a direct coupling set or a uniform J.
struct DeviceCard {
  DeviceModel model;
  std::optional<CapacitanceNetwork> network;
  ModeFrequencies modes;
};

namespace detail {

/// v * scale rounded to 12 significant digits, so unit conversions print cleanly.
inline double scaled(double v, double scale) {
  const double x = v * scale;
  if (x == 0.0 || !std::isfinite(x)) return x;
  char b[32];
  std::snprintf(b, sizeof b, "%.12g", x);
  return std::strtod(b, nullptr);
}

class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(ErrorKind::InvalidInput, path_ + ": expected an object");
  }

  bool has(const std::string& k) const { return j_.contains(k); }

  double num(const std::string& k, double def) {
    seen_.insert(k);
    return j_.contains(k) ? number(k) : def;
  }
  double num(const std::string& k) {
    require(k);
    return num(k, 0.0);
  }
  std::optional<double> opt_num(const std::string& k) {
    seen_.insert(k);
    if (!j_.contains(k) || j_.at(k).is_null()) return std::nullopt;
    return number(k);
  }
  int integer(const std::string& k, int def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    const Json& v = j_.at(k);
    if (!v.is_number_integer()) fail(ErrorKind::InvalidInput, where(k) + ": expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& k, bool def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    const Json& v = j_.at(k);
    if (!v.is_boolean()) fail(ErrorKind::InvalidInput, where(k) + ": expected true/false");
    return v.get<bool>();
  }
  std::string str(const std::string& k, const std::string& def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    const Json& v = j_.at(k);
    if (!v.is_string()) fail(ErrorKind::InvalidInput, where(k) + ": expected a string");
    return v.get<std::string>();
  }
  ObjectReader obj(const std::string& k) {
    require(k);
    seen_.insert(k);
    return ObjectReader(j_.at(k), where(k));
  }
  const Json& raw(const std::string& k) {
    require(k);
    seen_.insert(k);
    return j_.at(k);
  }
  std::string where(const std::string& k) const { return path_ + "." + k; }

  /// Rejects keys that were never read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        fail(ErrorKind::InvalidInput, path_ + ": unknown key '" + it.key() + "'");
      }
    }
  }

 private:
  void require(const std::string& k) const {
    if (!j_.contains(k)) fail(ErrorKind::InvalidInput, where(k) + ": missing");
  }
  double number(const std::string& k) const {
    const Json& v = j_.at(k);
    if (!v.is_number()) fail(ErrorKind::InvalidInput, where(k) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, where(k) + ": not finite");
    return x;
  }

  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline Json ladder_json(const MeasuredLadder& l) {
  return {{"omega_GHz", l.omega}, {"delta_MHz", scaled(l.delta, 1e3)}};
}

inline MeasuredLadder read_ladder(ObjectReader r) {
  MeasuredLadder l{r.num("omega_GHz"), r.num("delta_MHz") * 1e-3};
  r.finish();
  return l;
}

}  // namespace detail

inline Json to_json(const DeviceCard& c) {
  const DeviceModel& m = c.model;
  Json j;
  j["label"] = m.label;
  j["levels"] = m.levels;

  Json cs = {{"E_J_GHz", m.csfq.E_J},
             {"E_C_GHz", m.csfq.E_C},
             {"alpha", m.csfq.alpha},
             {"basis_size", m.csfq.basis_size},
             {"fit_zero_zz", m.csfq_fit_zero_zz}};
  if (m.csfq_fit_bare_GHz) cs["fit_bare_omega_GHz"] = *m.csfq_fit_bare_GHz;
  if (m.csfq_measured) cs["measured"] = detail::ladder_json(*m.csfq_measured);
  j["csfq"] = cs;

  Json tr = {{"E_J_GHz", m.transmon.E_J},
             {"E_C_GHz", m.transmon.E_C},
             {"charge_cutoff", m.transmon.charge_cutoff}};
  if (m.transmon_fit_bare_GHz) tr["fit_bare_omega_GHz"] = *m.transmon_fit_bare_GHz;
  if (m.transmon_measured) tr["measured"] = detail::ladder_json(*m.transmon_measured);
  j["transmon"] = tr;

  Json cp;
  if (m.J_uniform) {
    cp["J_uniform_MHz"] = detail::scaled(*m.J_uniform, 1e3);
  } else if (c.network) {
    const CapacitanceNetwork& n = *c.network;
    cp["network"] = {{"C_rT_fF", n.C_rT},       {"C_ab_fF", n.C_ab},     {"C_b0_fF", n.C_b0},
                     {"C_shT_fF", n.C_shT},     {"C_T_fF", n.C_T},       {"C_c0_fF", n.C_c0},
                     {"C_cd_fF", n.C_cd},       {"C_R_fF", n.C_R},       {"C_rCSFQ_fF", n.C_rCSFQ},
                     {"C_gh_fF", n.C_gh},       {"C_g0_fF", n.C_g0},     {"C_shCSFQ_fF", n.C_shCSFQ},
                     {"C_1_fF", n.C_1},         {"C_e0_fF", n.C_e0},     {"C_de_fF", n.C_de},
                     {"C_3_fF", n.C_3},         {"L_R_nH", n.L_R},       {"L_rT_nH", n.L_rT},
                     {"L_rCSFQ_nH", n.L_rCSFQ}};
    cp["mode_frequencies"] = {{"omega_m_GHz", c.modes.omega_m}, {"omega_T_GHz", c.modes.omega_T},
                              {"omega_r_GHz", c.modes.omega_r}, {"omega_h_GHz", c.modes.omega_h},
                              {"omega_a_GHz", c.modes.omega_a}};
  } else {
    const CouplingSet& g = m.couplings;
    cp["direct"] = {{"g_rm_MHz", detail::scaled(g.g_rm, 1e3)}, {"g_rT_MHz", detail::scaled(g.g_rT, 1e3)},
                    {"g_mT_MHz", detail::scaled(g.g_mT, 1e3)}, {"g_hm_MHz", detail::scaled(g.g_hm, 1e3)},
                    {"g_aT_MHz", detail::scaled(g.g_aT, 1e3)}, {"omega_r_GHz", g.omega_r}};
  }
  Json ov = Json::array();
  for (const JOverride& o : m.J_overrides) ov.push_back({{"n1", o.n1}, {"n2", o.n2}, {"J_MHz", detail::scaled(o.J, 1e3)}});
  cp["J_overrides"] = ov;
  j["coupling"] = cp;

  j["coherence"] = {{"T1_q1_us", m.coherence.T1_q1},
                    {"T2_q1_us", m.coherence.T2_q1},
                    {"T1_q2_us", m.coherence.T1_q2},
                    {"T2_q2_us", m.coherence.T2_q2},
                    {"flux_dependent_T2_q1", m.flux_dependent_T2_q1}};
  j["dephasing"] = {{"A_phi_sqrt_uPhi0", m.dephasing.A_phi_sqrt},
                    {"slope_reduction", m.dephasing.slope_reduction},
                    {"offset_per_us", m.dephasing.offset},
                    {"mode", m.dephasing_mode == DephasingMode::Raw ? "raw" : "rb-effective"}};
  j["crosstalk"] = {{"enabled", m.crosstalk.enabled},
                    {"a0", m.crosstalk.a0},
                    {"slope", m.crosstalk.slope},
                    {"exponent_flux", m.crosstalk.exponent_flux},
                    {"exponent_time", m.crosstalk.exponent_time}};
  j["drive"] = {{"phi0_rad", m.phi0},
                {"phi1_rad", m.phi1},
                {"ladder", m.ladder == DriveLadder::Unit ? "unit" : "harmonic"},
                {"rise_fall_ns", m.rise_fall},
                {"pi_pulse_ns", m.pi_pulse}};
  Json sc = Json::object();
  if (m.zeta0_override) sc["zeta0_kHz"] = detail::scaled(*m.zeta0_override, 1e6);
  if (m.eta_override) sc["eta_per_MHz"] = *m.eta_override;
  j["scenario"] = sc;
  return j;
}

/// Structural and physical checks shared by parsing and programmatic cards.
inline void validate(const DeviceCard& c) {
  const DeviceModel& m = c.model;
  if (m.levels < 3 || m.levels > 8) fail(ErrorKind::InvalidInput, "levels must be in [3, 8]");
  if (!m.csfq_measured) validate(m.csfq);
  if (!(m.csfq.E_C > 0.0) || !(m.csfq.E_J > 0.0)) {
    fail(ErrorKind::UnphysicalCard, "CSFQ energies must be positive");
  }
  if (!(m.transmon.E_C > 0.0) || !(m.transmon.E_J > 0.0)) {
    fail(ErrorKind::UnphysicalCard, "transmon energies must be positive");
  }
  if (m.transmon.charge_cutoff < 10) fail(ErrorKind::InvalidInput, "charge_cutoff must be >= 10");
  for (const auto* l : {&m.csfq_measured, &m.transmon_measured}) {
    if (*l && !((*l)->omega > 0.0)) fail(ErrorKind::UnphysicalCard, "measured frequency must be positive");
  }
  m.coherence.validate();
  if (!(m.dephasing.A_phi_sqrt >= 0.0) || !(m.dephasing.slope_reduction > 0.0) ||
      !(m.dephasing.offset >= 0.0)) {
    fail(ErrorKind::UnphysicalCard, "dephasing parameters out of range");
  }
  if (!(m.rise_fall >= 0.0) || !(m.pi_pulse >= 0.0)) {
    fail(ErrorKind::InvalidInput, "pulse durations must be >= 0");
  }
  if (c.network) {
    const CapacitanceNetwork& n = *c.network;
    for (double v : {n.C_rT, n.C_ab, n.C_b0, n.C_shT, n.C_T, n.C_c0, n.C_cd, n.C_R, n.C_rCSFQ,
                     n.C_gh, n.C_g0, n.C_shCSFQ, n.C_1, n.C_e0, n.C_de, n.C_3}) {
      if (!(v >= 0.0)) fail(ErrorKind::UnphysicalCard, "capacitances must be >= 0");
    }
  }
}

/// Parses and validates a card. Unknown keys anywhere are rejected.
inline DeviceCard card_from_json(const Json& j) {
  DeviceCard c;
  DeviceModel& m = c.model;
  detail::ObjectReader root(j, "card");
  m.label = root.str("label", "device");
  m.levels = root.integer("levels", 5);
  m.csfq.n_levels = m.levels;
  m.transmon.n_levels = m.levels;

  {
    auto r = root.obj("csfq");
    m.csfq.E_J = r.num("E_J_GHz", m.csfq.E_J);
    m.csfq.E_C = r.num("E_C_GHz", m.csfq.E_C);
    m.csfq.alpha = r.num("alpha", m.csfq.alpha);
    m.csfq.basis_size = r.integer("basis_size", m.csfq.basis_size);
    m.csfq_fit_zero_zz = r.boolean("fit_zero_zz", false);
    m.csfq_fit_bare_GHz = r.opt_num("fit_bare_omega_GHz");
    if (r.has("measured")) m.csfq_measured = detail::read_ladder(r.obj("measured"));
    r.finish();
  }
  {
    auto r = root.obj("transmon");
    m.transmon.E_J = r.num("E_J_GHz", m.transmon.E_J);
    m.transmon.E_C = r.num("E_C_GHz", m.transmon.E_C);
    m.transmon.charge_cutoff = r.integer("charge_cutoff", m.transmon.charge_cutoff);
    m.transmon_fit_bare_GHz = r.opt_num("fit_bare_omega_GHz");
    if (r.has("measured")) m.transmon_measured = detail::read_ladder(r.obj("measured"));
    r.finish();
  }
  {
    auto r = root.obj("coupling");
    const int sources = int(r.has("J_uniform_MHz")) + int(r.has("network")) + int(r.has("direct"));
    if (sources != 1) {
      fail(ErrorKind::InvalidInput,
           "card.coupling: exactly one of J_uniform_MHz, network, direct is required");
    }
    if (r.has("J_uniform_MHz")) {
      m.J_uniform = r.num("J_uniform_MHz") * 1e-3;
    } else if (r.has("network")) {
      CapacitanceNetwork n;
      auto q = r.obj("network");
      n.C_rT = q.num("C_rT_fF", n.C_rT);
      n.C_ab = q.num("C_ab_fF", n.C_ab);
      n.C_b0 = q.num("C_b0_fF", n.C_b0);
      n.C_shT = q.num("C_shT_fF", n.C_shT);
      n.C_T = q.num("C_T_fF", n.C_T);
      n.C_c0 = q.num("C_c0_fF", n.C_c0);
      n.C_cd = q.num("C_cd_fF", n.C_cd);
      n.C_R = q.num("C_R_fF", n.C_R);
      n.C_rCSFQ = q.num("C_rCSFQ_fF", n.C_rCSFQ);
      n.C_gh = q.num("C_gh_fF", n.C_gh);
      n.C_g0 = q.num("C_g0_fF", n.C_g0);
      n.C_shCSFQ = q.num("C_shCSFQ_fF", n.C_shCSFQ);
      n.C_1 = q.num("C_1_fF", n.C_1);
      n.C_e0 = q.num("C_e0_fF", n.C_e0);
      n.C_de = q.num("C_de_fF", n.C_de);
      n.C_3 = q.num("C_3_fF", n.C_3);
      n.L_R = q.num("L_R_nH", n.L_R);
      n.L_rT = q.num("L_rT_nH", n.L_rT);
      n.L_rCSFQ = q.num("L_rCSFQ_nH", n.L_rCSFQ);
      q.finish();
      if (r.has("mode_frequencies")) {
        auto w = r.obj("mode_frequencies");
        c.modes.omega_m = w.num("omega_m_GHz", c.modes.omega_m);
        c.modes.omega_T = w.num("omega_T_GHz", c.modes.omega_T);
        c.modes.omega_r = w.num("omega_r_GHz", c.modes.omega_r);
        c.modes.omega_h = w.num("omega_h_GHz", c.modes.omega_h);
        c.modes.omega_a = w.num("omega_a_GHz", c.modes.omega_a);
        w.finish();
      }
      c.network = n;
    } else {
      auto q = r.obj("direct");
      m.couplings.g_rm = q.num("g_rm_MHz") * 1e-3;
      m.couplings.g_rT = q.num("g_rT_MHz") * 1e-3;
      m.couplings.g_mT = q.num("g_mT_MHz") * 1e-3;
      m.couplings.g_hm = q.num("g_hm_MHz", 0.0) * 1e-3;
      m.couplings.g_aT = q.num("g_aT_MHz", 0.0) * 1e-3;
      m.couplings.omega_r = q.num("omega_r_GHz");
      q.finish();
    }
    if (r.has("J_overrides")) {
      const Json& arr = r.raw("J_overrides");
      if (!arr.is_array()) fail(ErrorKind::InvalidInput, "card.coupling.J_overrides: expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        detail::ObjectReader q(arr[i], "card.coupling.J_overrides[" + std::to_string(i) + "]");
        JOverride o;
        o.n1 = q.integer("n1", -1);
        o.n2 = q.integer("n2", -1);
        o.J = q.num("J_MHz") * 1e-3;
        q.finish();
        if (o.n1 < 0 || o.n2 < 0 || o.n1 >= m.levels - 1 || o.n2 >= m.levels - 1) {
          fail(ErrorKind::InvalidInput, "J override index out of range");
        }
        m.J_overrides.push_back(o);
      }
    }
    r.finish();
  }
  if (root.has("coherence")) {
    auto r = root.obj("coherence");
    m.coherence.T1_q1 = r.num("T1_q1_us", m.coherence.T1_q1);
    m.coherence.T2_q1 = r.num("T2_q1_us", m.coherence.T2_q1);
    m.coherence.T1_q2 = r.num("T1_q2_us", m.coherence.T1_q2);
    m.coherence.T2_q2 = r.num("T2_q2_us", m.coherence.T2_q2);
    m.flux_dependent_T2_q1 = r.boolean("flux_dependent_T2_q1", m.flux_dependent_T2_q1);
    r.finish();
  }
  if (root.has("dephasing")) {
    auto r = root.obj("dephasing");
    m.dephasing.A_phi_sqrt = r.num("A_phi_sqrt_uPhi0", m.dephasing.A_phi_sqrt);
    m.dephasing.slope_reduction = r.num("slope_reduction", m.dephasing.slope_reduction);
    m.dephasing.offset = r.num("offset_per_us", m.dephasing.offset);
    const std::string mode = r.str("mode", "rb-effective");
    if (mode == "raw") {
      m.dephasing_mode = DephasingMode::Raw;
    } else if (mode == "rb-effective") {
      m.dephasing_mode = DephasingMode::RbEffective;
    } else {
      fail(ErrorKind::InvalidInput, "card.dephasing.mode: expected raw or rb-effective");
    }
    r.finish();
  }
  if (root.has("crosstalk")) {
    auto r = root.obj("crosstalk");
    m.crosstalk.enabled = r.boolean("enabled", m.crosstalk.enabled);
    m.crosstalk.a0 = r.num("a0", m.crosstalk.a0);
    m.crosstalk.slope = r.num("slope", m.crosstalk.slope);
    m.crosstalk.exponent_flux = r.num("exponent_flux", m.crosstalk.exponent_flux);
    m.crosstalk.exponent_time = r.num("exponent_time", m.crosstalk.exponent_time);
    r.finish();
  }
  if (root.has("drive")) {
    auto r = root.obj("drive");
    m.phi0 = r.num("phi0_rad", m.phi0);
    m.phi1 = r.num("phi1_rad", m.phi1);
    const std::string lad = r.str("ladder", "unit");
    if (lad == "unit") {
      m.ladder = DriveLadder::Unit;
    } else if (lad == "harmonic") {
      m.ladder = DriveLadder::Harmonic;
    } else {
      fail(ErrorKind::InvalidInput, "card.drive.ladder: expected unit or harmonic");
    }
    m.rise_fall = r.num("rise_fall_ns", m.rise_fall);
    m.pi_pulse = r.num("pi_pulse_ns", m.pi_pulse);
    r.finish();
  }
  if (root.has("scenario")) {
    auto r = root.obj("scenario");
    if (auto z = r.opt_num("zeta0_kHz")) m.zeta0_override = *z * 1e-6;
    m.eta_override = r.opt_num("eta_per_MHz");
    r.finish();
  }
  root.finish();

  if (c.network) m.couplings = couplings_from_network(*c.network, c.modes);
  validate(c);
  return c;
}

inline DeviceCard card_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("card is not valid JSON: ") + e.what());
  }
  return card_from_json(j);
}

inline DeviceCard load_card(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open card file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return card_from_string(ss.str());
}

inline std::string card_to_string(const DeviceCard& c) { return to_json(c).dump(2) + "\n"; }

/// FNV-1a 64 over the canonical compact serialization.
inline std::uint64_t card_hash(const DeviceCard& c) {
  const std::string s = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

/// Model ready for evaluation: E_J calibrations applied.
inline DeviceModel resolve(const DeviceCard& c) { return resolve(c.model); }

// Bundled cards.

inline DeviceCard paper_device_card() {
  DeviceCard c;
  DeviceModel& m = c.model;
  m.label = "paper-device";
  m.csfq_fit_bare_GHz = 5.0616;
  m.transmon_fit_bare_GHz = 5.2920;
  c.network = CapacitanceNetwork{};
  m.couplings = couplings_from_network(*c.network, c.modes);
  m.J_overrides = {{0, 0, 6.3e-3}, {0, 1, 4.9e-3}, {1, 0, 8.1e-3}};
  return c;
}

inline DeviceCard ideal_zz_free_card() {
  DeviceCard c = paper_device_card();
  DeviceModel& m = c.model;
  m.label = "ideal-zz-free";
  m.csfq_fit_zero_zz = true;
  m.coherence = {200.0, 200.0, 200.0, 200.0};
  m.flux_dependent_T2_q1 = false;
  m.crosstalk.enabled = false;
  m.zeta0_override = 0.0;
  m.eta_override = 8.0e-6;
  return c;
}

inline DeviceCard transmon_transmon_card() {
  DeviceCard c;
  DeviceModel& m = c.model;
  m.label = "transmon-transmon";
  m.csfq_measured = MeasuredLadder{5.114, -0.330};
  m.transmon_measured = MeasuredLadder{4.914, -0.330};
  m.J_uniform = 3.5e-3;
  m.coherence = {40.0, 54.0, 43.0, 67.0};
  m.flux_dependent_T2_q1 = false;
  m.crosstalk.enabled = false;
  m.zeta0_override = 0.0;
  m.eta_override = 1.6e-5;
  return c;
}

inline std::vector<std::string> bundled_card_names() {
  return {"paper-device", "ideal-zz-free", "transmon-transmon"};
}

inline std::optional<DeviceCard> bundled_card(const std::string& name) {
  if (name == "paper-device") return paper_device_card();
  if (name == "ideal-zz-free") return ideal_zz_free_card();
  if (name == "transmon-transmon") return transmon_transmon_card();
  return std::nullopt;
}

/// Bundled name or file path.
inline DeviceCard card_by_name_or_path(const std::string& s) {
  if (auto c = bundled_card(s)) return *c;
  return load_card(s);
}

}  // namespace crzz
