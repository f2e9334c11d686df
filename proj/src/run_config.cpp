// Copyright 2026 The mitm-optomech Authors
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

#include "mitm/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mitm/constants.hpp"
#include "mitm/errors.hpp"

namespace mitm {

namespace {

// clang-format off
constexpr KeySpec kKeys[] = {
  {"lambda.gamma_hz", "", "excited-state decay γ/2π in Hz; needed for any *_hz rate"},
  {"lambda.gamma1_gamma", "1", "|3> -> |1> decay in units of γ"},
  {"lambda.gamma1_hz", "", "|3> -> |1> decay, Hz"},
  {"lambda.gamma2_gamma", "1", "|3> -> |2> decay in units of γ"},
  {"lambda.gamma2_hz", "", "|3> -> |2> decay, Hz"},
  {"lambda.pump_r_gamma", "0.1", "incoherent pump |1> -> |3>, units of γ"},
  {"lambda.pump_r_hz", "", "incoherent pump, Hz"},
  {"lambda.omega_mu_gamma", "1", "microwave Rabi frequency, units of γ"},
  {"lambda.omega_mu_hz", "", "microwave Rabi frequency, Hz"},
  {"lambda.omega_p_gamma", "0", "probe Rabi frequency, units of γ (0: 1e-4 γ for the oracle)"},
  {"lambda.omega_p_hz", "", "probe Rabi frequency, Hz"},
  {"lambda.delta_p_gamma", "0.3", "probe detuning, units of γ"},
  {"lambda.delta_p_hz", "", "probe detuning, Hz"},
  {"lambda.delta_mu_gamma", "0.4", "microwave detuning, units of γ"},
  {"lambda.delta_mu_hz", "", "microwave detuning, Hz"},
  {"dopant.s0", "1.8072289156626506", "dimensionless density parameter s0 (default 3/1.66)"},
  {"dopant.number_density_per_m3", "", "dopant number density; replaces dopant.s0"},
  {"dopant.wavelength_m", "1.55e-06", "transition wavelength"},
  {"dopant.host_eps_real", "4", "host permittivity seen by the dopants"},
  {"dopant.dipole_cm", "", "transition dipole moment; gives γ when lambda.gamma_hz is absent"},
  {"cavity.wavelength_m", "1.55e-06", "cavity mode wavelength"},
  {"cavity.length_m", "", "cavity length; replaces cavity.length_wavelengths"},
  {"cavity.length_wavelengths", "100", "cavity length in wavelengths"},
  {"cavity.quality_factor", "", "Q_c (default 2e7 unless cavity.finesse is given)"},
  {"cavity.finesse", "", "finesse; Q_c = F L / λ when no quality factor is given"},
  {"cavity.intrinsic_fraction", "0.5", "κ_i / κ"},
  {"membrane.thickness_m", "1e-07", "membrane thickness"},
  {"membrane.sin2_kz0", "", "sin²(kz0) placement (default 0.5)"},
  {"membrane.position_m", "", "placement z0; replaces membrane.sin2_kz0"},
  {"membrane.diameter_m", "1e-05", "membrane diameter"},
  {"membrane.mass_density_kg_m3", "2700", "membrane mass density"},
  {"membrane.tensile_stress_pa", "9e+08", "tensile stress"},
  {"membrane.host_eps_real", "4", "host permittivity, real part"},
  {"membrane.host_eps_imag", "0", "host permittivity, imaginary part"},
  {"membrane.mech_quality", "4e+06", "mechanical quality factor Q_m"},
  {"membrane.overlap_factor", "1", "optomechanical overlap factor"},
  {"membrane.mech_frequency_hz", "", "Ω_m/2π; bypasses the drum-mode model"},
  {"env.temperature_k", "10", "bath temperature"},
  {"model.engine", "oracle", "closed | oracle"},
  {"model.chi_formula", "printed", "printed | flipped_coherence (closed engine only)"},
  {"model.cdr_mode", "baseline", "baseline | physical"},
  {"model.baseline_factor", "0.001", "g_om,h / (κ' (ε_h - 1)) in baseline mode"},
  {"model.kappa_ratio_override", "", "κ/κ'; replaces κ' = 2κ_i + Δκ"},
  {"model.dephasing_2_gamma", "0", "pure dephasing of |2>, units of γ (oracle only)"},
  {"model.dephasing_2_hz", "", "pure dephasing of |2>, Hz"},
  {"model.chi_ndd_re", "", "pinned χ_NDD real part for coupling reports"},
  {"model.chi_ndd_im", "", "pinned χ_NDD imaginary part"},
  {"sweep.axis1.parameter", "", "delta_p | omega_mu | pump_r | s0 | number_density | delta_mu"},
  {"sweep.axis1.start", "", "axis start (γ units for rates)"},
  {"sweep.axis1.stop", "", "axis stop"},
  {"sweep.axis1.points", "101", "axis points"},
  {"sweep.axis1.scale", "linear", "linear | log"},
  {"sweep.axis2.parameter", "", "second axis parameter"},
  {"sweep.axis2.start", "", "axis start"},
  {"sweep.axis2.stop", "", "axis stop"},
  {"sweep.axis2.points", "101", "axis points"},
  {"sweep.axis2.scale", "linear", "linear | log"},
  {"optimize.bounds.delta_p_gamma", "", "lo, hi"},
  {"optimize.bounds.omega_mu_gamma", "", "lo, hi"},
  {"optimize.bounds.pump_r_gamma", "", "lo, hi"},
  {"optimize.bounds.delta_mu_gamma", "", "lo, hi"},
  {"optimize.bounds.s0", "", "lo, hi"},
  {"optimize.grid_points", "64", "coarse grid points per bounded parameter"},
  {"optimize.rounds", "3", "coordinate-ascent rounds"},
  {"optimize.pole_margin", "0.001", "minimum |1 - χp/3| for a candidate"},
};
// clang-format on

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : kKeys)
    if (k.key == key) return &k;
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> try_number(std::string_view s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

double parse_number(const std::string& key, const std::string& value) {
  const auto v = try_number(value);
  if (!v || !std::isfinite(*v))
    throw ConfigError(fmt::format("key '{}': '{}' is not a finite number", key, value));
  return *v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v < 0.0 || v != std::floor(v) || v > 1e12)
    throw ConfigError(fmt::format("key '{}': '{}' is not a non-negative integer", key, value));
  return static_cast<std::size_t>(v);
}

std::pair<double, double> parse_pair(const std::string& key, const std::string& value) {
  const auto comma = value.find(',');
  if (comma == std::string::npos)
    throw ConfigError(fmt::format("key '{}': expected 'lo, hi', got '{}'", key, value));
  return {parse_number(key, trim(value.substr(0, comma))),
          parse_number(key, trim(value.substr(comma + 1)))};
}

std::string format_value(const std::string& value) {
  if (const auto v = try_number(value)) return fmt::format("{:.17g}", *v);
  const auto comma = value.find(',');
  if (comma != std::string::npos) {
    const auto a = try_number(trim(value.substr(0, comma)));
    const auto b = try_number(trim(value.substr(comma + 1)));
    if (a && b) return fmt::format("{:.17g}, {:.17g}", *a, *b);
  }
  return value;
}

class Reader {
 public:
  explicit Reader(const RunConfig& config) : config_(config) {}

  std::optional<std::string> raw(const std::string& key) const { return config_.get(key); }

  std::string text(const std::string& key) const {
    if (auto v = config_.get(key)) return *v;
    const KeySpec* spec = find_key(key);
    return spec ? std::string(spec->default_value) : std::string();
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (auto v = config_.get(key)) return parse_number(key, *v);
    return std::nullopt;
  }

  double number(const std::string& key) const {
    const std::string v = text(key);
    if (v.empty()) throw ConfigError(fmt::format("missing required key '{}'", key));
    return parse_number(key, v);
  }

  void exclusive(const std::string& a, const std::string& b) const {
    if (config_.has(a) && config_.has(b))
      throw ConfigError(fmt::format("keys '{}' and '{}' are mutually exclusive", a, b));
  }

  /// Rate in units of γ from `<base>_gamma` or `<base>_hz`.
  double rate(const std::string& base, std::optional<double> gamma_hz) const {
    const std::string g = base + "_gamma";
    const std::string h = base + "_hz";
    exclusive(g, h);
    if (auto hz = optional_number(h)) {
      if (!gamma_hz)
        throw ConfigError(fmt::format("key '{}' needs lambda.gamma_hz (or dopant.dipole_cm)", h));
      return *hz / *gamma_hz;
    }
    return number(g);
  }

 private:
  const RunConfig& config_;
};

}  // namespace

std::span<const KeySpec> known_keys() { return kKeys; }

RunConfig RunConfig::parse(std::string_view text, std::string_view origin) {
  RunConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (value.empty())
      throw ConfigError(fmt::format("{}:{}: key '{}' has no value", origin, line_no, key));
    try {
      config.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", origin, line_no, e.what()));
    }
  }
  return config;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!find_key(key)) throw ConfigError(fmt::format("unknown config key '{}'", key));
  entries_[key] = value;
}

void RunConfig::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(fmt::format("override '{}' is not of the form key=value", assignment));
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const auto& [key, value] : entries_) out += fmt::format("{} = {}\n", key, format_value(value));
  return out;
}

ResolvedConfig resolve(const RunConfig& config) {
  const Reader rd(config);
  ResolvedConfig rc;

  try {
    // γ in absolute units, when known.
    std::optional<double> gamma_hz = rd.optional_number("lambda.gamma_hz");
    if (gamma_hz && !(*gamma_hz > 0.0)) throw ConfigError("lambda.gamma_hz must be > 0");
    const auto dipole = rd.optional_number("dopant.dipole_cm");
    const double dopant_wavelength = rd.number("dopant.wavelength_m");
    const double dopant_eps = rd.number("dopant.host_eps_real");
    if (!gamma_hz && dipole) {
      const double omega_a = 2.0 * constants::pi * constants::speed_of_light / dopant_wavelength;
      gamma_hz = gamma_from_dipole(*dipole, omega_a, dopant_eps) / (2.0 * constants::pi);
    }
    if (gamma_hz) rc.gamma = 2.0 * constants::pi * *gamma_hz;

    rc.drive.gamma1 = rd.rate("lambda.gamma1", gamma_hz);
    rc.drive.gamma2 = rd.rate("lambda.gamma2", gamma_hz);
    rc.drive.pump_r = rd.rate("lambda.pump_r", gamma_hz);
    rc.drive.omega_mu = rd.rate("lambda.omega_mu", gamma_hz);
    rc.drive.omega_p = rd.rate("lambda.omega_p", gamma_hz);
    rc.drive.delta_p = rd.rate("lambda.delta_p", gamma_hz);
    rc.drive.delta_mu = rd.rate("lambda.delta_mu", gamma_hz);
    rc.drive.validate();
    rc.dephasing_2 = rd.rate("model.dephasing_2", gamma_hz);

    rd.exclusive("dopant.s0", "dopant.number_density_per_m3");
    if (auto density = rd.optional_number("dopant.number_density_per_m3")) {
      DopantSpec dopant;
      dopant.number_density = *density;
      dopant.transition_wavelength = dopant_wavelength;
      dopant.host_eps_real = dopant_eps;
      dopant.dipole_moment = dipole;
      dopant.validate();
      rc.dopant = dopant;
      rc.s0 = s0_from_density(dopant);
    } else {
      rc.s0 = rd.number("dopant.s0");
    }

    rc.cavity.wavelength = rd.number("cavity.wavelength_m");
    rd.exclusive("cavity.length_m", "cavity.length_wavelengths");
    rc.cavity.length = rd.optional_number("cavity.length_m").value_or(
        rd.number("cavity.length_wavelengths") * rc.cavity.wavelength);
    rc.cavity.finesse = rd.optional_number("cavity.finesse");
    if (auto q = rd.optional_number("cavity.quality_factor")) {
      rc.cavity.quality_factor = *q;
    } else if (rc.cavity.finesse) {
      rc.cavity.quality_factor =
          quality_from_finesse(*rc.cavity.finesse, rc.cavity.length, rc.cavity.wavelength);
    } else {
      rc.cavity.quality_factor = 2e7;
    }
    rc.cavity.intrinsic_fraction = rd.number("cavity.intrinsic_fraction");
    rc.cavity.validate();

    rc.membrane.thickness = rd.number("membrane.thickness_m");
    rd.exclusive("membrane.sin2_kz0", "membrane.position_m");
    if (auto z0 = rd.optional_number("membrane.position_m"))
      rc.membrane.placement = Placement::at_position(*z0);
    else
      rc.membrane.placement =
          Placement::from_sin2(rd.optional_number("membrane.sin2_kz0").value_or(0.5));
    rc.membrane.diameter = rd.number("membrane.diameter_m");
    rc.membrane.mass_density = rd.number("membrane.mass_density_kg_m3");
    rc.membrane.tensile_stress = rd.number("membrane.tensile_stress_pa");
    rc.membrane.host_eps = {rd.number("membrane.host_eps_real"), rd.number("membrane.host_eps_imag")};
    rc.membrane.mech_quality = rd.number("membrane.mech_quality");
    rc.membrane.overlap_factor = rd.number("membrane.overlap_factor");
    rc.membrane.validate();
    if (auto f = rd.optional_number("membrane.mech_frequency_hz")) {
      if (!(*f > 0.0)) throw ConfigError("membrane.mech_frequency_hz must be > 0");
      rc.mech_frequency = 2.0 * constants::pi * *f;
    }
    rc.temperature = rd.number("env.temperature_k");
    if (rc.temperature < 0.0) throw ConfigError("env.temperature_k must be >= 0");

    rc.engine = engine_from_string(rd.text("model.engine"));
    rc.formula = chi_formula_from_string(rd.text("model.chi_formula"));
    rc.cdr_mode = cdr_mode_from_string(rd.text("model.cdr_mode"));
    rc.baseline_factor = rd.number("model.baseline_factor");
    rc.kappa_ratio_override = rd.optional_number("model.kappa_ratio_override");
    if (rc.kappa_ratio_override && !(*rc.kappa_ratio_override > 0.0))
      throw ConfigError("model.kappa_ratio_override must be > 0");
    if (auto re = rd.optional_number("model.chi_ndd_re")) {
      rc.pinned_chi_ndd = cplx(*re, rd.optional_number("model.chi_ndd_im").value_or(0.0));
    } else if (config.has("model.chi_ndd_im")) {
      throw ConfigError("model.chi_ndd_im needs model.chi_ndd_re");
    }

    for (const char* axis : {"sweep.axis1", "sweep.axis2"}) {
      const std::string prefix = axis;
      const bool present = std::any_of(config.entries().begin(), config.entries().end(),
                                       [&](const auto& kv) { return kv.first.rfind(prefix, 0) == 0; });
      if (!present) continue;
      if (!config.has(prefix + ".parameter"))
        throw ConfigError(fmt::format("'{}.parameter' is required", prefix));
      SweepAxis a;
      a.parameter = sweep_parameter_from_string(rd.text(prefix + ".parameter"));
      a.start = rd.number(prefix + ".start");
      a.stop = rd.number(prefix + ".stop");
      a.points = parse_count(prefix + ".points", rd.text(prefix + ".points"));
      a.scale = axis_scale_from_string(rd.text(prefix + ".scale"));
      a.validate();
      rc.axes.push_back(a);
    }
    if (config.has("sweep.axis2.parameter") && !config.has("sweep.axis1.parameter"))
      throw ConfigError("sweep.axis2 given without sweep.axis1");

    const std::pair<const char*, SweepParameter> bound_keys[] = {
        {"optimize.bounds.delta_p_gamma", SweepParameter::DeltaP},
        {"optimize.bounds.omega_mu_gamma", SweepParameter::OmegaMu},
        {"optimize.bounds.pump_r_gamma", SweepParameter::PumpR},
        {"optimize.bounds.delta_mu_gamma", SweepParameter::DeltaMu},
        {"optimize.bounds.s0", SweepParameter::S0},
    };
    for (const auto& [key, parameter] : bound_keys) {
      if (auto v = rd.raw(key)) {
        const auto [lo, hi] = parse_pair(key, *v);
        if (lo > hi) throw ConfigError(fmt::format("key '{}': lo exceeds hi", key));
        rc.bounds.push_back({parameter, lo, hi});
      }
    }
    rc.optimize.grid_points = parse_count("optimize.grid_points", rd.text("optimize.grid_points"));
    rc.optimize.rounds = static_cast<int>(parse_count("optimize.rounds", rd.text("optimize.rounds")));
    rc.optimize.pole_margin = rd.number("optimize.pole_margin");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    // Validation failures inside the domain types are configuration errors here.
    throw ConfigError(e.what());
  }
  return rc;
}

MechanicalMode mechanical_mode(const ResolvedConfig& config) {
  const double mass = membrane_mass(config.membrane);
  const double omega = config.mech_frequency.value_or(mechanical_frequency(config.membrane));
  return MechanicalMode::make(mass, omega, config.membrane.mech_quality);
}

PhysicalSetup physical_setup(const ResolvedConfig& config) {
  PhysicalSetup setup;
  setup.cavity = config.cavity;
  setup.membrane = config.membrane;
  setup.mode = mechanical_mode(config);
  setup.temperature = config.temperature;
  setup.kappa_ratio_override = config.kappa_ratio_override;
  return setup;
}

SweepConfig sweep_config(const ResolvedConfig& config) {
  SweepConfig sc;
  sc.axes = config.axes;
  sc.drive = config.drive;
  sc.s0 = config.s0;
  sc.dopant = config.dopant;
  sc.engine = config.engine;
  sc.formula = config.formula;
  sc.dephasing_2 = config.dephasing_2;
  sc.model.mode = config.cdr_mode;
  sc.model.baseline_factor = config.baseline_factor;
  if (config.cdr_mode == CdrMode::Physical) sc.model.physical = physical_setup(config);
  return sc;
}

}  // namespace mitm
