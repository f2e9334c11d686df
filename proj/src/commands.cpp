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

#include "mitm/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "mitm/constants.hpp"
#include "mitm/errors.hpp"
#include "mitm/lindblad_oracle.hpp"
#include "mitm/presets.hpp"
#include "mitm/serialize.hpp"

namespace mitm {

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  return file;
}

std::string complex_text(cplx c) { return fmt::format("{:.12g} {:+.12g}i", c.real(), c.imag()); }

}  // namespace

RunConfig load_run_config(const ConfigSource& source) {
  RunConfig config;
  if (source.preset) config = preset_config(*source.preset);
  if (source.config_file) {
    const RunConfig file = RunConfig::load(*source.config_file);
    for (const auto& [k, v] : file.entries()) config.set(k, v);
  }
  for (const auto& o : source.overrides) config.apply_override(o);
  return config;
}

int cmd_chi(const ChiOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ResolvedConfig rc = resolve(load_run_config(options.source));
    if (options.delta_p) rc.drive.delta_p = *options.delta_p;

    const std::string engine =
        options.engine.empty() ? std::string(to_string(rc.engine)) : options.engine;
    if (engine != "closed" && engine != "oracle" && engine != "both")
      throw ConfigError(fmt::format("unknown engine '{}'", engine));

    json j;
    j["s0"] = rc.s0;
    j["params_gamma_units"] = to_json(rc.drive);
    std::optional<cplx> closed;
    std::optional<cplx> oracle;
    if (engine == "closed" || engine == "both") {
      const Susceptibility chi = chi_p_closed(rc.drive, rc.s0, rc.formula);
      const Susceptibility ndd = ndd_transform(chi);
      closed = chi.value();
      j["closed"] = {{"formula", std::string(to_string(rc.formula))},
                     {"chi_p", to_json(chi.value())},
                     {"chi_ndd", to_json(ndd.value())}};
    }
    if (engine == "oracle" || engine == "both") {
      const NumericChi chi = chi_p_numeric(rc.drive, rc.s0, rc.dephasing_2);
      const Susceptibility ndd = ndd_transform(chi.chi);
      oracle = chi.chi.value();
      j["oracle"] = {{"chi_p", to_json(chi.chi.value())},
                     {"chi_ndd", to_json(ndd.value())},
                     {"linearity_deviation", chi.linearity_deviation},
                     {"nonlinear", chi.nonlinear}};
    }
    if (closed && oracle)
      j["relative_difference_chi_p"] = std::abs(*closed - *oracle) / std::abs(*oracle);
    j["units"] = {{"params_gamma_units", "gamma"}, {"chi", "dimensionless"}, {"s0", "dimensionless"}};

    if (!options.plain) {
      write_json(out, j);
      return kExitOk;
    }
    out << fmt::format("s0 = {:.12g}\n", rc.s0);
    for (const char* name : {"closed", "oracle"}) {
      if (!j.contains(name)) continue;
      const auto& e = j[name];
      out << fmt::format("{} chi_p   = {}\n", name,
                         complex_text({e["chi_p"]["re"].get<double>(), e["chi_p"]["im"].get<double>()}));
      out << fmt::format("{} chi_ndd = {}\n", name,
                         complex_text({e["chi_ndd"]["re"].get<double>(),
                                       e["chi_ndd"]["im"].get<double>()}));
    }
    if (j.contains("relative_difference_chi_p"))
      out << fmt::format("relative difference = {:.6g}\n", j["relative_difference_chi_p"].get<double>());
    return kExitOk;
  });
}

namespace {

double field_value(const std::string_view field, const CouplingReport& r, const MechanicalMode& m) {
  if (field == "cdr") return r.cdr;
  if (field == "c_quantum") return r.c_quantum;
  if (field == "kappa_over_2pi_hz") return r.kappa / (2.0 * constants::pi);
  if (field == "mass_kg") return m.mass;
  if (field == "zero_point_m") return m.zero_point;
  throw Error(fmt::format("unknown expected field '{}'", field));
}

}  // namespace

int cmd_case_study(const std::string& name, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CaseStudy* study = find_case_study(name);
    if (!study) throw ConfigError(fmt::format("unknown case study '{}'", name));
    const ResolvedConfig rc = resolve(preset_config(name));
    const MechanicalMode mode = mechanical_mode(rc);
    const Susceptibility chi(*rc.pinned_chi_ndd);
    const CouplingReport report =
        coupling_report(rc.cavity, rc.membrane, mode, chi, rc.temperature, rc.kappa_ratio_override);

    json j;
    j["case_study"] = name;
    j["chi_ndd_input"] = to_json(chi.value());
    try {
      j["chi_ndd_recomputed"] = to_json(ndd_transform(chi_p_closed(rc.drive, rc.s0, rc.formula)).value());
      j["chi_ndd_recomputed_formula"] = std::string(to_string(rc.formula));
    } catch (const Error& e) {
      j["chi_ndd_recomputed"] = nullptr;
    }
    j["report"] = to_json(report);
    j["mechanics"] = {{"mass_kg", mode.mass},
                      {"omega_m_over_2pi_hz", mode.frequency / (2.0 * constants::pi)},
                      {"drum_model_omega_m_over_2pi_hz",
                       mechanical_frequency(rc.membrane) / (2.0 * constants::pi)},
                      {"zero_point_m", mode.zero_point},
                      {"damping_rad_s", mode.damping}};
    j["cavity"] = {{"quality_factor", rc.cavity.quality_factor},
                   {"kappa_over_2pi_hz", report.kappa / (2.0 * constants::pi)},
                   {"length_m", rc.cavity.length}};

    bool passed = true;
    json checks = json::array();
    for (const auto& e : study->expected) {
      const double v = field_value(e.field, report, mode);
      const double rel = std::abs(v - e.value) / std::abs(e.value);
      const bool ok = rel <= e.rel_tolerance;
      if (e.asserted && !ok) passed = false;
      checks.push_back({{"field", std::string(e.field)},
                        {"value", v},
                        {"expected", e.value},
                        {"relative_difference", rel},
                        {"rel_tolerance", e.rel_tolerance},
                        {"asserted", e.asserted},
                        {"pass", ok}});
    }
    j["checks"] = checks;
    json ledger = json::array();
    for (auto a : study->assumptions) ledger.push_back(std::string(a));
    j["assumptions"] = ledger;
    j["passed"] = passed;
    write_json(out, j);
    return passed ? kExitOk : kExitAssertion;
  });
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedConfig rc = resolve(load_run_config(options.source));
    if (rc.axes.empty()) throw ConfigError("sweep needs at least sweep.axis1");
    const SweepConfig config = sweep_config(rc);
    config.validate();
    const auto records = sweep(config, options.threads);

    if (options.out_path) {
      auto file = open_output(*options.out_path);
      write_sweep_csv(file, config, records);
    } else {
      write_sweep_csv(out, config, records);
    }
    if (options.boundary_path) {
      if (config.axes.size() != 2) throw ConfigError("--boundary needs a 2-D sweep");
      auto file = open_output(*options.boundary_path);
      write_json(file, boundary_to_json(config, gain_boundary(config, records)));
    }
    if (options.region_path) {
      auto file = open_output(*options.region_path);
      const SpscRegion region = find_spsc_region(records, options.region_threshold);
      write_json(file, region_to_json(config, records, region, options.region_threshold));
    }
    return kExitOk;
  });
}

int cmd_optimize(const OptimizeCommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedConfig rc = resolve(load_run_config(options.source));
    if (rc.bounds.empty()) throw ConfigError("optimize needs at least one optimize.bounds.* key");
    SweepConfig config = sweep_config(rc);
    config.axes.clear();
    const OptimizeResult result = optimize_cdr(config, rc.bounds, rc.optimize, options.threads);
    json j = to_json(result, rc.bounds);
    j["engine"] = std::string(to_string(rc.engine));
    if (rc.engine == Engine::Closed) j["chi_formula"] = std::string(to_string(rc.formula));
    j["cdr_mode"] = std::string(to_string(rc.cdr_mode));
    write_json(out, j);
    return kExitOk;
  });
}

int cmd_adjudicate(const AdjudicateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AdjudicationReport report = adjudicate_closed_form(options.points, options.seed);
    const json j = to_json(report);
    if (options.out_path) {
      auto file = open_output(*options.out_path);
      write_json(file, j);
    }
    write_json(out, j);
    return kExitOk;
  });
}

int cmd_report(const ConfigSource& source, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedConfig rc = resolve(load_run_config(source));
    Susceptibility chi;
    if (rc.pinned_chi_ndd) {
      chi = Susceptibility(*rc.pinned_chi_ndd);
    } else if (rc.engine == Engine::Closed) {
      chi = ndd_transform(chi_p_closed(rc.drive, rc.s0, rc.formula));
    } else {
      chi = ndd_transform(chi_p_numeric(rc.drive, rc.s0, rc.dephasing_2).chi);
    }
    const MechanicalMode mode = mechanical_mode(rc);
    const CouplingReport report =
        coupling_report(rc.cavity, rc.membrane, mode, chi, rc.temperature, rc.kappa_ratio_override);
    json j = to_json(report);
    j["chi_ndd"] = to_json(chi.value());
    j["zero_point_m"] = mode.zero_point;
    j["omega_m_rad_s"] = mode.frequency;
    write_json(out, j);
    return kExitOk;
  });
}

int cmd_dump(const ConfigSource& source, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedConfig rc = resolve(load_run_config(source));
    LambdaDriveParams drive = rc.drive;
    if (drive.omega_p <= 0.0) drive.omega_p = kDefaultProbeFraction * drive.gamma2;
    const Liouvillian l = build_liouvillian(drive, rc.dephasing_2);
    out << "# liouvillian (9x9, column-stacked vec, units of gamma)\n";
    dump_matrix(out, l.matrix);
    out << "# steady_state (3x3, basis |1>,|2>,|3>)\n";
    dump_matrix(out, steady_state(l).matrix());
    return kExitOk;
  });
}

int cmd_config(const ConfigSource& source, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(source);
    resolve(config);
    out << config.serialize();
    return kExitOk;
  });
}

int cmd_presets(std::ostream& out) {
  for (const auto& p : presets()) out << fmt::format("{:<12} {}\n", p.name, p.summary);
  return kExitOk;
}

}  // namespace mitm
