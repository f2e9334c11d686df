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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mitm/commands.hpp"

namespace {

void add_source_options(CLI::App* cmd, mitm::ConfigSource& source) {
  cmd->add_option("--preset", source.preset, "named preset (see `mitm presets`)");
  cmd->add_option("-c,--config", source.config_file, "key = value config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", source.overrides, "override a config key: key=value")
      ->allow_extra_args(false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dopant-enhanced optomechanical coupling of a membrane-in-the-middle cavity"};
  app.require_subcommand(1);

  mitm::ChiOptions chi;
  auto* chi_cmd = app.add_subcommand("chi", "probe susceptibility chi_p and chi_NDD");
  add_source_options(chi_cmd, chi.source);
  chi_cmd->add_option("--engine", chi.engine, "closed | oracle | both (default: config)")
      ->check(CLI::IsMember({"closed", "oracle", "both"}));
  chi_cmd->add_option("--delta-p", chi.delta_p, "probe detuning in units of gamma");
  chi_cmd->add_flag("--plain", chi.plain, "plain text instead of JSON");

  std::string case_name;
  auto* case_cmd = app.add_subcommand("case-study", "coupling report for er_si3n4 or cr_ruby");
  case_cmd->add_option("name", case_name, "case study name")->required();

  mitm::SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep to CSV");
  add_source_options(sweep_cmd, sweep.source);
  sweep_cmd->add_option("-o,--out", sweep.out_path, "CSV output file (default stdout)");
  sweep_cmd->add_option("--boundary", sweep.boundary_path, "write the gain/loss boundary JSON");
  sweep_cmd->add_option("--region", sweep.region_path, "write the SPSC region JSON");
  sweep_cmd->add_option("--threshold", sweep.region_threshold, "SPSC threshold on |g_om/kappa'|");

  mitm::OptimizeCommandOptions optimize;
  auto* opt_cmd = app.add_subcommand("optimize", "maximise |g_om/kappa'| under the gain constraint");
  add_source_options(opt_cmd, optimize.source);

  mitm::AdjudicateOptions adjudicate;
  auto* adj_cmd =
      app.add_subcommand("adjudicate", "compare the closed-form chi_p with the master equation");
  adj_cmd->add_option("--points", adjudicate.points, "random grid size");
  adj_cmd->add_option("--seed", adjudicate.seed, "random seed");
  adj_cmd->add_option("-o,--out", adjudicate.out_path, "also write the report to a file");

  mitm::ConfigSource report_source;
  auto* report_cmd = app.add_subcommand("report", "coupling report for a config");
  add_source_options(report_cmd, report_source);

  mitm::ConfigSource dump_source;
  auto* dump_cmd = app.add_subcommand("dump", "print the Liouvillian and steady state");
  add_source_options(dump_cmd, dump_source);

  mitm::ConfigSource config_source;
  auto* config_cmd = app.add_subcommand("config", "print the merged config");
  add_source_options(config_cmd, config_source);

  auto* presets_cmd = app.add_subcommand("presets", "list presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mitm::kExitConfig;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*chi_cmd) return mitm::cmd_chi(chi, out, err);
  if (*case_cmd) return mitm::cmd_case_study(case_name, out, err);
  if (*sweep_cmd) return mitm::cmd_sweep(sweep, out, err);
  if (*opt_cmd) return mitm::cmd_optimize(optimize, out, err);
  if (*adj_cmd) return mitm::cmd_adjudicate(adjudicate, out, err);
  if (*report_cmd) return mitm::cmd_report(report_source, out, err);
  if (*dump_cmd) return mitm::cmd_dump(dump_source, out, err);
  if (*config_cmd) return mitm::cmd_config(config_source, out, err);
  if (*presets_cmd) return mitm::cmd_presets(out);
  return mitm::kExitConfig;
}
