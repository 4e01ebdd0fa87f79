// Copyright 2026 The holopi Authors
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

// holopi command-line front end.
//
// Exit status: 0 success, 1 check failed (gatecheck, audit), 2 bad
// configuration or arguments, 3 infeasible schedule or I/O failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holopi/config.hpp"
#include "holopi/experiment.hpp"
#include "holopi/schedule.hpp"

namespace {

using namespace holopi;

constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;
constexpr int kRunError = 3;

config::ConfigSource load_source(const std::string& path, const std::vector<std::string>& sets) {
  auto src = config::ConfigSource::load(path);
  for (const auto& s : sets) src.set(s);
  return src;
}

void print_summary(const experiment::Summary& s, const std::filesystem::path& dir) {
  std::cout << "mode        " << s.mode << "\n"
            << "gate        " << s.gate << "\n";
  if (std::isfinite(s.fidelity)) {
    std::cout << "fidelity    " << propagate::format_sig12(s.fidelity) << "\n"
              << "gate error  " << propagate::format_sig12(s.gate_error) << "\n"
              << "leakage     " << propagate::format_sig12(s.leakage) << "\n"
              << "area mod 2pi " << propagate::format_sig12(s.area_mod_2pi) << "\n"
              << "gamma+      " << propagate::format_sig12(s.gamma_plus) << "\n";
  }
  for (const auto& [k, v] : s.metrics) std::cout << k << " = " << propagate::format_sig12(v) << "\n";
  for (const auto& w : s.warnings) std::cout << "warning: " << w << "\n";
  std::cout << "outputs in " << dir.string() << "\n";
}

int simulate(const std::string& path, const std::vector<std::string>& sets, bool force_adiabaticity) {
  auto src = load_source(path, sets);
  if (force_adiabaticity) src.set("experiment.mode", "adiabaticity", "adiabaticity command");
  const auto cfg = config::build(src);
  const auto result = experiment::run(cfg);
  experiment::write_outputs(result, cfg.output);
  print_summary(result.summary, cfg.output);
  return 0;
}

int sweep(const std::string& path, const std::vector<std::string>& sets, int workers) {
  const auto src = load_source(path, sets);
  const auto cfg = config::build(src);
  const auto points = experiment::sweep(src, workers > 0 ? workers : cfg.workers);
  experiment::write_sweep(points, cfg.sweep_axis, cfg.output);
  std::cout << cfg.sweep_axis << " -> fidelity\n";
  for (const auto& p : points) {
    std::cout << "  " << p.value << " -> " << propagate::format_sig12(p.result.summary.fidelity) << "\n";
  }
  std::cout << "outputs in " << cfg.output.string() << "\n";
  return 0;
}

int gatecheck(double cphase_gamma) {
  const auto specs = gates::table1_all(cphase_gamma);
  const auto rows = experiment::gatecheck(specs);
  experiment::print_gatecheck(std::cout, rows);
  for (const auto& r : rows) {
    if (!r.pass) return kCheckFailed;
  }
  return 0;
}

int audit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config::ConfigError(path + ": cannot open schedule file");
  const auto report = schedule::audit(read_schedule(in));
  for (const auto& s : report.steps) {
    std::cout << s.step << ": area " << propagate::format_sig12(s.area) << " rad, duration "
              << propagate::format_sig12(s.duration) << " s, bursts " << s.bursts << "\n";
  }
  std::cout << "total area " << propagate::format_sig12(report.total_area) << " rad (mod 2pi "
            << propagate::format_sig12(report.area_mod_2pi) << ")\n"
            << "gamma+ " << propagate::format_sig12(report.gamma_plus) << " rad\n"
            << "duration " << propagate::format_sig12(report.duration) << " s\n";
  for (const auto& v : report.violations) std::cout << "violation: " << v << "\n";
  std::cout << (report.ok() ? "audit passed" : "audit failed") << "\n";
  return report.ok() ? 0 : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gate planner and simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  int workers = 0;
  double cphase_gamma = holopi::kPi;
  std::string schedule_path;

  auto* sim = app.add_subcommand("simulate", "Run one experiment from a config file");
  sim->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--set", sets, "Override a config entry, section.key=value")
      ->type_size(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* swp = app.add_subcommand("sweep", "Run the configured parameter sweep");
  swp->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  swp->add_option("--set", sets, "Override a config entry, section.key=value")
      ->type_size(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  swp->add_option("--workers", workers, "Worker threads (0 = config or hardware)")
      ->check(CLI::NonNegativeNumber);

  auto* gc = app.add_subcommand("gatecheck", "Check the gate table against canonical matrices");
  gc->add_option("--cphase-gamma", cphase_gamma, "Conditional phase for the CPHASE row, rad");

  auto* adi = app.add_subcommand("adiabaticity", "Transition-integral scaling analysis");
  adi->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  adi->add_option("--set", sets, "Override a config entry, section.key=value")
      ->type_size(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* aud = app.add_subcommand("audit", "Audit a schedule text file");
  aud->add_option("schedule", schedule_path, "Schedule file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*sim) return simulate(config_path, sets, false);
    if (*swp) return sweep(config_path, sets, workers);
    if (*gc) return gatecheck(cphase_gamma);
    if (*adi) return simulate(config_path, sets, true);
    if (*aud) return audit(schedule_path);
  } catch (const holopi::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const holopi::ScheduleError& e) {
    std::cerr << "schedule error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRunError;
  }
  return 0;
}
