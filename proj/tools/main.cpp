//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

using namespace pairtherm::cli;

std::string config_path_placeholder;

void add_output_options(CLI::App* cmd, OutputOptions& output) {
  cmd->add_option("--config", config_path_placeholder,
                  "flat key = value configuration file ('#' comments); "
                  "command-line flags override file values");
  cmd->add_option("--out", output.report_path,
                  "write the report document here instead of stdout");
  cmd->add_flag("--natural_units,--natural-units", output.natural_units,
                "hbar = c = k_B = 1 instead of CODATA 2018 SI values");
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Expand `--config FILE` into per-key option tokens. Keys already present
/// on the command line are skipped, so explicit flags override the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw ConfigError("--config requires a file path");
      }
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  const auto present = [&args](const std::string& key) {
    for (const auto& spelling : {"--" + key, [&] {
           std::string dashed = key;
           std::replace(dashed.begin(), dashed.end(), '_', '-');
           return "--" + dashed;
         }()}) {
      for (const auto& arg : args) {
        if (arg == spelling || arg.rfind(spelling + "=", 0) == 0) return true;
      }
    }
    return false;
  };

  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trimmed(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trimmed(stripped.substr(0, eq));
    const std::string value = trimmed(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(path + ": duplicate key " + key);
    }
    if (!present(key)) args.push_back("--" + key + "=" + value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pairtherm: photon-pair statistics of a time-dependent refractive "
      "medium -- thermal vs squeezed-light discrimination"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kArtifactVersion);

  SpectrumConfig spectrum_cfg;
  auto* spectrum = app.add_subcommand(
      "spectrum", "per-mode pair creation over a frequency grid");
  spectrum->add_option("--n_in", spectrum_cfg.n_in, "refractive index before")
      ->required();
  spectrum->add_option("--n_out", spectrum_cfg.n_out, "refractive index after")
      ->required();
  spectrum->add_option("--t0_s", spectrum_cfg.t0_s, "switching timescale, s")
      ->required();
  spectrum->add_option("--omega_min", spectrum_cfg.omega_min,
                       "grid start, rad/s")
      ->required();
  spectrum->add_option("--omega_max", spectrum_cfg.omega_max,
                       "grid end, rad/s")
      ->required();
  spectrum->add_option("--points", spectrum_cfg.points, "grid size")
      ->required();
  spectrum
      ->add_option("--grid_scale", spectrum_cfg.grid_scale,
                   "grid spacing: log | linear")
      ->check(CLI::IsMember({"log", "linear"}));
  spectrum->add_option("--window_min", spectrum_cfg.window_min,
                       "custom fine-tuning window start, rad/s");
  spectrum->add_option("--window_max", spectrum_cfg.window_max,
                       "custom fine-tuning window end, rad/s");
  spectrum->add_option("--csv", spectrum_cfg.csv_path, "output table path")
      ->required();
  add_output_options(spectrum, spectrum_cfg.output);

  FormFactorConfig formfactor_cfg;
  auto* formfactor = app.add_subcommand(
      "formfactor", "finite-bubble form factor S(qR) over a q grid");
  formfactor
      ->add_option("--radius_m", formfactor_cfg.radius_m, "bubble radius, m")
      ->required();
  formfactor->add_option("--q_min", formfactor_cfg.q_min, "grid start, 1/m")
      ->required();
  formfactor->add_option("--q_max", formfactor_cfg.q_max, "grid end, 1/m")
      ->required();
  formfactor->add_option("--points", formfactor_cfg.points, "grid size")
      ->required();
  formfactor
      ->add_option("--grid_scale", formfactor_cfg.grid_scale,
                   "grid spacing: linear | log")
      ->check(CLI::IsMember({"log", "linear"}));
  formfactor->add_option("--csv", formfactor_cfg.csv_path,
                         "output table path (default stdout)");
  add_output_options(formfactor, formfactor_cfg.output);

  AngularConfig angular_cfg;
  auto* angular = app.add_subcommand(
      "angular", "sampled deviation angles of back-to-back photon pairs");
  angular->add_option("--k_mag", angular_cfg.k_mag, "photon wavenumber, 1/m")
      ->required();
  angular->add_option("--radius_m", angular_cfg.radius_m, "bubble radius, m")
      ->required();
  angular->add_option("--samples", angular_cfg.samples, "number of draws")
      ->required();
  angular->add_option("--seed", angular_cfg.seed, "64-bit RNG seed")
      ->required();
  angular->add_option("--bins", angular_cfg.bins,
                      "histogram bins over [0, pi]");
  angular->add_option("--csv", angular_cfg.csv_path, "histogram output path")
      ->required();
  add_output_options(angular, angular_cfg.output);

  SimulateConfig simulate_cfg;
  auto* simulate = app.add_subcommand(
      "simulate", "flash-by-flash two-detector coincidence ensemble");
  simulate
      ->add_option("--source", simulate_cfg.source,
                   "light source: thermal | squeezed")
      ->required()
      ->check(CLI::IsMember({"thermal", "squeezed"}));
  simulate->add_option("--zeta", simulate_cfg.zeta,
                       "squeeze parameter (squeezed source)");
  simulate->add_option("--nbar_a", simulate_cfg.nbar_a,
                       "mean occupation, detector a (thermal source)");
  simulate->add_option("--nbar_b", simulate_cfg.nbar_b,
                       "mean occupation, detector b (thermal source)");
  simulate->add_option("--eta_a", simulate_cfg.eta_a,
                       "detector a efficiency in [0, 1]");
  simulate->add_option("--eta_b", simulate_cfg.eta_b,
                       "detector b efficiency in [0, 1]");
  simulate->add_option("--flashes", simulate_cfg.flashes, "ensemble size")
      ->required();
  simulate->add_option("--seed", simulate_cfg.seed, "64-bit RNG seed")
      ->required();
  simulate->add_option("--threads", simulate_cfg.threads,
                       "worker threads (0 = auto); results do not depend on "
                       "this");
  simulate->add_option("--events", simulate_cfg.events_path,
                       "also dump per-flash counts to this CSV");
  add_output_options(simulate, simulate_cfg.output);

  TemperatureConfig temperature_cfg;
  auto* temperature = app.add_subcommand(
      "temperature", "frequency-independent adiabatic effective temperature");
  temperature
      ->add_option("--n_in", temperature_cfg.n_in, "refractive index before")
      ->required();
  temperature
      ->add_option("--n_out", temperature_cfg.n_out, "refractive index after")
      ->required();
  temperature
      ->add_option("--t0_s", temperature_cfg.t0_s, "switching timescale, s")
      ->required();
  add_output_options(temperature, temperature_cfg.output);

  DiscriminateConfig discriminate_cfg;
  auto* discriminate = app.add_subcommand(
      "discriminate", "classify a recorded event CSV as thermal or squeezed");
  discriminate
      ->add_option("--events", discriminate_cfg.events_path,
                   "event CSV with header flash,n_a,n_b")
      ->required();
  discriminate->add_option("--eta_a", discriminate_cfg.eta_a,
                           "detector a efficiency used when recording");
  discriminate->add_option("--eta_b", discriminate_cfg.eta_b,
                           "detector b efficiency used when recording");
  add_output_options(discriminate, discriminate_cfg.output);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 wants reversed tokens
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (spectrum->parsed()) {
      run_spectrum(spectrum_cfg);
    } else if (formfactor->parsed()) {
      run_formfactor(formfactor_cfg);
    } else if (angular->parsed()) {
      run_angular(angular_cfg);
    } else if (simulate->parsed()) {
      run_simulate(simulate_cfg);
    } else if (temperature->parsed()) {
      run_temperature(temperature_cfg);
    } else if (discriminate->parsed()) {
      run_discriminate(discriminate_cfg);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric-domain error: " << e.what() << "\n";
    return kExitDomain;
  }
}
