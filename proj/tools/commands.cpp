//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "pairtherm/bogolubov.hpp"
#include "pairtherm/constants.hpp"
#include "pairtherm/kinematics.hpp"
#include "pairtherm/montecarlo.hpp"
#include "pairtherm/states.hpp"
#include "report.hpp"

namespace pairtherm::cli {

namespace {

std::string d17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso8601_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

PhysicalConstants constants_for(const OutputOptions& output) {
  return output.natural_units ? natural_units() : codata2018();
}

JsonValue provenance(const OutputOptions& output,
                     std::optional<std::uint64_t> seed) {
  const PhysicalConstants pc = constants_for(output);
  JsonValue c = JsonValue::object();
  c.set("system",
        JsonValue::string(output.natural_units ? "natural" : "codata2018"));
  c.set("hbar", JsonValue::number(pc.hbar));
  c.set("k_B", JsonValue::number(pc.k_B));
  c.set("c", JsonValue::number(pc.c));

  JsonValue p = JsonValue::object();
  p.set("artifact", JsonValue::string(kArtifactName));
  p.set("version", JsonValue::string(kArtifactVersion));
  p.set("seed", seed ? JsonValue::uinteger(*seed) : JsonValue::null());
  p.set("timestamp", JsonValue::string(iso8601_utc_now()));
  p.set("constants", std::move(c));
  return p;
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw ConfigError("cannot write output file: " + path);
}

void emit_report(const OutputOptions& output, JsonValue doc) {
  write_text(output.report_path, doc.dump());
}

Eigen::ArrayXd make_grid(double lo, double hi, int points,
                         const std::string& scale, const char* lo_key,
                         const char* hi_key, const char* points_key) {
  if (!(points >= 2)) {
    throw ConfigError(std::string(points_key) + " must be >= 2");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError(std::string(lo_key) + " must be finite and < " + hi_key);
  }
  Eigen::ArrayXd grid(points);
  if (scale == "log") {
    if (!(lo > 0.0)) {
      throw ConfigError(std::string(lo_key) + " must be > 0 for log grids");
    }
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (int i = 0; i < points; ++i) {
      grid[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
    }
    grid[0] = lo;
    grid[points - 1] = hi;
  } else if (scale == "linear") {
    for (int i = 0; i < points; ++i) {
      grid[i] = lo + (hi - lo) * i / (points - 1);
    }
    grid[0] = lo;
    grid[points - 1] = hi;
  } else {
    throw ConfigError("grid_scale must be \"log\" or \"linear\"");
  }
  return grid;
}

JsonValue window_entry(const bogolubov::BetaSpectrum& spectrum,
                       double omega_lo, double omega_hi, bool required) {
  JsonValue w = JsonValue::object();
  w.set("omega_lo", JsonValue::number(omega_lo));
  w.set("omega_hi", JsonValue::number(omega_hi));
  try {
    const auto report =
        bogolubov::fine_tuning_residual(spectrum, omega_lo, omega_hi);
    w.set("points", JsonValue::integer(report.kappas.size()));
    w.set("coefficient_of_variation",
          JsonValue::number(report.coefficient_of_variation));
  } catch (const std::domain_error&) {
    if (required) throw;
    w.set("points", JsonValue::null());
    w.set("coefficient_of_variation", JsonValue::null());
  }
  return w;
}

JsonValue correlation_results(const montecarlo::CorrelationReport& r) {
  JsonValue v = JsonValue::object();
  v.set("flashes", JsonValue::uinteger(r.flashes));
  v.set("mean_a", JsonValue::number(r.mean_a));
  v.set("mean_b", JsonValue::number(r.mean_b));
  v.set("var_a", JsonValue::number(r.var_a));
  v.set("var_b", JsonValue::number(r.var_b));
  v.set("cov_ab", JsonValue::number(r.cov_ab));
  v.set("var_nab", JsonValue::number(r.var_nab));
  v.set("var_nab_stderr", JsonValue::number(r.var_nab_stderr));
  v.set("prediction_thermal", JsonValue::number(r.prediction_thermal));
  v.set("prediction_squeezed", JsonValue::number(r.prediction_squeezed));
  v.set("z_thermal", JsonValue::number(r.z_thermal));
  v.set("z_squeezed", JsonValue::number(r.z_squeezed));
  v.set("classification",
        JsonValue::string(montecarlo::to_string(r.classification)));
  v.set("low_statistics", JsonValue::boolean(r.low_statistics));
  return v;
}

void write_event_csv(const std::string& path,
                     const std::vector<montecarlo::PairSample>& events) {
  std::string csv = "flash,n_a,n_b\n";
  char buf[80];
  for (std::size_t i = 0; i < events.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%llu,%lld,%lld\n",
                  static_cast<unsigned long long>(i),
                  static_cast<long long>(events[i].n_a),
                  static_cast<long long>(events[i].n_b));
    csv += buf;
  }
  write_text(path, csv);
}

}  // namespace

void run_spectrum(const SpectrumConfig& config) {
  if (config.csv_path.empty()) {
    throw ConfigError("spectrum requires --csv (output table path)");
  }
  if (config.window_min.has_value() != config.window_max.has_value()) {
    throw ConfigError("window_min and window_max must be given together");
  }
  const PhysicalConstants pc = constants_for(config.output);
  const bogolubov::RefractiveTransition profile(config.n_in, config.n_out,
                                                config.t0_s);
  const Eigen::ArrayXd grid =
      make_grid(config.omega_min, config.omega_max, config.points,
                config.grid_scale, "omega_min", "omega_max", "points");
  const auto spectrum = bogolubov::build_spectrum(profile, grid, pc);

  std::string csv = "omega_out,beta_sq,zeta,T_k,dN_domega_rel\n";
  for (Eigen::Index i = 0; i < spectrum.omegas.size(); ++i) {
    csv += d17(spectrum.omegas[i]) + ',' + d17(spectrum.beta_sq[i]) + ',' +
           d17(spectrum.zetas[i]) + ',' + d17(spectrum.temps_kelvin[i]) + ',' +
           d17(spectrum.density[i]) + '\n';
  }
  write_text(config.csv_path, csv);

  // Regime windows in terms of c k tau = n_out omega tau: the sudden
  // plateau sits well below c k tau = 1, the Boltzmann tail well above.
  const double scale =
      1.0 / (profile.n_out() * bogolubov::tau(profile).tau);
  JsonValue tuning = JsonValue::object();
  tuning.set("adiabatic",
             window_entry(spectrum, 5.0 * scale, 20.0 * scale, false));
  tuning.set("sudden",
             window_entry(spectrum, 1e-4 * scale, 1e-2 * scale, false));
  if (config.window_min) {
    tuning.set("custom", window_entry(spectrum, *config.window_min,
                                      *config.window_max, true));
  }

  JsonValue units = JsonValue::object();
  units.set("omega_out",
            JsonValue::string(config.output.natural_units ? "natural" : "rad/s"));
  units.set("T_k",
            JsonValue::string(config.output.natural_units ? "natural" : "K"));
  units.set("beta_sq", JsonValue::string("dimensionless"));
  units.set("zeta", JsonValue::string("dimensionless"));
  units.set("dN_domega_rel", JsonValue::string("relative"));

  JsonValue results = JsonValue::object();
  results.set("grid_points", JsonValue::integer(spectrum.omegas.size()));
  results.set("tau", JsonValue::number(bogolubov::tau(profile).tau));
  results.set("fine_tuning", std::move(tuning));
  results.set("units", std::move(units));

  JsonValue inputs = JsonValue::object();
  inputs.set("n_in", JsonValue::number(config.n_in));
  inputs.set("n_out", JsonValue::number(config.n_out));
  inputs.set("t0_s", JsonValue::number(config.t0_s));
  inputs.set("omega_min", JsonValue::number(config.omega_min));
  inputs.set("omega_max", JsonValue::number(config.omega_max));
  inputs.set("points", JsonValue::integer(config.points));
  inputs.set("grid_scale", JsonValue::string(config.grid_scale));
  if (config.window_min) {
    inputs.set("window_min", JsonValue::number(*config.window_min));
    inputs.set("window_max", JsonValue::number(*config.window_max));
  }
  inputs.set("natural_units", JsonValue::boolean(config.output.natural_units));

  JsonValue doc = JsonValue::object();
  doc.set("inputs", std::move(inputs));
  doc.set("results", std::move(results));
  doc.set("provenance", provenance(config.output, std::nullopt));
  emit_report(config.output, std::move(doc));
}

void run_formfactor(const FormFactorConfig& config) {
  const kinematics::BubbleGeometry geometry(config.radius_m);
  if (!(config.q_min >= 0.0)) throw ConfigError("q_min must be >= 0");
  const Eigen::ArrayXd grid =
      make_grid(config.q_min, config.q_max, config.points, config.grid_scale,
                "q_min", "q_max", "points");
  const double s0 = kinematics::form_factor(0.0, geometry);

  std::string csv = "q,S,S_sq_normalized\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double s = kinematics::form_factor(grid[i], geometry);
    const double ratio = s / s0;
    csv += d17(grid[i]) + ',' + d17(s) + ',' + d17(ratio * ratio) + '\n';
  }
  write_text(config.csv_path, csv);
}

void run_angular(const AngularConfig& config) {
  if (config.csv_path.empty()) {
    throw ConfigError("angular requires --csv (histogram output path)");
  }
  if (config.samples == 0) throw ConfigError("samples must be >= 1");
  if (config.bins < 1) throw ConfigError("bins must be >= 1");
  const kinematics::BubbleGeometry geometry(config.radius_m);
  if (!(config.k_mag > 0.0) || !std::isfinite(config.k_mag)) {
    throw ConfigError("k_mag must be > 0");
  }

  rng::Stream stream(config.seed, 0);
  std::vector<double> thetas;
  thetas.reserve(config.samples);
  for (std::uint64_t i = 0; i < config.samples; ++i) {
    thetas.push_back(
        kinematics::sample_pair_direction(config.k_mag, geometry, stream)
            .deviation_angle);
  }

  const double width = std::numbers::pi / config.bins;
  std::vector<std::uint64_t> counts(config.bins, 0);
  for (double t : thetas) {
    int b = static_cast<int>(t / width);
    if (b >= config.bins) b = config.bins - 1;
    ++counts[b];
  }

  std::string csv = "theta_bin_center,count,density\n";
  for (int b = 0; b < config.bins; ++b) {
    const double center = (b + 0.5) * width;
    const double density =
        static_cast<double>(counts[b]) /
        (static_cast<double>(config.samples) * width);
    csv += d17(center) + ',' + std::to_string(counts[b]) + ',' + d17(density) +
           '\n';
  }
  write_text(config.csv_path, csv);

  // median deviation
  std::vector<double> sorted = thetas;
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + mid, sorted.end());
  const double median = sorted[mid];

  // k_mag is the in-medium wavenumber, so rho = omega n R / c reduces to k R
  const PhysicalConstants pc = constants_for(config.output);
  const double validity = kinematics::planewave_validity(
      states::ModeFrequency(pc.c * config.k_mag), 1.0, geometry, pc);

  JsonValue results = JsonValue::object();
  results.set("samples", JsonValue::uinteger(config.samples));
  results.set("median_deviation_rad", JsonValue::number(median));
  results.set("validity_ratio", JsonValue::number(validity));
  results.set("validity_ok",
              JsonValue::boolean(validity >=
                                 kinematics::kPlanewaveValidityThreshold));

  JsonValue inputs = JsonValue::object();
  inputs.set("k_mag", JsonValue::number(config.k_mag));
  inputs.set("radius_m", JsonValue::number(config.radius_m));
  inputs.set("samples", JsonValue::uinteger(config.samples));
  inputs.set("seed", JsonValue::uinteger(config.seed));
  inputs.set("bins", JsonValue::integer(config.bins));
  inputs.set("natural_units", JsonValue::boolean(config.output.natural_units));

  JsonValue doc = JsonValue::object();
  doc.set("inputs", std::move(inputs));
  doc.set("results", std::move(results));
  doc.set("provenance", provenance(config.output, config.seed));
  emit_report(config.output, std::move(doc));
}

void run_simulate(const SimulateConfig& config) {
  montecarlo::SourceConfig source{};
  if (config.source == "squeezed") {
    if (!config.zeta || config.nbar_a || config.nbar_b) {
      throw ConfigError(
          "squeezed source requires zeta and forbids nbar_a/nbar_b");
    }
    source = montecarlo::SourceConfig::squeezed(*config.zeta);
  } else if (config.source == "thermal") {
    if (!config.nbar_a || !config.nbar_b || config.zeta) {
      throw ConfigError(
          "thermal source requires nbar_a and nbar_b and forbids zeta");
    }
    source = montecarlo::SourceConfig::thermal(*config.nbar_a, *config.nbar_b);
  } else {
    throw ConfigError("source must be \"thermal\" or \"squeezed\"");
  }
  if (config.flashes == 0) throw ConfigError("flashes must be >= 1");

  const montecarlo::DetectorConfig det(config.eta_a, config.eta_b);
  montecarlo::RunOptions options;
  options.threads = config.threads;
  std::vector<montecarlo::PairSample> events;
  if (!config.events_path.empty()) options.event_sink = &events;

  const auto report = montecarlo::run_ensemble(source, det, config.flashes,
                                               config.seed, options);
  if (!config.events_path.empty()) write_event_csv(config.events_path, events);

  JsonValue inputs = JsonValue::object();
  inputs.set("source", JsonValue::string(config.source));
  if (config.zeta) inputs.set("zeta", JsonValue::number(*config.zeta));
  if (config.nbar_a) inputs.set("nbar_a", JsonValue::number(*config.nbar_a));
  if (config.nbar_b) inputs.set("nbar_b", JsonValue::number(*config.nbar_b));
  inputs.set("eta_a", JsonValue::number(config.eta_a));
  inputs.set("eta_b", JsonValue::number(config.eta_b));
  inputs.set("flashes", JsonValue::uinteger(config.flashes));
  inputs.set("seed", JsonValue::uinteger(config.seed));
  inputs.set("natural_units", JsonValue::boolean(config.output.natural_units));

  JsonValue doc = JsonValue::object();
  doc.set("inputs", std::move(inputs));
  doc.set("results", correlation_results(report));
  doc.set("provenance", provenance(config.output, config.seed));
  emit_report(config.output, std::move(doc));
}

void run_temperature(const TemperatureConfig& config) {
  const PhysicalConstants pc = constants_for(config.output);
  const bogolubov::RefractiveTransition profile(config.n_in, config.n_out,
                                                config.t0_s);
  const auto report = bogolubov::effective_temperature_adiabatic(profile, pc);

  JsonValue results = JsonValue::object();
  results.set("formula_temperature", JsonValue::number(report.formula_kelvin));
  results.set("composed_temperature",
              JsonValue::number(report.composed_kelvin));
  results.set("composed_to_formula_ratio",
              JsonValue::number(report.composed_to_formula_ratio));
  results.set("reference_omega", JsonValue::number(report.reference_omega));
  results.set("tau", JsonValue::number(bogolubov::tau(profile).tau));
  JsonValue units = JsonValue::object();
  units.set("temperature",
            JsonValue::string(config.output.natural_units ? "natural" : "K"));
  units.set("reference_omega",
            JsonValue::string(config.output.natural_units ? "natural" : "rad/s"));
  units.set("tau",
            JsonValue::string(config.output.natural_units ? "natural" : "s"));
  results.set("units", std::move(units));

  JsonValue inputs = JsonValue::object();
  inputs.set("n_in", JsonValue::number(config.n_in));
  inputs.set("n_out", JsonValue::number(config.n_out));
  inputs.set("t0_s", JsonValue::number(config.t0_s));
  inputs.set("natural_units", JsonValue::boolean(config.output.natural_units));

  JsonValue doc = JsonValue::object();
  doc.set("inputs", std::move(inputs));
  doc.set("results", std::move(results));
  doc.set("provenance", provenance(config.output, std::nullopt));
  emit_report(config.output, std::move(doc));
}

void run_discriminate(const DiscriminateConfig& config) {
  if (config.events_path.empty()) {
    throw ConfigError("discriminate requires --events (input CSV path)");
  }
  std::ifstream in(config.events_path);
  if (!in) throw ConfigError("cannot open events file: " + config.events_path);

  std::string line;
  if (!std::getline(in, line) || line != "flash,n_a,n_b") {
    throw ConfigError("events file must start with header \"flash,n_a,n_b\"");
  }
  std::vector<montecarlo::PairSample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    long long flash = 0, n_a = 0, n_b = 0;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lld", &flash, &n_a, &n_b) != 3 ||
        n_a < 0 || n_b < 0) {
      throw ConfigError("events file line " + std::to_string(line_no) +
                        ": expected \"flash,n_a,n_b\" nonnegative integers");
    }
    samples.push_back({n_a, n_b});
  }
  if (samples.empty()) throw ConfigError("events file contains no flashes");

  const montecarlo::DetectorConfig det(config.eta_a, config.eta_b);
  const auto report = montecarlo::report_from_samples(samples, det);

  JsonValue inputs = JsonValue::object();
  inputs.set("events", JsonValue::string(config.events_path));
  inputs.set("eta_a", JsonValue::number(config.eta_a));
  inputs.set("eta_b", JsonValue::number(config.eta_b));
  inputs.set("natural_units", JsonValue::boolean(config.output.natural_units));

  JsonValue doc = JsonValue::object();
  doc.set("inputs", std::move(inputs));
  doc.set("results", correlation_results(report));
  doc.set("provenance", provenance(config.output, std::nullopt));
  emit_report(config.output, std::move(doc));
}

}  // namespace pairtherm::cli
