//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pairtherm::cli {

/// Bad or inconsistent configuration keys. Mapped to exit code 2; core
/// numeric-domain rejections map to exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

inline constexpr const char* kArtifactName = "pairtherm";
inline constexpr const char* kArtifactVersion = "0.1.0";

struct OutputOptions {
  std::string report_path;  // empty -> stdout
  bool natural_units = false;
};

struct SpectrumConfig {
  double n_in = 1.0;
  double n_out = 1.0;
  double t0_s = 0.0;
  double omega_min = 0.0;
  double omega_max = 0.0;
  int points = 0;
  std::string grid_scale = "log";
  std::optional<double> window_min;
  std::optional<double> window_max;
  std::string csv_path;
  OutputOptions output;
};

struct FormFactorConfig {
  double radius_m = 0.0;
  double q_min = 0.0;
  double q_max = 0.0;
  int points = 0;
  std::string grid_scale = "linear";
  std::string csv_path;  // empty -> stdout
  OutputOptions output;
};

struct AngularConfig {
  double k_mag = 0.0;
  double radius_m = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int bins = 50;
  std::string csv_path;
  OutputOptions output;
};

struct SimulateConfig {
  std::string source;
  std::optional<double> zeta;
  std::optional<double> nbar_a;
  std::optional<double> nbar_b;
  double eta_a = 1.0;
  double eta_b = 1.0;
  std::uint64_t flashes = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string events_path;  // optional event dump
  OutputOptions output;
};

struct TemperatureConfig {
  double n_in = 1.0;
  double n_out = 1.0;
  double t0_s = 0.0;
  OutputOptions output;
};

struct DiscriminateConfig {
  std::string events_path;
  double eta_a = 1.0;
  double eta_b = 1.0;
  OutputOptions output;
};

void run_spectrum(const SpectrumConfig& config);
void run_formfactor(const FormFactorConfig& config);
void run_angular(const AngularConfig& config);
void run_simulate(const SimulateConfig& config);
void run_temperature(const TemperatureConfig& config);
void run_discriminate(const DiscriminateConfig& config);

}  // namespace pairtherm::cli
