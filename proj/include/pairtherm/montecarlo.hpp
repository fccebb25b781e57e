//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pairtherm/rng.hpp"
#include "pairtherm/states.hpp"

namespace pairtherm::montecarlo {

/// Light source of the simulated flashes: either one squeezed mode pair or
/// two independent thermal modes. Exactly one parameterization is populated.
struct SourceConfig {
  states::SourceKind kind;
  double zeta = 0.0;    // squeezed only
  double nbar_a = 0.0;  // thermal only
  double nbar_b = 0.0;

  static SourceConfig squeezed(double zeta);
  static SourceConfig thermal(double nbar_a, double nbar_b);
};

/// Detection efficiencies of the two back-to-back detectors, each in [0, 1].
struct DetectorConfig {
  double eta_a = 1.0;
  double eta_b = 1.0;

  DetectorConfig(double eta_a_in, double eta_b_in);
};

/// Photon counts of one flash at the two detectors.
struct PairSample {
  std::int64_t n_a = 0;
  std::int64_t n_b = 0;
};

enum class Classification { thermal, squeezed, inconclusive };

const char* to_string(Classification c);

/// Sample moments of an ensemble of flashes plus the closed-form predictions
/// and the resulting source classification.
///
/// var_nab is the variance of N_a - N_b; its standard error comes from 100
/// batch means. z scores compare var_nab against each prediction; with a
/// zero standard error they are 0 on exact match and +-inf on mismatch.
struct CorrelationReport {
  std::uint64_t flashes = 0;
  double mean_a = 0.0, mean_b = 0.0;
  double var_a = 0.0, var_b = 0.0, cov_ab = 0.0;
  double var_nab = 0.0;
  double var_nab_stderr = 0.0;
  double prediction_thermal = 0.0;
  double prediction_squeezed = 0.0;
  double z_thermal = 0.0, z_squeezed = 0.0;
  Classification classification = Classification::inconclusive;
  bool low_statistics = false;
};

/// One flash of the squeezed source: a single geometric draw with ratio
/// tanh^2(zeta) via the closed-form inverse CDF, emitted as an exact pair.
PairSample sample_squeezed_pair(states::SqueezeParameter zeta,
                                rng::Stream& stream);

/// One flash of the thermal source: two independent geometric draws with
/// means nbar_a and nbar_b.
PairSample sample_thermal_pair(double nbar_a, double nbar_b,
                               rng::Stream& stream);

/// Per-photon Bernoulli loss: n' ~ Binomial(n, eta) at each detector,
/// independent given the input.
PairSample apply_detector_loss(const PairSample& sample,
                               const DetectorConfig& det, rng::Stream& stream);

struct RunOptions {
  int threads = 0;  // <= 0 selects hardware concurrency
  std::vector<PairSample>* event_sink = nullptr;  // filled in flash order
};

/// Simulate `flashes` flashes and estimate the count-difference variance.
///
/// The flash index space is split into 2^16-flash chunks; chunk c draws from
/// the substream (seed, c) and accumulates exact integer moments, so the
/// merged report is bitwise identical for any worker count.
CorrelationReport run_ensemble(const SourceConfig& source,
                               const DetectorConfig& det,
                               std::uint64_t flashes, std::uint64_t seed,
                               const RunOptions& options = {});

/// Build the same report from pre-recorded flashes (e.g. an event CSV).
CorrelationReport report_from_samples(std::span<const PairSample> samples,
                                      const DetectorConfig& det);

/// Three-sigma rule on the report's own z scores. Throws std::domain_error
/// for the degenerate case stderr == 0 with var_nab matching neither
/// prediction.
Classification classify(const CorrelationReport& report);

inline constexpr std::uint64_t kChunkFlashes = 1ull << 16;
inline constexpr int kBatchCount = 100;
inline constexpr double kSigmaThreshold = 3.0;
inline constexpr std::uint64_t kLowStatisticsThreshold = 10000;

}  // namespace pairtherm::montecarlo
