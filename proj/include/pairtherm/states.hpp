//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pairtherm/constants.hpp"

namespace pairtherm::states {

/// Dimensionless real squeezing strength of one back-to-back mode pair.
/// Nonnegative and finite; the complex phase is out of scope.
class SqueezeParameter {
 public:
  explicit SqueezeParameter(double zeta);
  double value() const { return zeta_; }

 private:
  double zeta_;
};

/// Angular mode frequency, rad/s. Strictly positive and finite.
class ModeFrequency {
 public:
  explicit ModeFrequency(double omega_rad_s);
  double value() const { return omega_; }

 private:
  double omega_;
};

/// Thermodynamic temperature, kelvin. Strictly positive and finite.
class Temperature {
 public:
  explicit Temperature(double kelvin);
  double kelvin() const { return kelvin_; }

 private:
  double kelvin_;
};

enum class SourceKind { thermal, squeezed };

/// Truncated photon-number law P(n), n = 0..n_max, plus the exact geometric
/// mass above the truncation. probs.sum() + tail_mass == 1.
struct NumberDistribution {
  std::vector<double> probs;
  double tail_mass = 0.0;
};

/// Joint photon-number law of one squeezed mode pair. Support is the
/// diagonal n_a == n_b only; probability(i, j) is identically zero off it.
struct JointNumberDistribution {
  std::vector<double> diag;  // P(n, n), n = 0..n_max
  double tail_mass = 0.0;

  double probability(std::size_t n_a, std::size_t n_b) const {
    if (n_a != n_b || n_a >= diag.size()) return 0.0;
    return diag[n_a];
  }
};

/// Closed-form prediction for Var(N_a - N_b) at two back-to-back detectors.
struct PairVariancePrediction {
  double value;
  SourceKind source_kind;
};

/// <N> = sinh^2(zeta) for one mode of the squeezed pair.
double mean_occupation_squeezed(SqueezeParameter zeta);

/// Geometric ratio t^2 = tanh^2(zeta) of the single-mode reduced law.
double geometric_ratio_squeezed(SqueezeParameter zeta);

/// Single-mode reduced law P(n) = (1 - t^2) t^{2n}, t = tanh(zeta).
NumberDistribution number_distribution_squeezed(SqueezeParameter zeta,
                                                std::size_t n_max);

/// Pair law P(n, n) = (1 - t^2) t^{2n}; photons always come in equal pairs.
JointNumberDistribution joint_number_distribution_squeezed(
    SqueezeParameter zeta, std::size_t n_max);

/// Squeezing strength a thermal occupation at (omega, T) corresponds to:
/// tanh(zeta) = exp(-hbar omega / (2 k_B T)).
/// Throws std::domain_error when hbar omega / (k_B T) is so small that the
/// map degenerates (tanh argument within one ulp of 1).
SqueezeParameter squeeze_from_temperature(ModeFrequency omega, Temperature T,
                                          const PhysicalConstants& pc);

/// Temperature whose thermal statistics the squeezed mode mimics:
/// k_B T = hbar omega / (2 ln coth zeta). nullopt signals the distinguished
/// zero-temperature result for zeta = 0 (vacuum).
std::optional<Temperature> effective_temperature(ModeFrequency omega,
                                                 SqueezeParameter zeta,
                                                 const PhysicalConstants& pc);

/// Bose-Einstein occupation 1 / (exp(hbar omega / k_B T) - 1).
/// Underflows smoothly deep in the Wien limit instead of hitting 0/0.
double thermal_mean_occupation(ModeFrequency omega, Temperature T,
                               const PhysicalConstants& pc);

/// Bose-Einstein (geometric) law P(n) = nbar^n / (nbar + 1)^{n+1}.
NumberDistribution number_distribution_thermal(double nbar, std::size_t n_max);

/// Var(N_a - N_b) for two independent thermal modes:
/// nbar_a (nbar_a + 1) + nbar_b (nbar_b + 1).
PairVariancePrediction pair_variance_thermal(double nbar_a, double nbar_b);

/// Var(N_a - N_b) for an ideal two-mode squeezed pair: exactly zero.
PairVariancePrediction pair_variance_squeezed();

/// ln(coth x) for x > 0, stable at both ends (x -> 0 and x >> 1).
double log_coth(double x);

}  // namespace pairtherm::states
