//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <Eigen/Core>

#include "pairtherm/constants.hpp"
#include "pairtherm/states.hpp"

namespace pairtherm::bogolubov {

/// Two-epoch refractive-index transition of a homogeneous medium:
/// index n_in before, n_out after, switching on timescale t_0.
class RefractiveTransition {
 public:
  RefractiveTransition(double n_in, double n_out, double t0_seconds);
  double n_in() const { return n_in_; }
  double n_out() const { return n_out_; }
  double t0() const { return t0_; }

 private:
  double n_in_, n_out_, t0_;
};

/// tau = pi t_0 / (n_in^2 + n_out^2), the effective switching timescale.
struct TimeScaleTau {
  double tau;  // s
};

TimeScaleTau tau(const RefractiveTransition& profile);

/// Per-mode pair-creation data on a frequency grid (out-medium frequencies).
/// temps_kelvin uses 0 as the distinguished zero-temperature value where
/// beta_sq vanishes. density is the relative photon-number spectral density
/// omega^2 |beta|^2 (isotropic mode counting; absolute scale arbitrary).
struct BetaSpectrum {
  Eigen::ArrayXd omegas;        // rad/s, strictly increasing
  Eigen::ArrayXd beta_sq;       // |beta|^2 >= 0
  Eigen::ArrayXd zetas;         // arsinh(sqrt(beta_sq))
  Eigen::ArrayXd temps_kelvin;  // effective temperature per mode, 0 for zeta=0
  Eigen::ArrayXd density;       // omega^2 |beta|^2, relative units
};

/// Is one temperature enough for the whole window? kappa_k = ln coth(zeta_k)
/// / omega_k must be frequency-independent; the coefficient of variation of
/// kappa over the window is the scalar residual.
struct FineTuningReport {
  Eigen::ArrayXd kappas;  // s
  double coefficient_of_variation;
};

/// Diagonal pair-creation factor |beta|^2 at comoving wavenumber k (1/m),
/// with the finite-volume delta factor stripped (the kinematics module
/// reinstates it). Wavenumber is conserved through the transition and
/// omega = c k / n in each epoch, so every argument is a multiple of c k tau.
/// Evaluated in log space once any sinh argument exceeds 30.
double beta_squared_diagonal(const RefractiveTransition& profile, double k,
                             const PhysicalConstants& pc);

/// Large-frequency (adiabatic) limit:
/// |beta|^2 = exp(-4 min(n_in, n_out) n_out omega_out tau).
double beta_squared_adiabatic(const RefractiveTransition& profile,
                              states::ModeFrequency omega_out);

/// zeta = arsinh(sqrt(|beta|^2)), from <N> = sinh^2 zeta = |beta|^2.
states::SqueezeParameter squeeze_from_beta(double beta_sq);

/// The frequency-independent effective temperature of the adiabatic region,
/// two ways: the closed-form value
///   k_B T = (hbar / (8 pi t_0)) (n_in^2 + n_out^2) / (n_out min(n_in,n_out))
/// and the value composed through the chain
///   beta_squared_adiabatic -> squeeze_from_beta -> effective_temperature
/// at a deep-adiabatic reference frequency. The two disagree by a constant
/// factor (ratio ~ 2); both are reported rather than silently reconciling.
struct AdiabaticTemperatureReport {
  double formula_kelvin;
  double composed_kelvin;
  double composed_to_formula_ratio;
  double reference_omega;  // rad/s where the chain was evaluated
};

AdiabaticTemperatureReport effective_temperature_adiabatic(
    const RefractiveTransition& profile, const PhysicalConstants& pc);

/// Evaluate |beta|^2, zeta and the effective temperature on a strictly
/// increasing grid of out-medium frequencies.
BetaSpectrum build_spectrum(const RefractiveTransition& profile,
                            const Eigen::ArrayXd& omega_grid,
                            const PhysicalConstants& pc);

/// Fine-tuning residual over grid points with omega in [omega_lo, omega_hi].
/// Throws std::domain_error when fewer than 3 grid points fall in the window
/// or any zeta in the window is zero (degenerate input).
FineTuningReport fine_tuning_residual(const BetaSpectrum& spectrum,
                                      double omega_lo, double omega_hi);

namespace detail {

/// ln sinh(x) without overflow: x - ln 2 + log1p(-e^{-2x}).
double log_sinh(double x);

/// sinh^2(x_num) / (sinh(x_a) sinh(x_b)), direct evaluation.
double beta_squared_direct(double x_num, double x_a, double x_b);

/// Same ratio evaluated in log space.
double beta_squared_logspace(double x_num, double x_a, double x_b);

/// |beta|^2 as a function of the dimensionless argument c k tau. All public
/// entry points funnel through here, so equal arguments give equal bits
/// regardless of the unit system they came from.
double beta_squared_ck_tau(const RefractiveTransition& profile, double ck_tau);

}  // namespace detail

}  // namespace pairtherm::bogolubov
