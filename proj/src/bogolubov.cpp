//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "pairtherm/bogolubov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pairtherm::bogolubov {

namespace detail {

double log_sinh(double x) {
  return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

double beta_squared_direct(double x_num, double x_a, double x_b) {
  const double s = std::sinh(x_num);
  return s * s / (std::sinh(x_a) * std::sinh(x_b));
}

double beta_squared_logspace(double x_num, double x_a, double x_b) {
  return std::exp(2.0 * log_sinh(x_num) - log_sinh(x_a) - log_sinh(x_b));
}

double beta_squared_ck_tau(const RefractiveTransition& profile,
                           double ck_tau) {
  if (profile.n_in() == profile.n_out()) return 0.0;
  const double x_num = ck_tau * std::abs(profile.n_in() - profile.n_out());
  const double x_a = 2.0 * ck_tau * profile.n_in();
  const double x_b = 2.0 * ck_tau * profile.n_out();
  if (std::max({x_num, x_a, x_b}) > 30.0) {
    return beta_squared_logspace(x_num, x_a, x_b);
  }
  return beta_squared_direct(x_num, x_a, x_b);
}

}  // namespace detail

RefractiveTransition::RefractiveTransition(double n_in, double n_out,
                                           double t0_seconds)
    : n_in_(n_in), n_out_(n_out), t0_(t0_seconds) {
  if (!std::isfinite(n_in) || n_in < 1.0) {
    throw std::domain_error("refractive index n_in must be finite and >= 1");
  }
  if (!std::isfinite(n_out) || n_out < 1.0) {
    throw std::domain_error("refractive index n_out must be finite and >= 1");
  }
  if (!std::isfinite(t0_seconds) || t0_seconds <= 0.0) {
    throw std::domain_error("switching timescale t_0 must be > 0");
  }
}

TimeScaleTau tau(const RefractiveTransition& p) {
  return {std::numbers::pi * p.t0() / (p.n_in() * p.n_in() + p.n_out() * p.n_out())};
}

double beta_squared_diagonal(const RefractiveTransition& profile, double k,
                             const PhysicalConstants& pc) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::domain_error("wavenumber k must be > 0 and finite");
  }
  return detail::beta_squared_ck_tau(profile, pc.c * k * tau(profile).tau);
}

double beta_squared_adiabatic(const RefractiveTransition& profile,
                              states::ModeFrequency omega_out) {
  const double n_min = std::min(profile.n_in(), profile.n_out());
  return std::exp(-4.0 * n_min * profile.n_out() * omega_out.value() *
                  tau(profile).tau);
}

states::SqueezeParameter squeeze_from_beta(double beta_sq) {
  if (!std::isfinite(beta_sq) || beta_sq < 0.0) {
    throw std::domain_error("|beta|^2 must be >= 0 and finite");
  }
  return states::SqueezeParameter(std::asinh(std::sqrt(beta_sq)));
}

AdiabaticTemperatureReport effective_temperature_adiabatic(
    const RefractiveTransition& profile, const PhysicalConstants& pc) {
  const double n_min = std::min(profile.n_in(), profile.n_out());
  const double n_sum_sq =
      profile.n_in() * profile.n_in() + profile.n_out() * profile.n_out();

  AdiabaticTemperatureReport report;
  report.formula_kelvin = pc.hbar / (8.0 * std::numbers::pi * profile.t0()) *
                          n_sum_sq / (profile.n_out() * n_min) / pc.k_B;

  // Deep in the adiabatic region: pick omega so the Boltzmann exponent is 40
  const double t = tau(profile).tau;
  report.reference_omega = 10.0 / (n_min * profile.n_out() * t);
  const states::ModeFrequency omega_ref(report.reference_omega);
  const auto zeta =
      squeeze_from_beta(beta_squared_adiabatic(profile, omega_ref));
  const auto temp = states::effective_temperature(omega_ref, zeta, pc);
  report.composed_kelvin = temp ? temp->kelvin() : 0.0;
  report.composed_to_formula_ratio =
      report.composed_kelvin / report.formula_kelvin;
  return report;
}

BetaSpectrum build_spectrum(const RefractiveTransition& profile,
                            const Eigen::ArrayXd& omega_grid,
                            const PhysicalConstants& pc) {
  const auto n = omega_grid.size();
  if (n == 0) throw std::domain_error("frequency grid must be non-empty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(omega_grid[i] > 0.0) || !std::isfinite(omega_grid[i])) {
      throw std::domain_error("frequency grid must be positive and finite");
    }
    if (i > 0 && omega_grid[i] <= omega_grid[i - 1]) {
      throw std::domain_error("frequency grid must be strictly increasing");
    }
  }

  BetaSpectrum s;
  s.omegas = omega_grid;
  s.beta_sq.resize(n);
  s.zetas.resize(n);
  s.temps_kelvin.resize(n);
  const double t = tau(profile).tau;
  for (Eigen::Index i = 0; i < n; ++i) {
    // c k tau with k = n_out omega / c: the speed of light cancels exactly,
    // keeping dimensionless columns bit-identical across unit systems
    s.beta_sq[i] =
        detail::beta_squared_ck_tau(profile, profile.n_out() * omega_grid[i] * t);
    const auto zeta = squeeze_from_beta(s.beta_sq[i]);
    s.zetas[i] = zeta.value();
    const auto temp = states::effective_temperature(
        states::ModeFrequency(omega_grid[i]), zeta, pc);
    s.temps_kelvin[i] = temp ? temp->kelvin() : 0.0;
  }
  s.density = s.omegas.square() * s.beta_sq;
  return s;
}

FineTuningReport fine_tuning_residual(const BetaSpectrum& spectrum,
                                      double omega_lo, double omega_hi) {
  std::vector<double> kappas;
  for (Eigen::Index i = 0; i < spectrum.omegas.size(); ++i) {
    const double omega = spectrum.omegas[i];
    if (omega < omega_lo || omega > omega_hi) continue;
    if (spectrum.zetas[i] == 0.0) {
      throw std::domain_error(
          "fine_tuning_residual: window contains zeta = 0 (degenerate input)");
    }
    kappas.push_back(states::log_coth(spectrum.zetas[i]) / omega);
  }
  if (kappas.size() < 3) {
    throw std::domain_error(
        "fine_tuning_residual: window intersects the grid in fewer than 3 "
        "points");
  }

  FineTuningReport report;
  report.kappas =
      Eigen::Map<const Eigen::ArrayXd>(kappas.data(), kappas.size());
  const double mean = report.kappas.mean();
  const double sd = std::sqrt((report.kappas - mean).square().mean());
  report.coefficient_of_variation = sd / mean;
  return report;
}

}  // namespace pairtherm::bogolubov
