//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "pairtherm/states.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pairtherm::states {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(what) + " must be finite");
  }
}

/// Truncated geometric law with ratio p in [0, 1): P(n) = (1 - p) p^n.
NumberDistribution geometric_distribution(double p, std::size_t n_max) {
  NumberDistribution d;
  d.probs.resize(n_max + 1);
  if (p <= 0.0) {
    d.probs[0] = 1.0;
    d.tail_mass = 0.0;
    return d;
  }
  const double head = 1.0 - p;
  double power = 1.0;  // p^n
  for (std::size_t n = 0; n <= n_max; ++n) {
    d.probs[n] = head * power;
    power *= p;
  }
  d.tail_mass = power;  // p^{n_max + 1}
  return d;
}

}  // namespace

SqueezeParameter::SqueezeParameter(double zeta) : zeta_(zeta) {
  require_finite(zeta, "squeeze parameter");
  if (zeta < 0.0) throw std::domain_error("squeeze parameter must be >= 0");
}

ModeFrequency::ModeFrequency(double omega_rad_s) : omega_(omega_rad_s) {
  require_finite(omega_rad_s, "mode frequency");
  if (omega_rad_s <= 0.0) throw std::domain_error("mode frequency must be > 0");
}

Temperature::Temperature(double kelvin) : kelvin_(kelvin) {
  require_finite(kelvin, "temperature");
  if (kelvin <= 0.0) throw std::domain_error("temperature must be > 0");
}

double mean_occupation_squeezed(SqueezeParameter zeta) {
  const double s = std::sinh(zeta.value());
  return s * s;
}

double geometric_ratio_squeezed(SqueezeParameter zeta) {
  const double t = std::tanh(zeta.value());
  return t * t;
}

NumberDistribution number_distribution_squeezed(SqueezeParameter zeta,
                                                std::size_t n_max) {
  return geometric_distribution(geometric_ratio_squeezed(zeta), n_max);
}

JointNumberDistribution joint_number_distribution_squeezed(
    SqueezeParameter zeta, std::size_t n_max) {
  NumberDistribution single = number_distribution_squeezed(zeta, n_max);
  JointNumberDistribution joint;
  joint.diag = std::move(single.probs);
  joint.tail_mass = single.tail_mass;
  return joint;
}

double log_coth(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_coth requires x > 0");
  // coth x = (1 + e^{-2x}) / (1 - e^{-2x})
  const double e = std::exp(-2.0 * x);
  return std::log1p(e) - std::log(-std::expm1(-2.0 * x));
}

SqueezeParameter squeeze_from_temperature(ModeFrequency omega, Temperature T,
                                          const PhysicalConstants& pc) {
  const double x = pc.hbar * omega.value() / (pc.k_B * T.kelvin());
  // zeta = artanh(y), y = e^{-x/2}. Each end needs its own accurate form of
  // log(1 - y): log1p(-y) keeps tiny y (1 - y rounds to 1 otherwise), the
  // expm1 form keeps 1 - y when y is within a few ulp of 1.
  const double y = std::exp(-0.5 * x);
  const double one_minus = -std::expm1(-0.5 * x);
  if (one_minus < std::numeric_limits<double>::epsilon()) {
    // e^{-x/2} within one ulp of 1: artanh would blow up
    throw std::domain_error(
        "squeeze_from_temperature: hbar*omega/(k_B*T) too small, squeeze "
        "parameter overflows");
  }
  const double log_one_minus =
      x > 1.0 ? std::log1p(-y) : std::log(one_minus);
  return SqueezeParameter(0.5 * (std::log1p(y) - log_one_minus));
}

std::optional<Temperature> effective_temperature(ModeFrequency omega,
                                                 SqueezeParameter zeta,
                                                 const PhysicalConstants& pc) {
  if (zeta.value() == 0.0) return std::nullopt;  // zero-temperature signal
  const double denom = 2.0 * log_coth(zeta.value());
  return Temperature(pc.hbar * omega.value() / (pc.k_B * denom));
}

double thermal_mean_occupation(ModeFrequency omega, Temperature T,
                               const PhysicalConstants& pc) {
  const double x = pc.hbar * omega.value() / (pc.k_B * T.kelvin());
  // 1/(e^x - 1) = e^{-x} / (1 - e^{-x}); underflows gracefully for large x
  return std::exp(-x) / (-std::expm1(-x));
}

NumberDistribution number_distribution_thermal(double nbar,
                                               std::size_t n_max) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw std::domain_error("thermal occupation must be >= 0 and finite");
  }
  return geometric_distribution(nbar / (nbar + 1.0), n_max);
}

PairVariancePrediction pair_variance_thermal(double nbar_a, double nbar_b) {
  if (!(nbar_a >= 0.0) || !(nbar_b >= 0.0)) {
    throw std::domain_error("thermal occupations must be >= 0");
  }
  return {nbar_a * (nbar_a + 1.0) + nbar_b * (nbar_b + 1.0),
          SourceKind::thermal};
}

PairVariancePrediction pair_variance_squeezed() {
  return {0.0, SourceKind::squeezed};
}

}  // namespace pairtherm::states
