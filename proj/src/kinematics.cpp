//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "pairtherm/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pairtherm::kinematics {

namespace detail {

double shape_normalized_closed(double x) {
  // sin x - x cos x loses ~2 eps / x^2 relative digits to cancellation near
  // zero; extended precision keeps the branch good down to the series switch.
  const long double xl = x;
  const long double num = std::sin(xl) - xl * std::cos(xl);
  return static_cast<double>(3.0L * num / (xl * xl * xl));
}

double shape_normalized_series(double x) {
  const double x2 = x * x;
  return 1.0 +
         x2 * (-1.0 / 10.0 +
               x2 * (1.0 / 280.0 +
                     x2 * (-1.0 / 15120.0 + x2 * (1.0 / 1330560.0))));
}

double angular_density_x(double x) {
  const double s = form_factor_shape_normalized(x);
  return s * s * x;
}

}  // namespace detail

namespace {

// Series / closed-form switch for the shape function
constexpr double kSeriesSwitch = 1e-3;

// Envelope crossover for the angular sampler: beyond this the tail bound
// 9 (1 + x^2) / x^5 dips below the bulk bound x. Any value in the valid
// range works; this sits near the true crossing at x ~ 1.845.
constexpr double kEnvelopeSplit = 1.85;

}  // namespace

BubbleGeometry::BubbleGeometry(double radius_m) : radius_(radius_m) {
  if (!std::isfinite(radius_m) || radius_m <= 0.0) {
    throw std::domain_error("bubble radius must be > 0 and finite");
  }
}

MomentumPair::MomentumPair(const Eigen::Vector3d& k1_in,
                           const Eigen::Vector3d& k2_in)
    : k1(k1_in), k2(k2_in) {
  if (!k1.allFinite() || !k2.allFinite() || k1.norm() == 0.0 ||
      k2.norm() == 0.0) {
    throw std::domain_error("momentum vectors must be finite and nonzero");
  }
}

double form_factor_shape_normalized(double x) {
  if (x < kSeriesSwitch) return detail::shape_normalized_series(x);
  return detail::shape_normalized_closed(x);
}

double form_factor_shape(double x) {
  return (4.0 * std::numbers::pi / 3.0) * form_factor_shape_normalized(x);
}

double form_factor(double q, const BubbleGeometry& geometry) {
  if (!std::isfinite(q) || q < 0.0) {
    throw std::domain_error("wavenumber q must be >= 0 and finite");
  }
  const double r = geometry.radius();
  return r * r * r * form_factor_shape(q * r);
}

double pair_weight(const MomentumPair& pair,
                   const bogolubov::RefractiveTransition& profile,
                   const BubbleGeometry& geometry,
                   const PhysicalConstants& pc) {
  const double k_mean = 0.5 * (pair.k1.norm() + pair.k2.norm());
  const double dynamics = bogolubov::beta_squared_diagonal(profile, k_mean, pc);
  const double s = form_factor((pair.k1 + pair.k2).norm(), geometry);
  return dynamics * s * s;
}

AngularSample sample_pair_direction(double k_mag,
                                    const BubbleGeometry& geometry,
                                    rng::Stream& stream) {
  if (!(k_mag > 0.0) || !std::isfinite(k_mag)) {
    throw std::domain_error("momentum magnitude must be > 0 and finite");
  }
  // Substitution x = |k1 + k2| R = 2 k R sin(theta/2) turns the density
  // |S|^2 sin(theta) d(theta) into s_n(x)^2 x dx on (0, X], X = 2 k R.
  // Rejection against a two-piece envelope:
  //   bulk x in (0, a]: s_n^2 <= 1            -> envelope x
  //   tail x in (a, X]: s_n^2 x <= 9(1+x^2)/x^5  (from |sin x - x cos x|^2
  //                      <= 1 + x^2)
  // Both pieces invert in closed form, so the draw is exact for every k R.
  const double x_max = 2.0 * k_mag * geometry.radius();
  const double a = std::min(x_max, kEnvelopeSplit);
  const double w_bulk = 0.5 * a * a;
  double w_tail = 0.0;
  if (x_max > kEnvelopeSplit) {
    const double y0 = 1.0 / (kEnvelopeSplit * kEnvelopeSplit);
    const double y1 = 1.0 / (x_max * x_max);
    w_tail = 9.0 * ((y0 * y0 - y1 * y1) / 4.0 + (y0 - y1) / 2.0);
  }

  for (;;) {
    const double r = stream.next_uniform() * (w_bulk + w_tail);
    double x;
    double accept;
    if (r < w_bulk) {
      x = a * std::sqrt(r / w_bulk);
      const double s = form_factor_shape_normalized(x);
      accept = s * s;
    } else {
      const double v = (r - w_bulk) / w_tail;  // U(0,1) within the tail
      const double y0 = 1.0 / (kEnvelopeSplit * kEnvelopeSplit);
      const double rhs =
          (4.0 / 9.0) * ((9.0 / 4.0) * y0 * y0 + (9.0 / 2.0) * y0 - v * w_tail);
      // stable positive root of y^2 + 2y - rhs = 0
      const double y = rhs / (1.0 + std::sqrt(1.0 + rhs));
      x = 1.0 / std::sqrt(y);
      const double num = std::sin(x) - x * std::cos(x);
      accept = num * num / (1.0 + x * x);
    }
    if (stream.next_uniform() < accept) {
      const double half_sin = std::min(1.0, x / x_max);
      return {2.0 * std::asin(half_sin)};
    }
  }
}

double planewave_validity(states::ModeFrequency omega, double n,
                          const BubbleGeometry& geometry,
                          const PhysicalConstants& pc) {
  if (!std::isfinite(n) || n < 1.0) {
    throw std::domain_error("refractive index must be finite and >= 1");
  }
  return omega.value() * n * geometry.radius() / pc.c;
}

}  // namespace pairtherm::kinematics
