//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <Eigen/Core>

#include "pairtherm/bogolubov.hpp"
#include "pairtherm/constants.hpp"
#include "pairtherm/rng.hpp"

namespace pairtherm::kinematics {

/// Emitting bubble of radius R; the spatial integration is cut off at its
/// surface.
class BubbleGeometry {
 public:
  explicit BubbleGeometry(double radius_m);
  double radius() const { return radius_; }

 private:
  double radius_;
};

/// A pair of outgoing photon momenta, 1/m.
struct MomentumPair {
  Eigen::Vector3d k1;
  Eigen::Vector3d k2;

  MomentumPair(const Eigen::Vector3d& k1_in, const Eigen::Vector3d& k2_in);
};

/// Angle between k2 and -k1: zero for exactly back-to-back emission.
struct AngularSample {
  double deviation_angle;  // rad, in [0, pi]
};

/// Finite-bubble form factor, m^3:
///   S(q, R) = (4 pi / q^3) [sin(qR) - qR cos(qR)],  S(0, R) = (4/3) pi R^3.
double form_factor(double q, const BubbleGeometry& geometry);

/// Dimensionless shape s(x) with S(q, R) = R^3 s(qR); s(0) = 4 pi / 3.
double form_factor_shape(double x);

/// s(x) normalized to 1 at x = 0: 3 (sin x - x cos x) / x^3.
double form_factor_shape_normalized(double x);

/// Pair-creation weight F * |S(|k1 + k2| R)|^2 with the dynamical factor F
/// taken as the diagonal |beta|^2 at the mean magnitude (|k1| + |k2|) / 2.
double pair_weight(const MomentumPair& pair,
                   const bogolubov::RefractiveTransition& profile,
                   const BubbleGeometry& geometry,
                   const PhysicalConstants& pc);

/// Draw the deviation angle of the second photon from the back-to-back
/// direction, for equal momentum magnitudes k_mag: density proportional to
/// |S(2 k sin(theta/2) R)|^2 sin(theta) on [0, pi]. Exact rejection sampler;
/// deterministic given the stream state.
AngularSample sample_pair_direction(double k_mag,
                                    const BubbleGeometry& geometry,
                                    rng::Stream& stream);

/// Plane-wave validity ratio rho = omega n R / c; the approximation needs
/// the in-medium wavelength small against the bubble, rho >= 10.
double planewave_validity(states::ModeFrequency omega, double n,
                          const BubbleGeometry& geometry,
                          const PhysicalConstants& pc);

inline constexpr double kPlanewaveValidityThreshold = 10.0;

namespace detail {

/// Closed-form branch of the normalized shape (long-double intermediates;
/// the direct difference cancels near zero).
double shape_normalized_closed(double x);

/// Series branch, valid and fully accurate for |x| <= 1e-2.
double shape_normalized_series(double x);

/// Unnormalized angular density in the variable x = qR: s_n(x)^2 * x.
double angular_density_x(double x);

}  // namespace detail

}  // namespace pairtherm::kinematics
