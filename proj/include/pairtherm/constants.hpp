//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

namespace pairtherm {

/// Physical constants used to convert between frequencies, temperatures and
/// lengths. Either the CODATA 2018 exact SI values or all-ones natural units
/// (hbar = c = k_B = 1).
struct PhysicalConstants {
  double hbar;  // J s
  double k_B;   // J / K
  double c;     // m / s
};

constexpr PhysicalConstants codata2018() {
  return {1.054571817e-34, 1.380649e-23, 2.99792458e8};
}

constexpr PhysicalConstants natural_units() { return {1.0, 1.0, 1.0}; }

}  // namespace pairtherm
