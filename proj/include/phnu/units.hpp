// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phnu/error.hpp"

namespace phnu {

/// Internal unit system: energies in eV, lengths in Angstrom, masses in amu.
///
/// Only two constants are stored; hbar^2/(amu * A^2) is derived from them so
/// that every hbar-dependent term in the library goes through one number.
struct PhysicalConstants {
  double hbar_c_eV_A;  // hbar * c, eV * Angstrom
  double amu_c2_eV;    // atomic mass unit * c^2, eV

  /// hbar^2 / (1 amu * 1 A^2) in eV.
  constexpr double hbar2_over_amu_A2() const {
    return hbar_c_eV_A * hbar_c_eV_A / amu_c2_eV;
  }
};

// CODATA 2018: hbar c = 197.3269804 MeV fm, m_u c^2 = 931.49410242 MeV.
inline constexpr PhysicalConstants kCodata2018{1973.269804, 931.49410242e6};

/// hbar = 1 and 1 amu = 1 in a system whose energy unit is "eV" and length
/// unit is "A", so hbar^2/(mu L^2) = 1/(mu L^2). Used for textbook checks.
inline constexpr PhysicalConstants kNaturalUnits{1.0, 1.0};

/// hbar^2 / (m L^2) in eV for a mass in amu and a length in Angstrom.
inline double hbar2_over(double mass_amu, double length_A,
                         const PhysicalConstants& k = kCodata2018) {
  if (!(mass_amu > 0.0) || !(length_A > 0.0)) {
    throw DomainError("hbar2_over: mass and length must be positive");
  }
  return k.hbar2_over_amu_A2() / (mass_amu * length_A * length_A);
}

}  // namespace phnu
