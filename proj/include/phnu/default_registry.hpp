// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "phnu/molecules.hpp"

namespace phnu {

/// Text of data/molecules.reg, compiled in so the tools work without it.
inline constexpr std::string_view kDefaultRegistryText = R"reg(
# Pseudoharmonic molecular parameters (eV, Angstrom, amu).
# Only V0 and mu*r0^2 are fixed by a spectrum; mu is an input.
[molecule] name=N2  V0_eV=11.9340208967  r0_A=1.09423086365  mu_amu=7.00153700221  provenance="back-fitted to the published pseudoharmonic energy table, rows n<=2; mu from 14N-14N isotopic masses; r0 follows from the chosen mu"
[molecule] name=CO  V0_eV=10.841294611  r0_A=1.1286527383  mu_amu=6.856208638  provenance="back-fitted to the published pseudoharmonic energy table, rows n<=2; mu from 12C-16O isotopic masses; r0 follows from the chosen mu"
[molecule] name=NO  V0_eV=8.04097117122  r0_A=1.15105238084  mu_amu=7.46643303055  provenance="back-fitted to the published pseudoharmonic energy table, rows n<=2; mu from 14N-16O isotopic masses; r0 follows from the chosen mu"
[molecule] name=CH  V0_eV=3.94604225819  r0_A=1.12000659738  mu_amu=0.929740395246  provenance="back-fitted to the published pseudoharmonic energy table, rows n<=2; mu from 12C-1H isotopic masses; r0 follows from the chosen mu; the table column is headed CH while its caption names NH, the numbers are reproduced under the column label"
)reg";

inline const std::vector<MoleculeRecord>& default_registry() {
  static const std::vector<MoleculeRecord> reg = parse_registry(kDefaultRegistryText);
  return reg;
}

}  // namespace phnu
