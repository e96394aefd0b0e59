// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

// Prints a few N2 levels from the built-in registry and checks the ground
// state against both numerical solvers.

#include <cstdio>

#include "phnu/phnu.hpp"

int main() {
  const phnu::MoleculeRecord* n2 = phnu::find_molecule(phnu::default_registry(), "N2");
  const phnu::MolecularParams& p = n2->params;

  for (int n = 0; n <= 2; ++n) {
    for (int l = 0; l <= n; ++l) {
      std::printf("E(%d,%d) = %.8f eV\n", n, l, phnu::energy(p, {n, l}));
    }
  }

  namespace num = phnu::numeric;
  const num::RadialGrid grid = num::default_grid(p, 0);
  const auto coarse = num::fd_spectrum(p, 0, grid, 2);
  const auto fine = num::fd_spectrum(p, 0, num::halved(grid), 2);
  const double fd = num::richardson(coarse.eigenvalues[0], fine.eigenvalues[0], 2);
  const auto bracket = num::brackets_from(fine.eigenvalues)[0];
  const double nv = num::richardson(num::numerov_shoot(p, 0, 0, grid, bracket),
                                    num::numerov_shoot(p, 0, 0, num::halved(grid), bracket), 4);
  std::printf("ground state: closed %.10f  fd %.10f  numerov %.10f\n",
              phnu::energy(p, {0, 0}), fd, nv);

  const phnu::RadialWavefunction wf = phnu::wavefunction(p, {0, 0});
  std::printf("R(r0) = %.6e A^-3/2\n", wf(p.r0_A));
  return 0;
}
