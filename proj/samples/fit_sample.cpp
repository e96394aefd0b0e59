// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

// Builds a synthetic spectrum, fits it back, and prints the recovered
// parameters.

#include <cstdio>
#include <vector>

#include "phnu/phnu.hpp"

int main() {
  const phnu::MolecularParams truth{9.5, 1.2, 6.9};
  std::vector<phnu::ObservedLevel> obs;
  for (int n = 0; n <= 2; ++n) {
    for (int l = 0; l <= n; ++l) obs.push_back({n, l, phnu::energy(truth, {n, l})});
  }
  const phnu::FitResult fit = phnu::fit_parameters(obs, truth.mu_amu);
  std::printf("V0 = %.12g eV (true %.12g)\n", fit.params.V0_eV, truth.V0_eV);
  std::printf("r0 = %.12g A  (true %.12g)\n", fit.params.r0_A, truth.r0_A);
  std::printf("max residual %.3e eV after %d iterations\n",
              fit.diagnostics.max_residual_eV, fit.diagnostics.iterations);
  std::printf("%s\n", phnu::format_record({"synthetic", fit.params, "round trip"}).c_str());
  return 0;
}
