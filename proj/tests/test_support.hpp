// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "phnu/phnu.hpp"

#ifndef PHNU_SOURCE_DIR
#error "PHNU_SOURCE_DIR must point at the repository root"
#endif

namespace phnu::testing {

inline std::string source_path(const std::string& rel) {
  return std::string(PHNU_SOURCE_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Published energies for one molecule, in table order.
inline std::vector<ObservedLevel> published_levels(const std::string& molecule) {
  return parse_observations(read_file(source_path("data/table1/" + molecule + ".csv")));
}

inline const MoleculeRecord& shipped(const std::string& name) {
  return *find_molecule(default_registry(), name);
}

inline const std::vector<std::string>& molecule_names() {
  static const std::vector<std::string> names{"N2", "CO", "NO", "CH"};
  return names;
}

/// V0 = 1/2, r0 = 1, mu = 1 with hbar = 1: E = 2n + sqrt(5)/2 at l = 0.
inline constexpr MolecularParams kNaturalCase{0.5, 1.0, 1.0};

/// Random molecule-like parameters.
inline MolecularParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v0(1.0, 15.0), r0(0.8, 2.0), mu(0.5, 20.0);
  const double a = v0(rng);
  const double b = r0(rng);
  return {a, b, mu(rng)};
}

/// Largest relative residual of u = r R in u'' = (V_eff - E) u / t over
/// r in [0.3 r0, 3 r0], with u'' from central differences at steps h and
/// h/2 combined by Richardson extrapolation.
///
/// Everything is evaluated relative to u(r) through ln|R|, so nothing
/// under- or overflows, and the residual is scaled by the largest
/// |(V_eff - E) u / t| on the sample points.
inline double ode_residual(const MolecularParams& p, const QuantumNumbers& qn,
                           const PhysicalConstants& k = kCodata2018, int samples = 200) {
  const RadialWavefunction wf = wavefunction(p, qn, k);
  const double e = energy(p, qn, k);
  const double t = 0.5 * hbar2_over(p.mu_amu, 1.0, k);
  const double h = 1e-3 / std::sqrt(wf.rate());
  auto log_u = [&](double r) {
    const auto [lg, sign] = wf.log_abs(r);
    return std::pair{lg + std::log(r), sign};
  };
  auto second = [&](double r, double step) {
    // u''(r) / u(r)
    const auto [l0, s0] = log_u(r);
    const auto [lp, sp] = log_u(r + step);
    const auto [lm, sm] = log_u(r - step);
    const double rp = sp * s0 * std::exp(lp - l0);
    const double rm = sm * s0 * std::exp(lm - l0);
    return (rp + rm - 2.0) / (step * step);
  };
  std::vector<double> log_res, log_scale;
  for (int i = 0; i < samples; ++i) {
    const double r = p.r0_A * (0.3 + 2.7 * (i + 0.5) / samples);
    const auto [lu, su] = log_u(r);
    if (su == 0) continue;
    const double w = (effective_potential(p, qn.l, r, k) - e) / t;
    const double d2 = (4.0 * second(r, 0.5 * h) - second(r, h)) / 3.0;
    log_res.push_back(std::log(std::abs(d2 - w) + 1e-300) + lu);
    log_scale.push_back(std::log(std::abs(w) + 1e-300) + lu);
  }
  const double top = *std::max_element(log_scale.begin(), log_scale.end());
  double worst = 0.0;
  for (double lr : log_res) worst = std::max(worst, std::exp(lr - top));
  return worst;
}

/// int R_a R_b r^2 dr by the semi-infinite quadrature.
inline double overlap(const RadialWavefunction& a, const RadialWavefunction& b, double scale) {
  return integrate_semiinf(
      [&](double r) {
        const auto [la, sa] = a.log_abs(r);
        const auto [lb, sb] = b.log_abs(r);
        if (sa == 0 || sb == 0) return 0.0;
        return sa * sb * std::exp(la + lb + 2.0 * std::log(r));
      },
      scale, 20, 1e-12);
}

/// Sign changes of R on a fine logarithmic scan.
inline int node_count(const RadialWavefunction& wf, double r_lo, double r_hi, int points = 20000) {
  int changes = 0;
  int last = 0;
  const double step = std::log(r_hi / r_lo) / points;
  for (int i = 0; i <= points; ++i) {
    const int s = wf.log_abs(r_lo * std::exp(i * step)).second;
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace phnu::testing
