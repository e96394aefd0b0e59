// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace phnu::numeric {
namespace {

using phnu::testing::kNaturalCase;

RadialProblem oscillator() {
  return {0.5, [](double r) { return 0.5 * r * r; }};
}

RadialProblem coulomb() {
  return {0.5, [](double r) { return -1.0 / r; }};
}

TEST(RadialGrid, Validation) {
  EXPECT_THROW((RadialGrid{0.0, 1.0, 200}.validate()), DomainError);
  EXPECT_THROW((RadialGrid{2.0, 1.0, 200}.validate()), DomainError);
  EXPECT_THROW((RadialGrid{0.1, 1.0, 99}.validate()), DomainError);
  const RadialGrid g{0.5, 2.5, 199};
  EXPECT_DOUBLE_EQ(g.spacing(), 0.01);
  EXPECT_DOUBLE_EQ(g.r(g.m + 1), 2.5);
  EXPECT_DOUBLE_EQ(halved(g).spacing(), 0.005);
}

TEST(DefaultGrid, Shape) {
  const MolecularParams& p = phnu::testing::shipped("N2").params;
  const RadialGrid g = default_grid(p, 0);
  EXPECT_EQ(g.m, 4000);
  EXPECT_DOUBLE_EQ(g.r_min_A, p.r0_A / 50.0);
  EXPECT_DOUBLE_EQ(g.r_max_A, 4.0 * p.r0_A);
  const RadialGrid nat = default_grid(kNaturalCase, 0, 4000, kNaturalUnits);
  EXPECT_LT(nat.r_min_A, 1.0 / 50.0);
  EXPECT_DOUBLE_EQ(nat.r_max_A, 1.0 + 8.0 / std::sqrt(0.5));
}

TEST(FdSpectrum, Oscillator3D) {
  const RadialGrid g{1e-12, 12.0, 4000};
  const auto coarse = fd_spectrum(oscillator(), 0, g, 3);
  const auto fine = fd_spectrum(oscillator(), 0, halved(g), 3);
  const double exact[] = {1.5, 3.5, 5.5};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(coarse.eigenvalues[k], exact[k], 1e-4);
    const double rich = richardson(coarse.eigenvalues[k], fine.eigenvalues[k], 2);
    EXPECT_NEAR(rich, exact[k], 1e-8);
    EXPECT_EQ(coarse.node_counts[k], k);
  }
  EXPECT_EQ(coarse.method, Method::fd_sturm);
}

TEST(FdSpectrum, Hydrogen) {
  const RadialGrid g{1e-6, 60.0, 8000};
  const auto s = fd_spectrum(coulomb(), 0, g, 2);
  EXPECT_NEAR(s.eigenvalues[0], -0.5, 1e-3);
  EXPECT_NEAR(s.eigenvalues[1], -0.125, 1e-3);
}

TEST(FdSpectrum, PseudoharmonicNaturalUnits) {
  const RadialProblem prob = radial_problem(kNaturalCase, 0, kNaturalUnits);
  const RadialGrid g = default_grid(kNaturalCase, 0, 4000, kNaturalUnits);
  const auto coarse = fd_spectrum(prob, 0, g, 2);
  const auto fine = fd_spectrum(prob, 0, halved(g), 2);
  const double e0 = richardson(coarse.eigenvalues[0], fine.eigenvalues[0], 2);
  const double e1 = richardson(coarse.eigenvalues[1], fine.eigenvalues[1], 2);
  EXPECT_NEAR(e0, 1.1180340, 1e-7);
  EXPECT_NEAR(e1, 3.1180340, 1e-7);
  EXPECT_NEAR(e0, std::sqrt(5.0) / 2.0, 1e-7);
}

TEST(FdSpectrum, EigenvaluesStrictlyIncreasing) {
  const MolecularParams& p = phnu::testing::shipped("CH").params;
  const auto s = fd_spectrum(p, 2, default_grid(p, 2), 10);
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    EXPECT_LT(s.eigenvalues[i - 1], s.eigenvalues[i]);
  }
  EXPECT_EQ(s.l, 2);
}

TEST(FdSpectrum, NodeCountsMatchIndex) {
  for (const auto& name : phnu::testing::molecule_names()) {
    const MolecularParams& p = phnu::testing::shipped(name).params;
    const auto s = fd_spectrum(p, 1, default_grid(p, 1), 6);
    for (int k = 0; k < 6; ++k) EXPECT_EQ(s.node_counts[k], k) << name;
    EXPECT_LT(s.boundary_amplitude, 1e-10) << name;
  }
}

TEST(FdSpectrum, Errors) {
  const RadialGrid g{0.1, 5.0, 200};
  EXPECT_THROW(fd_spectrum(oscillator(), 0, g, 0), DomainError);
  EXPECT_THROW(fd_spectrum(oscillator(), 0, g, 51), DomainError);
  // Truncating the N2 well just past r0 leaves amplitude at the wall.
  const MolecularParams& p = phnu::testing::shipped("N2").params;
  const RadialGrid narrow{0.5 * p.r0_A, 1.03 * p.r0_A, 400};
  SolverOptions strict;
  strict.strict = true;
  EXPECT_THROW(fd_spectrum(p, 0, narrow, 2, strict), BoundaryTruncationError);
  EXPECT_NO_THROW(fd_spectrum(p, 0, narrow, 2));
}

TEST(NumerovShoot, Oscillator3D) {
  const RadialGrid g{1e-10, 12.0, 8000};
  EXPECT_NEAR(numerov_shoot(oscillator(), 0, g, {1.0, 2.0}), 1.5, 1e-8);
  EXPECT_NEAR(numerov_shoot(oscillator(), 2, g, {5.0, 6.0}), 5.5, 1e-8);
}

TEST(NumerovShoot, PseudoharmonicNaturalUnitsAgreesWithFd) {
  const RadialProblem prob = radial_problem(kNaturalCase, 0, kNaturalUnits);
  const RadialGrid g = default_grid(kNaturalCase, 0, 4000, kNaturalUnits);
  const auto fd_c = fd_spectrum(prob, 0, g, 3);
  const auto fd_f = fd_spectrum(prob, 0, halved(g), 3);
  const auto brackets = brackets_from(fd_f.eigenvalues);
  const double num = richardson(numerov_shoot(prob, 1, g, brackets[1]),
                                numerov_shoot(prob, 1, halved(g), brackets[1]), 4);
  EXPECT_NEAR(num, 3.1180340, 1e-7);
  // FD keeps ~3e-8 after extrapolation at this grid.
  EXPECT_NEAR(num, richardson(fd_c.eigenvalues[1], fd_f.eigenvalues[1], 2), 5e-8);
}

TEST(NumerovShoot, N2PublishedLevel) {
  const MolecularParams& p = phnu::testing::shipped("N2").params;
  const RadialGrid g = default_grid(p, 2);
  const auto fd = fd_spectrum(p, 2, g, 6);
  const double e = numerov_shoot(p, 2, 4, g, brackets_from(fd.eigenvalues)[4]);
  EXPECT_NEAR(e, 0.98340031, 5e-7);
}

TEST(NumerovShoot, Errors) {
  const RadialGrid g{1e-8, 12.0, 4000};
  EXPECT_THROW(numerov_shoot(oscillator(), 0, g, {1.6, 3.0}), BracketError);
  EXPECT_THROW(numerov_shoot(oscillator(), 1, g, {1.0, 2.0}), WrongStateError);
  EXPECT_THROW(numerov_shoot(oscillator(), 0, g, {2.0, 1.0}), BracketError);
  EXPECT_THROW(numerov_shoot(oscillator(), -1, g, {1.0, 2.0}), DomainError);
}

TEST(Richardson, Examples) {
  EXPECT_EQ(richardson(2.5, 2.5, 2), 2.5);
  EXPECT_EQ(richardson(2.5, 2.5, 4), 2.5);
  EXPECT_NEAR(richardson(1.6, 1.525, 2), 1.5, 1e-15);
  EXPECT_THROW(richardson(1.0, 1.0, 0), DomainError);
}

TEST(Richardson, ImprovesOscillatorGroundState) {
  const RadialGrid g{1e-8, 12.0, 500};
  const double eh = fd_spectrum(oscillator(), 0, g, 1).eigenvalues[0];
  const double eh2 = fd_spectrum(oscillator(), 0, halved(g), 1).eigenvalues[0];
  EXPECT_LE(std::abs(richardson(eh, eh2, 2) - 1.5), 0.1 * std::abs(eh2 - 1.5));
}

TEST(BracketsFrom, Midpoints) {
  const auto b = brackets_from({1.0, 2.0, 4.0});
  ASSERT_EQ(b.size(), 3u);
  EXPECT_DOUBLE_EQ(b[0].first, 0.5);
  EXPECT_DOUBLE_EQ(b[0].second, 1.5);
  EXPECT_DOUBLE_EQ(b[1].second, 3.0);
  EXPECT_DOUBLE_EQ(b[2].second, 5.0);
}

double order_at(double coarse, double fine, double exact) {
  return std::log2(std::abs(coarse - exact) / std::abs(fine - exact));
}

TEST(NumericProperty, FiniteDifferenceIsSecondOrder) {
  const RadialProblem prob = radial_problem(kNaturalCase, 0, kNaturalUnits);
  const double exact = std::sqrt(5.0) / 2.0;
  for (int m : {500, 1000, 2000}) {
    const RadialGrid g = default_grid(kNaturalCase, 0, m, kNaturalUnits);
    const double a = fd_spectrum(prob, 0, g, 1).eigenvalues[0];
    const double b = fd_spectrum(prob, 0, halved(g), 1).eigenvalues[0];
    const double ratio = std::abs(a - exact) / std::abs(b - exact);
    EXPECT_NEAR(ratio, 4.0, 0.8) << "m=" << m;
  }
}

TEST(NumericProperty, NumerovIsFourthOrder) {
  const RadialProblem prob = radial_problem(kNaturalCase, 0, kNaturalUnits);
  const double exact = std::sqrt(5.0) / 2.0 + 2.0;
  for (int m : {500, 1000}) {
    const RadialGrid g = default_grid(kNaturalCase, 0, m, kNaturalUnits);
    const std::pair<double, double> bracket{2.0, 4.0};
    const double a = numerov_shoot(prob, 1, g, bracket);
    const double b = numerov_shoot(prob, 1, halved(g), bracket);
    EXPECT_NEAR(order_at(a, b, exact), 4.0, 0.4) << "m=" << m;
  }
}

TEST(NumericProperty, MethodsAgreeOnPublishedStates) {
  // At 16000 points FD's leftover h^4 term is below 1e-10 eV.
  for (const auto& name : phnu::testing::molecule_names()) {
    const MolecularParams& p = phnu::testing::shipped(name).params;
    for (int l = 0; l <= 5; ++l) {
      const RadialProblem prob = radial_problem(p, l);
      const RadialGrid g = default_grid(p, l, 16000);
      const auto fc = fd_spectrum(prob, l, g, 6);
      const auto ff = fd_spectrum(prob, l, halved(g), 6);
      const auto br = brackets_from(ff.eigenvalues);
      for (const auto& qn : table1_states()) {
        if (qn.l != l) continue;
        const int n = qn.n;
        const double fd = richardson(fc.eigenvalues[n], ff.eigenvalues[n], 2);
        const double nv = richardson(numerov_shoot(prob, n, g, br[n]),
                                     numerov_shoot(prob, n, halved(g), br[n]), 4);
        EXPECT_NEAR(fd, nv, 1e-9) << name << " n=" << n << " l=" << l;
      }
    }
  }
}

}  // namespace
}  // namespace phnu::numeric
