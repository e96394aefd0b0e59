// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "phnu/error.hpp"
#include "phnu/nu_engine.hpp"
#include "phnu/special.hpp"
#include "phnu/units.hpp"

namespace phnu {

/// Pseudoharmonic molecule V(r) = V0 (r/r0 - r0/r)^2 with reduced mass mu.
struct MolecularParams {
  double V0_eV = 0.0;   // dissociation energy
  double r0_A = 0.0;    // equilibrium separation
  double mu_amu = 0.0;  // reduced mass

  void validate() const {
    if (!(V0_eV > 0.0)) throw DomainError("MolecularParams: V0 must be positive");
    if (!(r0_A > 0.0)) throw DomainError("MolecularParams: r0 must be positive");
    if (!(mu_amu > 0.0)) throw DomainError("MolecularParams: mu must be positive");
  }
};

struct QuantumNumbers {
  int n = 0;  // radial (vibrational)
  int l = 0;  // angular momentum

  void validate() const {
    if (n < 0 || l < 0) throw DomainError("QuantumNumbers: n and l must be >= 0");
  }
  friend constexpr auto operator<=>(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Parameters of the radial equation after the substitution s = r^2.
struct PhDimensionless {
  double alpha = 0.0;  // 1/A^2, alpha^2 = mu V0 / (2 hbar^2 r0^2)
  double beta = 0.0;   // mu V0 r0^2 / (2 hbar^2) + l(l+1)/4
  double gamma = 0.0;  // 2 alpha q, 1/A^2
  double q = 0.0;      // sqrt(beta + 1/16)
  std::optional<double> epsilon;  // 1/A^2, set once an energy is known
};

/// V(r) in eV.
inline double potential(const MolecularParams& p, double r_A) {
  if (!(r_A > 0.0)) throw DomainError("potential: r must be positive");
  const double d = r_A / p.r0_A - p.r0_A / r_A;
  return p.V0_eV * d * d;
}

/// V(r) plus the centrifugal barrier l(l+1) hbar^2 / (2 mu r^2), in eV.
inline double effective_potential(const MolecularParams& p, int l, double r_A,
                                  const PhysicalConstants& k = kCodata2018) {
  const double ll = static_cast<double>(l) * (l + 1);
  return potential(p, r_A) + 0.5 * ll * hbar2_over(p.mu_amu, r_A, k);
}

inline PhDimensionless dimensionless(const MolecularParams& p, int l,
                                     const PhysicalConstants& k = kCodata2018) {
  p.validate();
  if (l < 0) throw DomainError("dimensionless: l must be >= 0");
  const double hbar2_mu = hbar2_over(p.mu_amu, 1.0, k);  // eV A^2
  PhDimensionless d;
  d.alpha = std::sqrt(p.V0_eV / (2.0 * hbar2_mu)) / p.r0_A;
  d.beta = p.V0_eV * p.r0_A * p.r0_A / (2.0 * hbar2_mu) +
           0.25 * static_cast<double>(l) * (l + 1);
  d.q = std::sqrt(d.beta + 1.0 / 16.0);
  d.gamma = 2.0 * d.alpha * d.q;
  return d;
}

/// Half the vibrational spacing, (hbar/r0) sqrt(2 V0/mu), in eV.
inline double half_spacing(const MolecularParams& p,
                           const PhysicalConstants& k = kCodata2018) {
  return std::sqrt(2.0 * p.V0_eV * hbar2_over(p.mu_amu, 1.0, k)) / p.r0_A;
}

/// Closed-form bound-state energy in eV:
///
///   E = -2 V0 + c [ (2n+1) + 2 sqrt(B + l(l+1)/4 + 1/16) ],
///   c = (hbar/r0) sqrt(2 V0/mu),  B = mu V0 r0^2 / (2 hbar^2).
///
/// Since c sqrt(B) = V0, the -2 V0 cancels against 2 c sqrt(B); the
/// difference of square roots is rewritten so that no cancellation occurs.
inline double energy(const MolecularParams& p, const QuantumNumbers& qn,
                     const PhysicalConstants& k = kCodata2018) {
  p.validate();
  qn.validate();
  const double hbar2_mu = hbar2_over(p.mu_amu, 1.0, k);
  const double c = std::sqrt(2.0 * p.V0_eV * hbar2_mu) / p.r0_A;
  const double b = p.V0_eV * p.r0_A * p.r0_A / (2.0 * hbar2_mu);
  const double x = 0.25 * static_cast<double>(qn.l) * (qn.l + 1) + 1.0 / 16.0;
  const double root_gap = x / (std::sqrt(b + x) + std::sqrt(b));
  return c * (2.0 * qn.n + 1.0) + 2.0 * c * root_gap;
}

/// epsilon = (E + 2 V0) mu / (2 hbar^2), in 1/A^2.
inline double epsilon_of_energy(const MolecularParams& p, double energy_eV,
                                const PhysicalConstants& k = kCodata2018) {
  return (energy_eV + 2.0 * p.V0_eV) / (2.0 * hbar2_over(p.mu_amu, 1.0, k));
}

/// Normalized radial wavefunction
///
///   R(r) = N s^{power} e^{-rate s} L_n^{2q}(2 rate s),  s = r^2,
///
/// with power = q - 1/4 and N chosen so that int R^2 r^2 dr = 1. Evaluation
/// runs in log space: for real molecules q is ~100 and the individual
/// factors overflow long before R does.
class RadialWavefunction {
 public:
  RadialWavefunction(double power, double rate, LaguerreSpec laguerre, double log_norm)
      : power_(power), rate_(rate), laguerre_(laguerre), log_norm_(log_norm) {}

  double power() const { return power_; }
  double rate() const { return rate_; }
  const LaguerreSpec& laguerre() const { return laguerre_; }
  double log_norm() const { return log_norm_; }
  double norm() const { return std::exp(log_norm_); }

  /// ln|R(r)| and the sign of R(r). ln|R| is -inf at zeros.
  std::pair<double, int> log_abs(double r_A) const {
    if (!(r_A >= 0.0)) throw DomainError("RadialWavefunction: r must be >= 0");
    if (r_A == 0.0) return {-INFINITY, 0};
    const double s = r_A * r_A;
    const double lag = phnu::laguerre(laguerre_, 2.0 * rate_ * s);
    if (lag == 0.0) return {-INFINITY, 0};
    const double lg = log_norm_ + power_ * std::log(s) - rate_ * s + std::log(std::abs(lag));
    return {lg, lag > 0.0 ? 1 : -1};
  }

  double operator()(double r_A) const {
    const auto [lg, sign] = log_abs(r_A);
    return sign == 0 ? 0.0 : sign * std::exp(lg);
  }

 private:
  double power_;
  double rate_;
  LaguerreSpec laguerre_;
  double log_norm_;
};

/// N^2 = 2 (2 alpha)^{2q+1} n! / Gamma(n + 2q + 1), from Laguerre
/// orthogonality after s = r^2, x = 2 alpha s.
inline RadialWavefunction wavefunction(const MolecularParams& p, const QuantumNumbers& qn,
                                       const PhysicalConstants& k = kCodata2018) {
  qn.validate();
  const PhDimensionless d = dimensionless(p, qn.l, k);
  const double order = 2.0 * d.q;
  const double log_norm2 = std::log(2.0) + (order + 1.0) * std::log(2.0 * d.alpha) +
                           log_gamma(qn.n + 1.0) - log_gamma(qn.n + order + 1.0);
  return RadialWavefunction(d.q - 0.25, d.alpha, LaguerreSpec{qn.n, order}, 0.5 * log_norm2);
}

/// The NU problem for fixed l and a trial epsilon:
/// sigma = s, tau~ = 3/2, sigma~ = -alpha^2 s^2 + epsilon s - beta.
inline nu::NUProblem pseudoharmonic_problem(const PhDimensionless& d, double epsilon) {
  return nu::NUProblem{Poly2{0.0, 1.0, 0.0},
                       Poly2{-d.beta, epsilon, -d.alpha * d.alpha},
                       Poly2{1.5, 0.0, 0.0}};
}

struct NuAssembly {
  PhDimensionless params;      // epsilon holds the n = 0 value
  nu::NUSolution solution;     // physical branch at the n = 0 epsilon
  double lambda_intercept = 0.0;  // lambda(epsilon) = intercept + slope * epsilon
  double lambda_slope = 0.0;
  std::vector<double> epsilon_ladder;  // epsilon_n for n = 0..n_max, 1/A^2
};

/// Runs the NU engine on the pseudoharmonic equation and solves
/// lambda(epsilon) = lambda_n for the spectral parameter.
///
/// epsilon is unknown inside sigma~, but for this problem the selected
/// branch (pi, tau) does not depend on it and lambda = k + pi' is affine in
/// it. The engine is run at three trial values to establish both facts; the
/// ladder then follows from one linear solve per n.
inline NuAssembly assemble_via_nu(const MolecularParams& p, int l, int n_max,
                                  const PhysicalConstants& k = kCodata2018) {
  if (n_max < 0) throw DomainError("assemble_via_nu: n_max must be >= 0");
  NuAssembly out;
  out.params = dimensionless(p, l, k);
  const PhDimensionless& d = out.params;

  const double e0 = 0.0;
  const double e1 = d.alpha;
  const double e2 = 2.0 * d.alpha;
  const nu::NUSolution s0 = nu::solve(pseudoharmonic_problem(d, e0));
  const nu::NUSolution s1 = nu::solve(pseudoharmonic_problem(d, e1));
  const nu::NUSolution s2 = nu::solve(pseudoharmonic_problem(d, e2));

  auto same_shape = [](const nu::NUBranch& a, const nu::NUBranch& b) {
    const double tol = 1e-12 * (std::abs(a.tau.c0) + std::abs(a.tau.c1) + 1.0);
    return a.sign == b.sign && std::abs(a.tau.c0 - b.tau.c0) <= tol &&
           std::abs(a.tau.c1 - b.tau.c1) <= tol && std::abs(a.pi.c0 - b.pi.c0) <= tol &&
           std::abs(a.pi.c1 - b.pi.c1) <= tol;
  };
  if (!same_shape(s0.branch, s1.branch) || !same_shape(s0.branch, s2.branch)) {
    throw NoBranchError("assemble_via_nu: physical branch depends on epsilon");
  }
  out.lambda_intercept = s0.lambda;
  out.lambda_slope = (s1.lambda - s0.lambda) / (e1 - e0);
  const double predicted = out.lambda_intercept + out.lambda_slope * e2;
  if (!(out.lambda_slope != 0.0) ||
      std::abs(predicted - s2.lambda) > 1e-12 * (std::abs(s2.lambda) + std::abs(e2))) {
    throw NoBranchError("assemble_via_nu: lambda is not affine in epsilon");
  }

  const Poly2 sigma{0.0, 1.0, 0.0};
  for (int n = 0; n <= n_max; ++n) {
    const double lambda_n = nu::eigenvalue_ladder(s0.branch, sigma, n);
    out.epsilon_ladder.push_back((lambda_n - out.lambda_intercept) / out.lambda_slope);
  }
  out.params.epsilon = out.epsilon_ladder.front();
  out.solution = nu::solve(pseudoharmonic_problem(d, out.epsilon_ladder.front()));
  return out;
}

}  // namespace phnu
