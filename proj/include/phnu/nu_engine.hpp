// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "phnu/error.hpp"
#include "phnu/polynomial.hpp"

/// Nikiforov-Uvarov reduction of
///
///   psi'' + (tau~/sigma) psi' + (sigma~/sigma^2) psi = 0
///
/// to the hypergeometric-type equation sigma y'' + tau y' + lambda y = 0.
/// Only sigma of degree <= 1 is supported.
namespace phnu::nu {

struct NUProblem {
  Poly2 sigma;
  Poly2 sigma_tilde;
  Poly2 tau_tilde;
};

enum class SignChoice { plus, minus };

/// A value of k that turns the radicand into root^2 for a linear `root`.
struct KCandidate {
  double k = 0.0;
  Poly2 root;
};

struct NUBranch {
  double k = 0.0;
  Poly2 pi;
  Poly2 tau;
  SignChoice sign = SignChoice::plus;
};

/// rho(s) = s^a exp(-c s).
struct WeightExponents {
  double a = 0.0;
  double c = 0.0;
};

struct NUSolution {
  NUBranch branch;
  double lambda = 0.0;  // k + pi'
  WeightExponents weight;
};

inline void validate(const NUProblem& p) {
  if (p.sigma.is_zero()) throw DomainError("NU problem: sigma is identically zero");
  if (p.sigma.degree() > 1) {
    throw UnsupportedSigmaError("NU problem: sigma of degree 2 is not supported");
  }
  if (p.tau_tilde.degree() > 1) {
    throw DomainError("NU problem: tau~ must have degree <= 1");
  }
}

/// (sigma' - tau~) / 2, the k-independent part of pi.
inline Poly2 half_drift(const NUProblem& p) {
  return 0.5 * (p.sigma.derivative() - p.tau_tilde);
}

/// The expression under the square root in pi: ((sigma'-tau~)/2)^2 - sigma~ + k sigma.
inline Poly2 radicand(const NUProblem& p, double k) {
  const Poly2 h = half_drift(p);
  return multiply(h, h) - p.sigma_tilde + k * p.sigma;
}

/// Every k for which the radicand is the square of a polynomial of degree <= 1.
///
/// With sigma linear the radicand is r2 s^2 + (A1 + k s1) s + (A0 + k s0), and
/// its discriminant in s is a quadratic in k, solved in closed form.
inline std::vector<KCandidate> k_candidates(const NUProblem& p) {
  validate(p);
  const Poly2 base = radicand(p, 0.0);
  const double s0 = p.sigma.c0;
  const double s1 = p.sigma.c1;
  std::vector<KCandidate> out;

  if (base.c2 < 0.0) {
    throw NoBranchError("k_candidates: radicand has negative leading coefficient");
  }

  if (base.c2 == 0.0) {
    // Already degree <= 1 in s: the linear coefficient must vanish.
    double k = 0.0;
    if (s1 != 0.0) {
      k = -base.c1 / s1;
    } else if (base.c1 != 0.0) {
      throw NoBranchError("k_candidates: linear radicand cannot be a square");
    }
    const double r0 = base.c0 + k * s0;
    if (r0 < 0.0) throw NoBranchError("k_candidates: negative constant radicand");
    out.push_back({k, Poly2{std::sqrt(r0), 0.0, 0.0}});
    return out;
  }

  const double lead = std::sqrt(base.c2);
  auto root_for = [&](double k) {
    return Poly2{(base.c1 + k * s1) / (2.0 * lead), lead, 0.0};
  };

  // (A1 + k s1)^2 - 4 A2 (A0 + k s0) = qa k^2 + qb k + qc
  const double qa = s1 * s1;
  const double qb = 2.0 * base.c1 * s1 - 4.0 * base.c2 * s0;
  const double qc = base.c1 * base.c1 - 4.0 * base.c2 * base.c0;

  if (qa == 0.0) {
    if (qb == 0.0) throw NoBranchError("k_candidates: discriminant independent of k");
    const double k = -qc / qb;
    out.push_back({k, root_for(k)});
    return out;
  }

  double disc = qb * qb - 4.0 * qa * qc;
  const double disc_scale = qb * qb + std::abs(4.0 * qa * qc);
  if (disc < 0.0) {
    if (disc < -1e-14 * disc_scale) {
      throw NoBranchError("k_candidates: no real k makes the radicand a square");
    }
    disc = 0.0;
  }
  const double sq = std::sqrt(disc);
  // Numerically stable pair of roots.
  const double t = -0.5 * (qb + std::copysign(sq, qb));
  double k1 = t / qa;
  double k2 = (t != 0.0) ? qc / t : k1;
  if (k1 < k2) std::swap(k1, k2);
  out.push_back({k1, root_for(k1)});
  if (k2 != k1) out.push_back({k2, root_for(k2)});
  return out;
}

/// pi = (sigma' - tau~)/2 +- root and tau = tau~ + 2 pi, for both signs.
inline std::vector<NUBranch> resolve_branch(const NUProblem& p, const KCandidate& cand) {
  const Poly2 h = half_drift(p);
  std::vector<NUBranch> out;
  for (SignChoice sign : {SignChoice::plus, SignChoice::minus}) {
    NUBranch b;
    b.k = cand.k;
    b.sign = sign;
    b.pi = sign == SignChoice::plus ? h + cand.root : h - cand.root;
    b.tau = p.tau_tilde + 2.0 * b.pi;
    out.push_back(b);
  }
  return out;
}

/// lambda = k + pi'.
inline double lambda_of(const NUBranch& b) { return b.k + b.pi.c1; }

/// Solves the Pearson equation (sigma rho)' = tau rho for rho = s^a e^{-cs}.
/// Requires sigma = kappa * s; then a = tau(0)/kappa - 1 and c = -tau'/kappa.
inline WeightExponents weight_function(const NUBranch& b, const Poly2& sigma) {
  if (sigma.c0 != 0.0 || sigma.c2 != 0.0 || sigma.c1 == 0.0) {
    throw UnsupportedSigmaError("weight_function: sigma must be proportional to s");
  }
  if (b.tau.degree() > 1) throw DomainError("weight_function: tau must be linear");
  const double kappa = sigma.c1;
  return {b.tau.c0 / kappa - 1.0, -b.tau.c1 / kappa};
}

/// The unique branch with tau' < 0 whose weight is normalizable on (0, inf)
/// (c > 0, a > -1). No silent tie-breaking: ambiguity is an error.
inline NUBranch select_physical(const std::vector<NUBranch>& branches, const Poly2& sigma) {
  std::vector<const NUBranch*> ok;
  for (const auto& b : branches) {
    if (!(b.tau.c1 < 0.0)) continue;
    const WeightExponents w = weight_function(b, sigma);
    if (w.c > 0.0 && w.a > -1.0) ok.push_back(&b);
  }
  if (ok.empty()) throw NoBranchError("select_physical: no physical branch");
  if (ok.size() > 1) throw AmbiguousBranchError("select_physical: ambiguous branch");
  return *ok.front();
}

/// lambda_n = -n tau' - n(n-1)/2 sigma''.
inline double eigenvalue_ladder(const NUBranch& b, const Poly2& sigma, int n) {
  if (n < 0) throw DomainError("eigenvalue_ladder: n must be >= 0");
  const double nn = n;
  return -nn * b.tau.c1 - 0.5 * nn * (nn - 1.0) * sigma.second_derivative();
}

/// Runs the whole reduction: candidates, branches, physical selection.
inline NUSolution solve(const NUProblem& p) {
  std::vector<NUBranch> all;
  for (const auto& cand : k_candidates(p)) {
    auto bs = resolve_branch(p, cand);
    all.insert(all.end(), bs.begin(), bs.end());
  }
  NUSolution sol;
  sol.branch = select_physical(all, p.sigma);
  sol.lambda = lambda_of(sol.branch);
  sol.weight = weight_function(sol.branch, p.sigma);
  return sol;
}

/// y_n(s) = (1/rho) d^n/ds^n [s^n rho] for rho = s^a e^{-cs}, with B_n = 1.
///
/// The function being differentiated always has the form
/// s^a e^{-cs} * sum_j p_j s^j, and
///   d/ds [s^{a+j} e^{-cs}] = (a+j) s^{a+j-1} e^{-cs} - c s^{a+j} e^{-cs},
/// so each derivative is an exact update of the coefficient array.
///
/// Scaling lemma: substituting x = c s into the Laguerre Rodrigues formula
/// L_n^a(x) = x^{-a} e^x / n! d^n/dx^n [x^{n+a} e^{-x}] gives
///   rodrigues_polynomial(n, a, c)(s) = n! * L_n^a(c s)
/// exactly: the powers of c from the chain rule and from s^{n+a} cancel.
inline Polynomial rodrigues_polynomial(int n, double a, double c) {
  if (n < 0) throw DomainError("rodrigues_polynomial: n must be >= 0");
  if (!(c > 0.0)) throw DomainError("rodrigues_polynomial: c must be positive");
  if (!(a > -1.0)) throw DomainError("rodrigues_polynomial: a must exceed -1");
  // coeff[j] multiplies s^{a+j} e^{-cs}; start from s^n * rho.
  std::vector<double> coeff(static_cast<std::size_t>(n) + 1, 0.0);
  coeff[n] = 1.0;
  for (int step = 0; step < n; ++step) {
    std::vector<double> next(coeff.size(), 0.0);
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      if (coeff[j] == 0.0) continue;
      next[j] -= c * coeff[j];
      if (j > 0) next[j - 1] += (a + static_cast<double>(j)) * coeff[j];
      // j == 0 never carries a nonzero coefficient before the last step.
    }
    coeff = std::move(next);
  }
  return Polynomial(std::move(coeff));
}

}  // namespace phnu::nu
