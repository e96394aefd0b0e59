// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "phnu/error.hpp"

namespace phnu {

/// Degree n and real order a of an associated Laguerre polynomial L_n^a.
struct LaguerreSpec {
  int n = 0;
  double a = 0.0;
};

/// L_n^a(x) by the upward three-term recurrence in the degree.
inline double laguerre(const LaguerreSpec& spec, double x) {
  if (!(spec.a > -1.0)) throw DomainError("laguerre: order must exceed -1");
  if (spec.n < 0) throw DomainError("laguerre: negative degree");
  if (!(x >= 0.0)) throw DomainError("laguerre: argument must be >= 0");
  const double a = spec.a;
  double prev = 1.0;
  if (spec.n == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 2; k <= spec.n; ++k) {
    const double next = ((2.0 * k - 1.0 + a - x) * cur - (k - 1.0 + a) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendreRule gauss_legendre(int npoints) {
  if (npoints < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(npoints);
  rule.weights.resize(npoints);
  const int half = (npoints + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (npoints + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= npoints; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = npoints * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[npoints - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[npoints - 1 - i] = w;
  }
  return rule;
}

/// Integral of f over (0, inf).
///
/// Maps x = scale * t / (1 - t) and integrates over t in (0, 1) with
/// composite npoints-node Gauss-Legendre panels, starting from four equal
/// panels and bisecting any panel whose value changes by more than
/// rel_tol times the integral of |f| when split. `scale` should sit near
/// the bulk of f.
template <class F>
double integrate_semiinf(F&& f, double scale, int npoints = 20,
                         double rel_tol = 1e-13) {
  if (!(scale > 0.0)) throw DomainError("integrate_semiinf: scale must be positive");
  if (npoints < 16) throw DomainError("integrate_semiinf: need at least 16 nodes");
  const GaussLegendreRule rule = gauss_legendre(npoints);

  double abs_estimate = 0.0;
  auto panel = [&](double t0, double t1, bool track_abs = false) {
    const double half = 0.5 * (t1 - t0);
    const double mid = 0.5 * (t1 + t0);
    double acc = 0.0;
    double acc_abs = 0.0;
    for (int i = 0; i < npoints; ++i) {
      const double t = mid + half * rule.nodes[i];
      const double u = 1.0 - t;
      const double x = scale * t / u;
      const double fx = f(x);
      if (!std::isfinite(fx)) {
        throw IntegrationError("integrate_semiinf: non-finite integrand value");
      }
      const double term = rule.weights[i] * fx * scale / (u * u);
      acc += term;
      acc_abs += std::abs(term);
    }
    if (track_abs) abs_estimate += acc_abs * half;
    return acc * half;
  };

  struct Panel {
    double t0, t1, value;
    int depth;
  };
  constexpr int kInitialPanels = 4;
  constexpr int kMaxDepth = 500;
  constexpr long kMaxPanels = 1L << 20;
  std::vector<Panel> pending;
  for (int k = 0; k < kInitialPanels; ++k) {
    const double t0 = static_cast<double>(k) / kInitialPanels;
    const double t1 = static_cast<double>(k + 1) / kInitialPanels;
    pending.push_back({t0, t1, panel(t0, t1, true), 0});
  }
  const double tol = rel_tol * std::max(abs_estimate, 1e-300);
  long splits = 0;

  double total = 0.0;
  while (!pending.empty()) {
    const Panel p = pending.back();
    pending.pop_back();
    const double mid = 0.5 * (p.t0 + p.t1);
    const double left = panel(p.t0, mid);
    const double right = panel(mid, p.t1);
    if (std::abs(left + right - p.value) <= tol) {
      total += left + right;
      continue;
    }
    if (p.depth >= kMaxDepth || ++splits > kMaxPanels) {
      throw IntegrationError("integrate_semiinf: refinement limit reached");
    }
    pending.push_back({p.t0, mid, left, p.depth + 1});
    pending.push_back({mid, p.t1, right, p.depth + 1});
  }
  return total;
}

}  // namespace phnu
