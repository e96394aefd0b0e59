// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "phnu/error.hpp"
#include "phnu/pseudoharmonic.hpp"
#include "phnu/units.hpp"

/// Numerical eigensolvers for the radial equation, written in terms of
/// u = r R:
///
///   -hbar^2/(2 mu) u'' + V_eff(r) u = E u,   u(r_min) = u(r_max) = 0.
///
/// Nothing here uses the closed-form spectrum.
namespace phnu::numeric {

/// Uniform grid with m interior points; r_i = r_min + i h, i = 0..m+1.
struct RadialGrid {
  double r_min_A = 0.0;
  double r_max_A = 0.0;
  int m = 0;

  double spacing() const { return (r_max_A - r_min_A) / (m + 1); }
  double r(int i) const { return r_min_A + i * spacing(); }

  void validate() const {
    if (!(r_min_A > 0.0)) throw DomainError("RadialGrid: r_min must be positive");
    if (!(r_min_A < r_max_A)) throw DomainError("RadialGrid: r_min must be below r_max");
    if (m < 100) throw DomainError("RadialGrid: need at least 100 interior points");
  }
};

/// Same interval with the spacing halved.
inline RadialGrid halved(const RadialGrid& g) { return {g.r_min_A, g.r_max_A, 2 * g.m + 1}; }

/// Kinetic prefactor hbar^2/(2 mu) in eV A^2 and the effective potential.
struct RadialProblem {
  double kinetic_eV_A2 = 0.5;
  std::function<double(double)> v_eff;
};

inline RadialProblem radial_problem(const MolecularParams& p, int l,
                                    const PhysicalConstants& k = kCodata2018) {
  p.validate();
  if (l < 0) throw DomainError("radial_problem: l must be >= 0");
  return {0.5 * hbar2_over(p.mu_amu, 1.0, k),
          [p, l, k](double r) { return effective_potential(p, l, r, k); }};
}

/// Default grid for a pseudoharmonic molecule.
///
/// r_max = r0 max(4, 1 + 8/sqrt(alpha r0^2)) puts the Gaussian tail far below
/// double precision. Near the origin u ~ r^s with
/// s = 1/2 + sqrt(1/4 + l(l+1) + 2 mu V0 r0^2/hbar^2), and a Dirichlet wall at
/// r_min perturbs the energy by roughly (r_min/r0)^{2s-1}; r_min is the
/// smaller of r0/50 and the radius where that factor drops to 1e-12.
inline RadialGrid default_grid(const MolecularParams& p, int l, int m = 4000,
                               const PhysicalConstants& k = kCodata2018) {
  const PhDimensionless d = dimensionless(p, l, k);
  const double r0 = p.r0_A;
  const double r_max = r0 * std::max(4.0, 1.0 + 8.0 / std::sqrt(d.alpha * r0 * r0));
  const double barrier = 2.0 * p.V0_eV * r0 * r0 / hbar2_over(p.mu_amu, 1.0, k);
  const double s = 0.5 + std::sqrt(0.25 + static_cast<double>(l) * (l + 1) + barrier);
  const double r_min = r0 * std::min(1.0 / 50.0, std::pow(1e-12, 1.0 / (2.0 * s - 1.0)));
  return {r_min, r_max, m};
}

enum class Method { fd_sturm, numerov_shoot };

struct NumericSpectrum {
  int l = 0;
  std::vector<double> eigenvalues;  // eV, lowest first
  RadialGrid grid;
  Method method = Method::fd_sturm;
  std::vector<int> node_counts;   // interior sign changes of each eigenvector
  double boundary_amplitude = 0.0;  // max |u| next to a wall / max |u|
};

struct SolverOptions {
  bool strict = false;               // boundary truncation becomes an error
  double boundary_threshold = 1e-10;
  double bracket_width_eV = 1e-12;
};

namespace detail {

/// Symmetric tridiagonal matrix with constant off-diagonal.
struct Tridiagonal {
  std::vector<double> diag;
  double off = 0.0;

  /// Number of eigenvalues strictly below x (Sturm sequence of LDL^T pivots).
  int count_below(double x) const {
    int count = 0;
    double q = 1.0;
    const double off2 = off * off;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      q = diag[i] - x - (i == 0 ? 0.0 : off2 / q);
      if (q == 0.0) q = -tiny;
      if (q < 0.0) ++count;
    }
    return count;
  }

  std::pair<double, double> gershgorin() const {
    const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
    return {*lo - 2.0 * std::abs(off), *hi + 2.0 * std::abs(off)};
  }

  /// Eigenvector for a converged eigenvalue by inverse iteration.
  std::vector<double> eigenvector(double lambda) const {
    const std::size_t n = diag.size();
    const double tiny = 1e-300;
    std::vector<double> x(n, 1.0), piv(n), rhs(n);
    for (int iter = 0; iter < 3; ++iter) {
      // Forward elimination (Thomas), then back substitution.
      rhs = x;
      piv[0] = diag[0] - lambda;
      if (std::abs(piv[0]) < tiny) piv[0] = tiny;
      for (std::size_t i = 1; i < n; ++i) {
        const double f = off / piv[i - 1];
        piv[i] = diag[i] - lambda - f * off;
        if (std::abs(piv[i]) < tiny) piv[i] = tiny;
        rhs[i] -= f * rhs[i - 1];
      }
      x[n - 1] = rhs[n - 1] / piv[n - 1];
      for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - off * x[i + 1]) / piv[i];
      double big = 0.0;
      for (double v : x) big = std::max(big, std::abs(v));
      for (double& v : x) v /= big;
    }
    return x;
  }
};

inline int sign_changes(const std::vector<double>& v, double floor) {
  int changes = 0;
  int last = 0;
  for (double x : v) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Lowest `count` eigenvalues of the second-order finite-difference
/// Hamiltonian, each bisected with Sturm counts to `bracket_width_eV`.
inline NumericSpectrum fd_spectrum(const RadialProblem& prob, int l, const RadialGrid& grid,
                                   int count, const SolverOptions& opt = {}) {
  grid.validate();
  if (count < 1 || count > grid.m / 4) {
    throw DomainError("fd_spectrum: count must be in [1, m/4]");
  }
  const double h = grid.spacing();
  const double t = prob.kinetic_eV_A2;
  detail::Tridiagonal mat;
  mat.off = -t / (h * h);
  mat.diag.resize(grid.m);
  for (int i = 1; i <= grid.m; ++i) {
    mat.diag[i - 1] = 2.0 * t / (h * h) + prob.v_eff(grid.r(i));
  }

  NumericSpectrum out;
  out.l = l;
  out.grid = grid;
  out.method = Method::fd_sturm;
  const auto [g_lo, g_hi] = mat.gershgorin();
  double floor_lo = g_lo;
  for (int kth = 0; kth < count; ++kth) {
    double lo = floor_lo;
    double hi = g_hi;
    while (hi - lo > std::max(opt.bracket_width_eV,
                              4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi))) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (mat.count_below(mid) <= kth ? lo : hi) = mid;
    }
    const double e = 0.5 * (lo + hi);
    out.eigenvalues.push_back(e);
    floor_lo = lo;

    const std::vector<double> vec = mat.eigenvector(e);
    out.node_counts.push_back(detail::sign_changes(vec, 1e-9));
    double edge = std::abs(vec.back());
    // A wall within one spacing of the origin is the regularity condition
    // u(0) = 0 rather than a truncation.
    if (grid.r_min_A > h) edge = std::max(edge, std::abs(vec.front()));
    out.boundary_amplitude = std::max(out.boundary_amplitude, edge);
  }
  if (opt.strict && out.boundary_amplitude > opt.boundary_threshold) {
    throw BoundaryTruncationError("fd_spectrum: eigenfunction amplitude " +
                                  std::to_string(out.boundary_amplitude) +
                                  " at the grid boundary; widen the grid");
  }
  return out;
}

inline NumericSpectrum fd_spectrum(const MolecularParams& p, int l, const RadialGrid& grid,
                                   int count, const SolverOptions& opt = {},
                                   const PhysicalConstants& k = kCodata2018) {
  return fd_spectrum(radial_problem(p, l, k), l, grid, count, opt);
}

namespace detail {

/// Numerov recurrence for u = r R on a grid uniform in x = ln r, trimmed to
/// the region where the solution is not negligible for energies up to
/// `e_top`.
///
/// With u(r) = e^{x/2} phi(x) the radial equation becomes
///   phi'' = F(x) phi,  F = r^2 (V_eff - E) / t + 1/4,  t = hbar^2/(2 mu),
/// which is regular at small r even when V_eff ~ 1/r^2, so the recurrence
/// keeps its fourth order there.
class NumerovShooter {
 public:
  NumerovShooter(const RadialProblem& prob, const RadialGrid& grid, double e_low, double e_top)
      : t_(prob.kinetic_eV_A2) {
    const int last = grid.m + 1;
    const double x0 = std::log(grid.r_min_A);
    h_ = (std::log(grid.r_max_A) - x0) / last;
    v_.assign(last + 1, std::numeric_limits<double>::infinity());
    w_.assign(last + 1, 0.0);
    for (int i = 1; i < last; ++i) {
      const double r = std::exp(x0 + i * h_);
      v_[i] = prob.v_eff(r);
      w_[i] = r * r / t_;
    }

    int first_allowed = -1;
    int last_allowed = -1;
    for (int i = 1; i < last; ++i) {
      if (v_[i] < e_top) {
        if (first_allowed < 0) first_allowed = i;
        last_allowed = i;
      }
    }
    if (first_allowed < 0) throw BracketError("numerov_shoot: no classically allowed region");

    // Walls where the WKB decay from the turning point exceeds e^-40, or
    // earlier where the recurrence coefficient degrades (coarse log grids
    // at large r) provided the solution has decayed by e^-20 there.
    constexpr double kDecay = 40.0;
    constexpr double kMinDecay = 20.0;
    auto wall_here = [&](int i, double action) {
      if (action > kDecay) return true;
      if (1.0 - h_ * h_ * f(i, e_low) / 12.0 < 0.5) {
        if (action < kMinDecay) throw DomainError("numerov_shoot: grid too coarse");
        return true;
      }
      return false;
    };
    lo_ = 0;
    double action = 0.0;
    for (int i = first_allowed - 1; i >= 1; --i) {
      action += h_ * std::sqrt(std::max(0.0, f(i, e_top)));
      if (wall_here(i, action)) { lo_ = i; break; }
    }
    hi_ = last;
    action = 0.0;
    for (int i = last_allowed + 1; i < last; ++i) {
      action += h_ * std::sqrt(std::max(0.0, f(i, e_top)));
      if (wall_here(i, action)) { hi_ = i; break; }
    }
    if (hi_ - lo_ < 8) throw DomainError("numerov_shoot: grid too coarse");
    for (int i = lo_ + 1; i < hi_; ++i) {
      if (!(g(i, e_low) > 0.0)) {
        throw DomainError("numerov_shoot: spacing too large for the potential");
      }
    }
  }

  /// Number of eigenvalues of the discrete problem below e: sign changes
  /// of the outward solution, including its value at the far wall.
  int count_below(double e) const {
    double prev = 0.0;
    double cur = 1.0;
    int changes = 0;
    for (int i = lo_ + 1; i < hi_; ++i) {
      const double next = step(i, e, cur, prev, i + 1);
      if ((next < 0.0) != (cur < 0.0)) ++changes;
      prev = cur;
      cur = next;
      rescale(prev, cur);
    }
    return changes;
  }

  /// Normalized Wronskian-type mismatch of the outward and inward solutions
  /// at the matching index; zero exactly at a discrete eigenvalue and free
  /// of poles.
  double mismatch(double e, int match) const {
    double a_prev = 0.0, a_cur = 1.0;  // a_cur is phi at index i
    for (int i = lo_ + 1; i < match; ++i) {
      const double next = step(i, e, a_cur, a_prev, i + 1);
      a_prev = a_cur;
      a_cur = next;
      rescale(a_prev, a_cur);
    }
    // (a_prev, a_cur) = phi_out at (match-1, match); step once more.
    const double a_next = step(match, e, a_cur, a_prev, match + 1);
    double b_next = 0.0, b_cur = 1.0;  // b_cur is phi at index i
    for (int i = hi_ - 1; i > match; --i) {
      const double below = step(i, e, b_cur, b_next, i - 1);
      b_next = b_cur;
      b_cur = below;
      rescale(b_next, b_cur);
    }
    // Now b_cur = phi_in(match), b_next = phi_in(match + 1).
    const double w = a_cur * b_next - a_next * b_cur;
    return w / (std::hypot(a_cur, a_next) * std::hypot(b_cur, b_next));
  }

  int lower_wall() const { return lo_; }
  int upper_wall() const { return hi_; }
  double potential_at(int i) const { return v_[i]; }

 private:
  double f(int i, double e) const { return w_[i] * (v_[i] - e) + 0.25; }
  double g(int i, double e) const {
    if (i <= lo_ || i >= hi_) return 1.0;  // multiplies phi = 0 at the walls
    return 1.0 - h_ * h_ * f(i, e) / 12.0;
  }
  /// phi at `to` from phi at i and at the other neighbour of i.
  double step(int i, double e, double at_i, double at_from, int to) const {
    const int from = 2 * i - to;
    return ((12.0 - 10.0 * g(i, e)) * at_i - g(from, e) * at_from) / g(to, e);
  }

  static void rescale(double& a, double& b) {
    constexpr double kBig = 1e150;
    if (std::abs(b) > kBig || std::abs(a) > kBig) {
      a /= kBig;
      b /= kBig;
    }
  }

  double h_ = 0.0;
  double t_;
  std::vector<double> v_;
  std::vector<double> w_;
  int lo_ = 0;
  int hi_ = 0;
};

}  // namespace detail

/// Energy of radial state `n` by Numerov shooting inside `bracket`.
///
/// Uses the interval and point count of `grid`, with the points spaced
/// uniformly in ln r.
///
/// The bracket is checked with node counts: exactly n discrete eigenvalues
/// below its lower end and n + 1 below its upper end. It is narrowed by
/// count bisection and then polished with Illinois (modified regula falsi)
/// iterations on the matching mismatch.
inline double numerov_shoot(const RadialProblem& prob, int n, const RadialGrid& grid,
                            std::pair<double, double> bracket, const SolverOptions& opt = {}) {
  grid.validate();
  if (n < 0) throw DomainError("numerov_shoot: n must be >= 0");
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw BracketError("numerov_shoot: empty bracket");
  const detail::NumerovShooter shooter(prob, grid, lo, hi);

  const int c_lo = shooter.count_below(lo);
  const int c_hi = shooter.count_below(hi);
  if (c_lo == c_hi) throw BracketError("numerov_shoot: no eigenvalue in bracket");
  if (c_lo != n || c_hi != n + 1) {
    throw WrongStateError("numerov_shoot: bracket holds states " + std::to_string(c_lo) +
                          ".." + std::to_string(c_hi - 1) + ", expected " + std::to_string(n));
  }

  // Count bisection to a narrow bracket.
  const double coarse = std::max(1e-7, 1e-7 * std::abs(hi));
  while (hi - lo > coarse) {
    const double mid = 0.5 * (lo + hi);
    (shooter.count_below(mid) <= n ? lo : hi) = mid;
  }

  // Match at the outer classical turning point of the bracket midpoint.
  const double e_mid = 0.5 * (lo + hi);
  int match = shooter.lower_wall() + 2;
  for (int i = shooter.lower_wall() + 1; i < shooter.upper_wall(); ++i) {
    if (shooter.potential_at(i) < e_mid) match = i;
  }
  match = std::clamp(match, shooter.lower_wall() + 2, shooter.upper_wall() - 2);

  double f_lo = shooter.mismatch(lo, match);
  double f_hi = shooter.mismatch(hi, match);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    // Mismatch did not bracket; finish with counts alone.
    while (hi - lo > opt.bracket_width_eV) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (shooter.count_below(mid) <= n ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  int side = 0;
  for (int iter = 0; iter < 200 && hi - lo > opt.bracket_width_eV; ++iter) {
    double e = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(e > lo && e < hi)) e = 0.5 * (lo + hi);
    const double f = shooter.mismatch(e, match);
    if (f == 0.0) return e;
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = e;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = e;
      f_hi = f;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  return (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
}

inline double numerov_shoot(const MolecularParams& p, int l, int n, const RadialGrid& grid,
                            std::pair<double, double> bracket, const SolverOptions& opt = {},
                            const PhysicalConstants& k = kCodata2018) {
  return numerov_shoot(radial_problem(p, l, k), n, grid, bracket, opt);
}

/// Richardson extrapolation from spacings h and h/2 for a method of the
/// given order.
inline double richardson(double e_h, double e_h2, int order) {
  if (order < 1) throw DomainError("richardson: order must be positive");
  const double f = std::ldexp(1.0, order);
  return (f * e_h2 - e_h) / (f - 1.0);
}

/// Brackets around each eigenvalue of an ordered list: midpoints between
/// neighbours, mirrored at both ends.
inline std::vector<std::pair<double, double>> brackets_from(const std::vector<double>& ev) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double below = i > 0 ? 0.5 * (ev[i - 1] + ev[i])
                               : ev[i] - 0.5 * (ev.size() > 1 ? ev[1] - ev[0] : 1.0);
    const double above = i + 1 < ev.size() ? 0.5 * (ev[i] + ev[i + 1])
                                           : ev[i] + 0.5 * (i > 0 ? ev[i] - ev[i - 1] : 1.0);
    out.emplace_back(below, above);
  }
  return out;
}

}  // namespace phnu::numeric
