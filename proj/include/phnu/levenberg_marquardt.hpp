// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace phnu {

struct LmOptions {
  int max_iterations = 200;
  double initial_damping = 1e-3;
  double step_tolerance = 1e-15;  // relative to |x|
  double cost_tolerance = 0.0;    // stop once 0.5 |r|^2 is at or below this
};

template <std::size_t N>
struct LmResult {
  std::array<double, N> x{};
  double cost = 0.0;  // 0.5 * sum r_i^2
  int iterations = 0;
  bool converged = false;
};

namespace detail {

/// Solves A x = b for a small dense SPD-ish system by Gaussian elimination
/// with partial pivoting. Returns false when A is singular.
template <std::size_t N>
bool solve_dense(std::array<std::array<double, N>, N> a, std::array<double, N> b,
                 std::array<double, N>& x) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (a[piv][col] == 0.0) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = N; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < N; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return true;
}

}  // namespace detail

/// Levenberg-Marquardt with Marquardt's diagonal scaling.
///
/// `residuals(x)` returns r(x); `jacobian(x)` returns one row dr_i/dx per
/// residual.
template <std::size_t N, class ResidualFn, class JacobianFn>
LmResult<N> levenberg_marquardt(ResidualFn&& residuals, JacobianFn&& jacobian,
                                std::array<double, N> x0, const LmOptions& opt = {}) {
  auto cost_of = [](const std::vector<double>& r) {
    double c = 0.0;
    for (double v : r) c += v * v;
    return 0.5 * c;
  };

  LmResult<N> res;
  res.x = x0;
  std::vector<double> r = residuals(res.x);
  res.cost = cost_of(r);
  double damping = opt.initial_damping;

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    res.iterations = iter + 1;
    if (res.cost <= opt.cost_tolerance) {
      res.converged = true;
      break;
    }
    const std::vector<std::array<double, N>> jac = jacobian(res.x);
    std::array<std::array<double, N>, N> jtj{};
    std::array<double, N> jtr{};
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t a = 0; a < N; ++a) {
        jtr[a] += jac[i][a] * r[i];
        for (std::size_t b = 0; b < N; ++b) jtj[a][b] += jac[i][a] * jac[i][b];
      }
    }

    bool improved = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      auto lhs = jtj;
      std::array<double, N> rhs{};
      for (std::size_t a = 0; a < N; ++a) {
        lhs[a][a] += damping * jtj[a][a];
        rhs[a] = -jtr[a];
      }
      std::array<double, N> step{};
      if (!detail::solve_dense<N>(lhs, rhs, step)) {
        damping *= 10.0;
        continue;
      }
      std::array<double, N> trial = res.x;
      double step_norm = 0.0;
      double x_norm = 0.0;
      for (std::size_t a = 0; a < N; ++a) {
        trial[a] += step[a];
        step_norm += step[a] * step[a];
        x_norm += res.x[a] * res.x[a];
      }
      const std::vector<double> r_trial = residuals(trial);
      const double c_trial = cost_of(r_trial);
      if (c_trial < res.cost) {
        res.x = trial;
        r = r_trial;
        res.cost = c_trial;
        damping = std::max(damping / 10.0, 1e-15);
        improved = true;
        if (std::sqrt(step_norm) <= opt.step_tolerance * (std::sqrt(x_norm) + opt.step_tolerance)) {
          res.converged = true;
        }
        break;
      }
      if (std::sqrt(step_norm) <= opt.step_tolerance * (std::sqrt(x_norm) + opt.step_tolerance)) {
        // No smaller cost within rounding: stationary point.
        res.converged = true;
        break;
      }
      damping *= 10.0;
    }
    if (!improved || res.converged) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace phnu
