// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "phnu/error.hpp"

namespace phnu {

/// Real polynomial c0 + c1 s + c2 s^2. The degree is structural: the index of
/// the highest coefficient that is exactly nonzero.
struct Poly2 {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  constexpr int degree() const {
    if (c2 != 0.0) return 2;
    if (c1 != 0.0) return 1;
    return 0;
  }
  constexpr bool is_zero() const { return c0 == 0.0 && c1 == 0.0 && c2 == 0.0; }

  constexpr double operator()(double s) const { return c0 + s * (c1 + s * c2); }

  constexpr Poly2 derivative() const { return {c1, 2.0 * c2, 0.0}; }
  /// Second derivative, a constant.
  constexpr double second_derivative() const { return 2.0 * c2; }

  friend constexpr Poly2 operator+(const Poly2& a, const Poly2& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend constexpr Poly2 operator-(const Poly2& a, const Poly2& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend constexpr Poly2 operator*(double k, const Poly2& a) {
    return {k * a.c0, k * a.c1, k * a.c2};
  }
  friend constexpr bool operator==(const Poly2&, const Poly2&) = default;
};

/// Product of two polynomials whose degrees sum to at most 2.
inline Poly2 multiply(const Poly2& a, const Poly2& b) {
  if (a.degree() + b.degree() > 2) {
    throw DomainError("multiply: product degree exceeds 2");
  }
  return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0,
          a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
}

/// Dense polynomial of arbitrary degree, coefficients in ascending order.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
  }

  std::size_t degree() const {
    for (std::size_t i = coeffs_.size(); i-- > 1;) {
      if (coeffs_[i] != 0.0) return i;
    }
    return 0;
  }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }

  double operator()(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * s + *it;
    }
    return acc;
  }

 private:
  std::vector<double> coeffs_;
};

}  // namespace phnu
