// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phnu/special.hpp"

namespace phnu {
namespace {

// Explicit series sum_j (-1)^j C(n+a, n-j) x^j / j!.
double laguerre_series(int n, double a, double x) {
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    double binom = 1.0;  // C(n+a, n-j) = prod_{i=1}^{n-j} (a + j + i) / i
    for (int i = 1; i <= n - j; ++i) binom *= (a + j + i) / i;
    sum += (j % 2 ? -1.0 : 1.0) * binom * std::pow(x, j) / std::tgamma(j + 1.0);
  }
  return sum;
}

TEST(Laguerre, DegreeZeroIsOne) { EXPECT_EQ(laguerre({0, 7.3}, 2.5), 1.0); }

TEST(Laguerre, DegreeOne) { EXPECT_DOUBLE_EQ(laguerre({1, 0.5}, 2.0), -0.5); }

TEST(Laguerre, DegreeTwoAgainstHandSeries) {
  const double a = 0.5;
  const double x = 2.0;
  const double hand = x * x / 2.0 - (a + 2.0) * x + (a + 1.0) * (a + 2.0) / 2.0;
  EXPECT_DOUBLE_EQ(hand, -1.125);
  EXPECT_NEAR(laguerre({2, a}, x), hand, 1e-15);
}

TEST(Laguerre, MatchesExplicitSeries) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(-0.9, 10.0), ux(0.0, 15.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = ua(rng);
    const double x = ux(rng);
    for (int n = 0; n <= 10; ++n) {
      const double ref = laguerre_series(n, a, x);
      EXPECT_NEAR(laguerre({n, a}, x), ref, 1e-9 * std::max(1.0, std::abs(ref)))
          << "n=" << n << " a=" << a << " x=" << x;
    }
  }
}

TEST(Laguerre, RejectsBadArguments) {
  EXPECT_THROW(laguerre({2, -1.0}, 1.0), DomainError);
  EXPECT_THROW(laguerre({2, -3.0}, 1.0), DomainError);
  EXPECT_THROW(laguerre({-1, 0.0}, 1.0), DomainError);
  EXPECT_THROW(laguerre({2, 0.0}, -1.0), DomainError);
}

TEST(LaguerreProperty, Orthogonality) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(-0.9, 10.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = ua(rng);
    for (int m = 0; m <= 6; ++m) {
      for (int n = 0; n <= 6; ++n) {
        const double value = integrate_semiinf(
            [&](double x) {
              return std::pow(x, a) * std::exp(-x) * laguerre({m, a}, x) * laguerre({n, a}, x);
            },
            1.0 + a, 20, 1e-13);
        const double norm = std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0));
        const double expected = m == n ? norm : 0.0;
        EXPECT_NEAR(value, expected, 1e-8 * norm) << "a=" << a << " m=" << m << " n=" << n;
      }
    }
  }
}

TEST(LaguerreProperty, DerivativeIdentity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ua(-0.9, 6.0), ux(0.1, 8.0);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = ua(rng);
    const double x = ux(rng);
    for (int n = 1; n <= 6; ++n) {
      const double fd = (laguerre({n, a}, x + h) - laguerre({n, a}, x - h)) / (2.0 * h);
      EXPECT_NEAR(fd, -laguerre({n - 1, a + 1.0}, x), 1e-6);
    }
  }
}

TEST(LogGamma, KnownValues) {
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_NEAR(log_gamma(0.5), std::log(std::sqrt(std::numbers::pi)), 1e-14);
  EXPECT_NEAR(log_gamma(0.5), 0.5723649429, 1e-10);
  EXPECT_NEAR(log_gamma(6.0), std::log(120.0), 1e-13);
  EXPECT_NEAR(log_gamma(6.0), 4.7874917428, 1e-10);
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-2.5), DomainError);
}

TEST(LogGammaProperty, Recurrence) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ux(0.1, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng);
    const double lhs = log_gamma(x + 1.0);
    const double rhs = log_gamma(x) + std::log(x);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs))) << x;
  }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const GaussLegendreRule rule = gauss_legendre(10);
  for (int p = 0; p <= 19; ++p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i] * std::pow(rule.nodes[i], p);
    }
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    EXPECT_NEAR(sum, exact, 1e-14) << p;
  }
}

TEST(IntegrateSemiinf, Exponential) {
  EXPECT_NEAR(integrate_semiinf([](double x) { return std::exp(-x); }, 1.0, 20), 1.0, 1e-10);
}

TEST(IntegrateSemiinf, SecondMoment) {
  EXPECT_NEAR(integrate_semiinf([](double x) { return x * x * std::exp(-x); }, 1.0, 20), 2.0,
              1e-10);
}

TEST(IntegrateSemiinf, NonIntegerPower) {
  const double value =
      integrate_semiinf([](double x) { return std::pow(x, 4.6) * std::exp(-2.0 * x); }, 0.5, 20);
  // Gamma(5.6) / 2^5.6 through log_gamma.
  const double via_gamma = std::exp(log_gamma(5.6) - 5.6 * std::log(2.0));
  // Independent composite trapezoid on [0, 60] with 2e6 panels.
  const int panels = 2000000;
  const double width = 60.0 / panels;
  double trap = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double x = i * width;
    trap += std::pow(x, 4.6) * std::exp(-2.0 * x);
  }
  trap *= width;
  EXPECT_NEAR(std::exp(log_gamma(5.6)), 61.553915, 1e-6);
  EXPECT_NEAR(via_gamma, 1.2690762, 1e-7);
  EXPECT_NEAR(trap, via_gamma, 1e-9);
  EXPECT_NEAR(value, via_gamma, 1e-10);
}

TEST(IntegrateSemiinf, Errors) {
  EXPECT_THROW(integrate_semiinf([](double) { return 1.0; }, 0.0, 20), DomainError);
  EXPECT_THROW(integrate_semiinf([](double x) { return std::exp(-x); }, 1.0, 8), DomainError);
  EXPECT_THROW(integrate_semiinf([](double x) { return x > 1.0 ? NAN : 1.0; }, 1.0, 20),
               IntegrationError);
}

}  // namespace
}  // namespace phnu
