#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wenodec/errors.hpp"

namespace wenodec {

// Nodes/weights on the reference interval [-1, 1], nodes ascending.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  // (x^2 - 1) P_n' = n (x P_n - P_{n-1})
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Newton polish until the update stalls below 1e-15 (a few quadratic steps).
template <class F>
double polish_root(F&& value_and_slope, double x0) {
  double x = x0;
  for (int it = 0; it < 100; ++it) {
    const auto [v, s] = value_and_slope(x);
    const double dx = v / s;
    x -= dx;
    if (std::abs(dx) < 1e-15) break;
  }
  return x;
}

}  // namespace detail

// Gauss-Legendre rule with n points: exact for polynomials of degree 2n-1.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess for the i-th root (descending in x).
    double x = std::cos(M_PI * (4.0 * i + 3.0) / (4.0 * n + 2.0));
    if (n % 2 == 1 && i == n / 2) {
      x = 0.0;  // middle root is exact; Newton would divide 0/0 at x=0 slope
    } else {
      x = detail::polish_root(
          [n](double t) { return detail::legendre(n, t); }, x);
    }
    const auto [p, dp] = detail::legendre(n, x);
    (void)p;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Gauss-Lobatto rule with n >= 2 points: endpoints included, exact for
// polynomials of degree 2n-3. Interior nodes are the roots of P'_{n-1}.
inline QuadratureRule gauss_lobatto(int n) {
  if (n < 2) throw ConfigError("gauss_lobatto: need at least two nodes");
  const int m = n - 1;  // Legendre degree
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;
  for (int i = 1; i < m; ++i) {
    // Chebyshev-Gauss-Lobatto guess, then Newton on P'_m. The second
    // derivative comes from the Legendre ODE:
    //   (1 - x^2) P_m'' = 2 x P_m' - m (m + 1) P_m.
    double x = std::cos(M_PI * i / m);
    if (2 * i == m) {
      x = 0.0;  // symmetric case: zero is a root of P'_m for even m
    } else {
      x = detail::polish_root(
          [m](double t) {
            const auto [p, dp] = detail::legendre(m, t);
            const double ddp = (2.0 * t * dp - m * (m + 1.0) * p) / (1.0 - t * t);
            return std::pair<double, double>(dp, ddp);
          },
          x);
    }
    rule.nodes[m - i] = x;
  }
  for (int i = 0; i < n; ++i) {
    const auto [p, dp] = detail::legendre(m, rule.nodes[i]);
    (void)dp;
    rule.weights[i] = 2.0 / (m * (m + 1.0) * p * p);
  }
  return rule;
}

// Average of f over [a, b] using `rule` mapped onto the interval.
template <class F>
double interval_average(F&& f, double a, double b, const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    acc += rule.weights[q] * f(mid + half * rule.nodes[q]);
  }
  return 0.5 * acc;  // sum of weights is 2
}

}  // namespace wenodec
