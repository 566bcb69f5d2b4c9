// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "nbpc/errors.hpp"

namespace nbpc
{

namespace
{

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x)
{
  double p0 = 1.0, p1 = x;
  for (int j = 2; j <= n; ++j)
  {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule gauss_legendre(int n)
{
  if (n < 1)
    throw Error("gauss_legendre: need at least one point");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1)
  {
    rule.weights[0] = 2.0;
    return rule;
  }
  for (int i = 0; i < n / 2; ++i)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter)
    {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
  {
    const double dp = legendre(n, 0.0).second;
    rule.weights[n / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

const std::array<TrianglePoint, 7> &triangle_rule7()
{
  static constexpr double w0 = 0.225;
  static constexpr double w1 = 0.13239415278850619;
  static constexpr double w2 = 0.12593918054482714;
  static constexpr double a1 = 0.05971587178976982, b1 = 0.47014206410511505;
  static constexpr double a2 = 0.79742698535308731, b2 = 0.10128650732345633;
  static const std::array<TrianglePoint, 7> rule{{
    {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, w0},
    {{a1, b1, b1}, w1},
    {{b1, a1, b1}, w1},
    {{b1, b1, a1}, w1},
    {{a2, b2, b2}, w2},
    {{b2, a2, b2}, w2},
    {{b2, b2, a2}, w2},
  }};
  return rule;
}

}  // namespace nbpc
