// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_QUADRATURE_HPP
#define NBPC_QUADRATURE_HPP

#include <array>
#include <vector>

namespace nbpc
{

struct GaussRule
{
  std::vector<double> nodes;    ///< on [-1, 1]
  std::vector<double> weights;  ///< sum to 2
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// Point of a triangle rule: barycentric coordinates and a weight
/// normalised so that the weights sum to one (multiply by the area).
struct TrianglePoint
{
  std::array<double, 3> bary;
  double weight;
};

/// Seven-point rule, exact for polynomials of degree 5.
const std::array<TrianglePoint, 7> &triangle_rule7();

}  // namespace nbpc

#endif  // NBPC_QUADRATURE_HPP
