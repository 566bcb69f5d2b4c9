// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "nbpc/analysis.hpp"
#include "nbpc/errors.hpp"
#include "nbpc/quadrature.hpp"
#include "nbpc/rng.hpp"

namespace nbpc
{

double fe_lebesgue_norm(const Mesh2D &mesh, std::span<const cplx> v, double s)
{
  if (static_cast<Index>(v.size()) != mesh.num_nodes())
    throw DimensionMismatch("fe_lebesgue_norm: vector length differs from node count");
  if (!(s >= 1.0) || !std::isfinite(s))
    throw Error("fe_lebesgue_norm: s must be finite and >= 1");
  const double c = mesh.cells_per_side();
  const double area = 0.5 / (c * c);
  // |v|^s can span many orders of magnitude; scale by the largest nodal value.
  double scale = 0.0;
  for (const cplx &z : v)
    scale = std::max(scale, std::abs(z));
  if (scale == 0.0)
    return 0.0;
  double total = 0.0;
  for (const auto &tri : mesh.triangles())
    for (const auto &q : triangle_rule7())
    {
      const cplx val = q.bary[0] * v[tri[0]] + q.bary[1] * v[tri[1]] + q.bary[2] * v[tri[2]];
      total += q.weight * area * std::pow(std::abs(val) / scale, s);
    }
  return scale * std::pow(total, 1.0 / s);
}

NormConstants compute_norm_constants(const Mesh2D &mesh, double s)
{
  const Index n = mesh.num_nodes();
  const double h = mesh.h();
  const ComplexSparseMatrix mass = assemble_mass(mesh, ScalarField(1, 1.0));
  const ComplexSparseMatrix stiff = assemble_stiffness(mesh, MatrixField(1, SymMatrix2::identity()));
  const SpdFactor mass_factor(mass);

  const double mass_max = power_iteration_max(
    [&](std::span<const cplx> x, std::span<cplx> y) { mass.multiply(x, y); }, n);
  const double mass_inv_max = power_iteration_max(
    [&](std::span<const cplx> x, std::span<cplx> y) {
      std::copy(x.begin(), x.end(), y.begin());
      mass_factor.solve_in_place(y);
    },
    n);
  const double stiff_max = power_iteration_max(
    [&](std::span<const cplx> x, std::span<cplx> y) { stiff.multiply(x, y); }, n);

  NormConstants out;
  out.h = h;
  out.s = s;
  out.cells_per_side = mesh.cells_per_side();
  out.m_plus = std::sqrt(mass_max) / h;
  out.m_minus = 1.0 / (std::sqrt(mass_inv_max) * h);
  out.s_plus = std::sqrt(stiff_max);

  // Lower bound for C_inv,s: best ratio over nodal indicators and random vectors.
  const double hscale = std::pow(h, 2.0 * (1.0 / s - 0.5));
  auto ratio = [&](std::span<const cplx> v) {
    return fe_lebesgue_norm(mesh, v, s) / (hscale * fe_lebesgue_norm(mesh, v, 2.0));
  };
  const Index c = mesh.cells_per_side();
  double best = 0.0;
  CVector v(n);
  for (const Index node : {mesh.node_index(c / 2, c / 2), mesh.node_index(c / 2, 0),
                           mesh.node_index(0, 0)})
  {
    std::fill(v.begin(), v.end(), cplx{});
    v[node] = 1.0;
    best = std::max(best, ratio(v));
  }
  RngStream rng(0xc1a55e5ULL);
  for (int trial = 0; trial < 20; ++trial)
  {
    for (cplx &z : v)
      z = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    best = std::max(best, ratio(v));
  }
  out.c_inv_s = best;
  return out;
}

}  // namespace nbpc
