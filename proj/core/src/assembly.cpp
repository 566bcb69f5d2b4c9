// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "nbpc/errors.hpp"
#include "nbpc/quadrature.hpp"

namespace nbpc
{

namespace
{

struct ElementGeometry
{
  double area;
  // grad[a] = gradient of the hat function of local vertex a
  std::array<std::array<double, 2>, 3> grad;
};

ElementGeometry element_geometry(const Mesh2D &mesh, const std::array<Index, 3> &tri)
{
  const Point2 &p0 = mesh.nodes()[tri[0]];
  const Point2 &p1 = mesh.nodes()[tri[1]];
  const Point2 &p2 = mesh.nodes()[tri[2]];
  const double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
  ElementGeometry g;
  g.area = 0.5 * det;
  g.grad[0] = {(p1.y - p2.y) / det, (p2.x - p1.x) / det};
  g.grad[1] = {(p2.y - p0.y) / det, (p0.x - p2.x) / det};
  g.grad[2] = {(p0.y - p1.y) / det, (p1.x - p0.x) / det};
  return g;
}

void require_aligned(const Mesh2D &mesh, Index grid_m)
{
  if (grid_m < 1 || mesh.cells_per_side() % grid_m != 0)
    throw AlignmentError("coefficient grid " + std::to_string(grid_m) +
                         " does not divide mesh resolution " +
                         std::to_string(mesh.cells_per_side()));
}

/// Coefficient cell holding triangle t; requires grid_m | c.
std::array<Index, 2> cell_of(const Mesh2D &mesh, Index t, Index grid_m)
{
  const auto [si, sj] = mesh.triangle_square(t);
  const Index ratio = mesh.cells_per_side() / grid_m;
  return {si / ratio, sj / ratio};
}

ComplexSparseMatrix volume_pattern(const Mesh2D &mesh)
{
  std::vector<std::vector<Index>> rows(mesh.num_nodes());
  for (const auto &tri : mesh.triangles())
    for (const Index a : tri)
      for (const Index b : tri)
        rows[a].push_back(b);
  for (auto &row : rows)
  {
    std::ranges::sort(row);
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return ComplexSparseMatrix::from_pattern(rows, true);
}

Point2 outward_normal(Side side)
{
  switch (side)
  {
  case Side::bottom:
    return {0.0, -1.0};
  case Side::right:
    return {1.0, 0.0};
  case Side::top:
    return {0.0, 1.0};
  case Side::left:
    return {-1.0, 0.0};
  }
  return {};
}

double edge_length(const Mesh2D &mesh, const BoundaryEdge &e)
{
  const Point2 &a = mesh.nodes()[e.nodes[0]];
  const Point2 &b = mesh.nodes()[e.nodes[1]];
  return std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace

void ProblemInstance::validate() const
{
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error("instance: k must be positive and finite");
  if (!mesh)
    throw Error("instance: no mesh");
  if (std::abs(std::hypot(direction.x, direction.y) - 1.0) > 1e-12)
    throw Error("instance: incidence direction must have unit length");
  require_aligned(*mesh, A.m());
  require_aligned(*mesh, n.m());
  if (!is_spd(A))
    throw Error("instance: A must be SPD in every cell");
  if (!is_positive(n))
    throw Error("instance: n must be positive in every cell");
}

ProblemInstance homogeneous_instance(double k, std::shared_ptr<const Mesh2D> mesh, Index grid_m)
{
  ProblemInstance inst;
  inst.k = k;
  inst.mesh = std::move(mesh);
  inst.A = MatrixField(grid_m, SymMatrix2::identity());
  inst.n = ScalarField(grid_m, 1.0);
  inst.validate();
  return inst;
}

ComplexSparseMatrix assemble_stiffness(const Mesh2D &mesh, const MatrixField &A)
{
  require_aligned(mesh, A.m());
  ComplexSparseMatrix s = volume_pattern(mesh);
  for (Index t = 0; t < mesh.num_triangles(); ++t)
  {
    const auto &tri = mesh.triangles()[t];
    const ElementGeometry g = element_geometry(mesh, tri);
    const auto [ci, cj] = cell_of(mesh, t, A.m());
    const SymMatrix2 &a = A(ci, cj);
    for (int p = 0; p < 3; ++p)
    {
      // A grad phi_p
      const double ax = a.a11 * g.grad[p][0] + a.a12 * g.grad[p][1];
      const double ay = a.a12 * g.grad[p][0] + a.a22 * g.grad[p][1];
      for (int q = 0; q < 3; ++q)
        s.add(tri[q], tri[p], g.area * (ax * g.grad[q][0] + ay * g.grad[q][1]));
    }
  }
  return s;
}

ComplexSparseMatrix assemble_mass(const Mesh2D &mesh, const ScalarField &n)
{
  require_aligned(mesh, n.m());
  ComplexSparseMatrix m = volume_pattern(mesh);
  for (Index t = 0; t < mesh.num_triangles(); ++t)
  {
    const auto &tri = mesh.triangles()[t];
    const double area = element_geometry(mesh, tri).area;
    const auto [ci, cj] = cell_of(mesh, t, n.m());
    const double scale = n(ci, cj) * area / 12.0;
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        m.add(tri[p], tri[q], scale * (p == q ? 2.0 : 1.0));
  }
  return m;
}

ComplexSparseMatrix assemble_boundary_mass(const Mesh2D &mesh, double k)
{
  std::vector<std::vector<Index>> rows(mesh.num_nodes());
  for (const BoundaryEdge &e : mesh.boundary_edges())
    for (const Index a : e.nodes)
      for (const Index b : e.nodes)
        rows[a].push_back(b);
  for (auto &row : rows)
  {
    std::ranges::sort(row);
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  ComplexSparseMatrix nmat = ComplexSparseMatrix::from_pattern(rows, true);
  const cplx ik(0.0, k);
  for (const BoundaryEdge &e : mesh.boundary_edges())
  {
    const double len = edge_length(mesh, e);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        nmat.add(e.nodes[p], e.nodes[q], ik * (len / 6.0) * (p == q ? 2.0 : 1.0));
  }
  return nmat;
}

ComplexSparseMatrix assemble_system(const ProblemInstance &instance)
{
  instance.validate();
  const Mesh2D &mesh = *instance.mesh;
  const double k2 = instance.k * instance.k;
  ComplexSparseMatrix sm = linear_combination(1.0, assemble_stiffness(mesh, instance.A), -k2,
                                              assemble_mass(mesh, instance.n));
  return linear_combination(1.0, sm, -1.0, assemble_boundary_mass(mesh, instance.k));
}

ComplexSparseMatrix assemble_Dk(const Mesh2D &mesh, double k)
{
  return linear_combination(1.0, assemble_stiffness(mesh, MatrixField(1, SymMatrix2::identity())),
                            k * k, assemble_mass(mesh, ScalarField(1, 1.0)));
}

int planewave_quadrature_order(double k, double edge_length)
{
  return std::max(4, static_cast<int>(std::ceil(k * edge_length)) + 3);
}

cplx planewave(double k, Point2 d, Point2 x)
{
  return std::exp(cplx(0.0, k * (d.x * x.x + d.y * x.y)));
}

cplx planewave_impedance_data(double k, Point2 d, Point2 x, Side side)
{
  const Point2 nu = outward_normal(side);
  return cplx(0.0, k) * (d.x * nu.x + d.y * nu.y - 1.0) * planewave(k, d, x);
}

CVector assemble_planewave_rhs(const ProblemInstance &instance, int order)
{
  const Mesh2D &mesh = *instance.mesh;
  CVector f(mesh.num_nodes());
  for (const BoundaryEdge &e : mesh.boundary_edges())
  {
    const Point2 &a = mesh.nodes()[e.nodes[0]];
    const Point2 &b = mesh.nodes()[e.nodes[1]];
    const double len = edge_length(mesh, e);
    const GaussRule rule =
      gauss_legendre(order > 0 ? order : planewave_quadrature_order(instance.k, len));
    cplx fa{}, fb{};
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    {
      const double t = 0.5 * (rule.nodes[q] + 1.0);
      const double w = 0.5 * len * rule.weights[q];
      const Point2 x{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      const cplx g = planewave_impedance_data(instance.k, instance.direction, x, e.side);
      fa += w * (1.0 - t) * g;
      fb += w * t * g;
    }
    f[e.nodes[0]] += fa;
    f[e.nodes[1]] += fb;
  }
  return f;
}

CVector interpolate_planewave(const ProblemInstance &instance)
{
  const Mesh2D &mesh = *instance.mesh;
  CVector u(mesh.num_nodes());
  for (Index i = 0; i < mesh.num_nodes(); ++i)
    u[i] = planewave(instance.k, instance.direction, mesh.nodes()[i]);
  return u;
}

double h1k_relative_fem_error(const ProblemInstance &instance, std::span<const cplx> uh)
{
  const Mesh2D &mesh = *instance.mesh;
  if (uh.size() != static_cast<std::size_t>(mesh.num_nodes()))
    throw DimensionMismatch("h1k_relative_fem_error: coefficient vector has wrong length");
  const double k = instance.k;
  const Point2 d = instance.direction;
  const cplx ik(0.0, k);
  double err2 = 0.0, ref2 = 0.0;
  for (const auto &tri : mesh.triangles())
  {
    const ElementGeometry g = element_geometry(mesh, tri);
    cplx gx{}, gy{};
    for (int a = 0; a < 3; ++a)
    {
      gx += uh[tri[a]] * g.grad[a][0];
      gy += uh[tri[a]] * g.grad[a][1];
    }
    for (const TrianglePoint &qp : triangle_rule7())
    {
      Point2 x{};
      cplx vh{};
      for (int a = 0; a < 3; ++a)
      {
        x.x += qp.bary[a] * mesh.nodes()[tri[a]].x;
        x.y += qp.bary[a] * mesh.nodes()[tri[a]].y;
        vh += qp.bary[a] * uh[tri[a]];
      }
      const cplx u = planewave(k, d, x);
      const cplx ux = ik * d.x * u, uy = ik * d.y * u;
      const double w = qp.weight * g.area;
      err2 += w * (std::norm(gx - ux) + std::norm(gy - uy) + k * k * std::norm(vh - u));
      ref2 += w * (std::norm(ux) + std::norm(uy) + k * k * std::norm(u));
    }
  }
  return std::sqrt(err2 / ref2);
}

}  // namespace nbpc
