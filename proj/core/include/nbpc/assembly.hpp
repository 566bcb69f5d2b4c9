// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_ASSEMBLY_HPP
#define NBPC_ASSEMBLY_HPP

#include <memory>
#include <span>

#include "nbpc/coefficients.hpp"
#include "nbpc/mesh.hpp"
#include "nbpc/sparse_matrix.hpp"

namespace nbpc
{

//
// Interior impedance problem on the unit square:
//   -div(A grad u) - k^2 n u = 0 in D,   A grad u . nu - i k u = g on dD,
// with g chosen so that the plane wave exp(i k d.x) solves the
// homogeneous-medium problem.
//
struct ProblemInstance
{
  double k = 1.0;
  std::shared_ptr<const Mesh2D> mesh;
  MatrixField A;
  ScalarField n;
  Point2 direction{0.70710678118654752, 0.70710678118654752};

  /// Throws on a non-unit direction, a non-positive k, coefficient grids that
  /// do not divide the mesh, or non-physical coefficients.
  void validate() const;
};

/// Homogeneous medium A = I, n = 1 on an m x m coefficient grid.
ProblemInstance homogeneous_instance(double k, std::shared_ptr<const Mesh2D> mesh, Index grid_m);

/// S_A: integral of (A grad phi_j) . grad phi_i. Works for any symmetric A,
/// including coefficient differences.
ComplexSparseMatrix assemble_stiffness(const Mesh2D &mesh, const MatrixField &A);

/// M_n: integral of n phi_i phi_j.
ComplexSparseMatrix assemble_mass(const Mesh2D &mesh, const ScalarField &n);

/// N: i k times the boundary integral of phi_i phi_j.
ComplexSparseMatrix assemble_boundary_mass(const Mesh2D &mesh, double k);

/// S_A - k^2 M_n - N. Complex symmetric, not Hermitian.
ComplexSparseMatrix assemble_system(const ProblemInstance &instance);

/// D_k = S_I + k^2 M_1, the matrix of the weighted H^1 norm.
ComplexSparseMatrix assemble_Dk(const Mesh2D &mesh, double k);

/// Gauss-Legendre points per boundary edge: max(4, ceil(k*len) + 3).
int planewave_quadrature_order(double k, double edge_length);

/// Impedance data g(x) = i k (d.nu - 1) exp(i k d.x) on the side with normal nu.
cplx planewave_impedance_data(double k, Point2 direction, Point2 x, Side side);

cplx planewave(double k, Point2 direction, Point2 x);

/// Load vector f_i = boundary integral of g phi_i. `order` <= 0 selects
/// planewave_quadrature_order.
CVector assemble_planewave_rhs(const ProblemInstance &instance, int order = 0);

/// Nodal interpolant of the plane wave.
CVector interpolate_planewave(const ProblemInstance &instance);

/// ||u_h - u||_{H^1_k} / ||u||_{H^1_k} for the plane wave u, using the
/// seven-point triangle rule on every element.
double h1k_relative_fem_error(const ProblemInstance &instance, std::span<const cplx> uh);

}  // namespace nbpc

#endif  // NBPC_ASSEMBLY_HPP
