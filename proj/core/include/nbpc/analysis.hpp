// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_ANALYSIS_HPP
#define NBPC_ANALYSIS_HPP

#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "nbpc/assembly.hpp"
#include "nbpc/krylov.hpp"
#include "nbpc/lu_factor.hpp"
#include "nbpc/spd_factor.hpp"

namespace nbpc
{

// ---------------------------------------------------------------------------
// Norm equivalence constants of the P1 space

//
// m_minus h ||v||_2 <= ||v_h||_{L^2} <= m_plus h ||v||_2,
// ||grad v_h||_{L^2} <= s_plus ||v||_2                       (d = 2),
// ||v_h||_{L^s} <= c_inv_s h^{2(1/s - 1/2)} ||v_h||_{L^2}.
// c_inv_s is a numerically maximized lower bound for the true constant.
//
struct NormConstants
{
  double m_minus = 0.0;
  double m_plus = 0.0;
  double s_plus = 0.0;
  double s = 2.0;
  double c_inv_s = 1.0;
  double h = 0.0;
  Index cells_per_side = 0;
};

NormConstants compute_norm_constants(const Mesh2D &mesh, double s = 4.0);

/// ||v_h||_{L^s} of a (real or complex) P1 function, seven-point rule per element.
double fe_lebesgue_norm(const Mesh2D &mesh, std::span<const cplx> v, double s);

/// Extreme eigenvalue of a Hermitian positive semidefinite operator by power
/// iteration. Stops when successive Rayleigh quotients differ by less than
/// `rel_tol` relative; throws ConvergenceError after `max_iter` steps.
double power_iteration_max(const LinearOperator &op, Index n, double rel_tol = 1e-10,
                           int max_iter = 10000);

// ---------------------------------------------------------------------------
// Weighted operator norms

struct OperatorNormEstimate
{
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

//
// ||B||_W for W = D_k (mode dk) or W = D_k^{-1} (mode dk_inverse), from power
// iteration on x -> W^{-1} B^H W B x. Both spec.dk and spec.dk_factor must be
// set for the weighted modes. Converged when successive Rayleigh quotients
// differ by < rel_tol relative; otherwise returns the best estimate with
// converged = false.
//
OperatorNormEstimate weighted_operator_norm(const LinearOperator &apply_b,
                                            const LinearOperator &apply_b_adjoint, Index n,
                                            const InnerProductSpec &spec, int max_iter = 2000,
                                            double rel_tol = 1e-6);

/// B = I - A1^{-1} A2 (left) or I - A2 A1^{-1} (right) with its Euclidean
/// adjoint, evaluated through the coefficient difference
/// A1 - A2 = S_{A1-A2} - k^2 M_{n1-n2}.
struct PerturbationOperator
{
  LinearOperator apply;
  LinearOperator apply_adjoint;
};

PerturbationOperator make_perturbation_operator(PreconditionSide side, const LuFactor &a1,
                                                const ComplexSparseMatrix &difference);

/// S_{A1-A2} - k^2 M_{n1-n2} for two instances on the same mesh.
ComplexSparseMatrix assemble_difference(const ProblemInstance &one, const ProblemInstance &two);

struct ScanRow
{
  double t = 0.0;
  double diff_linf = 0.0;
  double norm = 0.0;
  bool converged = false;
};

/// Perturbation shape: n2 = n1 + t g (scalar) or A2 = A1 + t G (matrix).
using PerturbationPattern = std::variant<ScalarField, MatrixField>;

//
// Measures ||I - A1^{-1} A2(t)|| in the weighted norm of `mode` for each t.
// mode dk pairs with left preconditioning, dk_inverse with right. The factors
// of A1 and D_k are computed once.
//
std::vector<ScanRow> perturbation_norm_scan(const ProblemInstance &base,
                                            const PerturbationPattern &pattern,
                                            const std::vector<double> &ts, NormMode mode,
                                            LuBackend backend = LuBackend::automatic);

// ---------------------------------------------------------------------------
// Dense path (small systems only)

Eigen::MatrixXcd to_dense(const ComplexSparseMatrix &m);
/// Columns Op e_j.
Eigen::MatrixXcd dense_from_operator(const LinearOperator &op, Index n);

/// Symmetric square root and inverse square root of an SPD matrix.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> spd_sqrt(const Eigen::MatrixXd &d);

/// sigma_max(D^{1/2} C D^{-1/2}), i.e. ||C||_D.
double dense_weighted_norm(const Eigen::MatrixXcd &c, const Eigen::MatrixXd &d);

struct FovReport
{
  double dist0 = 0.0;    ///< distance from 0 to W_D(C)
  double op_norm = 0.0;  ///< ||C||_D
  double cos_beta = 0.0;
  double sin_beta = 1.0;
  double best_angle = 0.0;
  /// false when 0 lies in (the discretized) W_D(C): the Elman bound is void.
  bool origin_excluded = false;
};

//
// Field of values W_D(C) = {(Cx, x)_D : ||x||_D = 1} through its support
// function: with M = D^{1/2} C D^{-1/2},
//   dist(0, W) = max over theta of lambda_min(Herm(exp(-i theta) M)),
// maximized over `angles` equally spaced directions and refined locally
// around the best one. N <= 500.
//
FovReport fov_distance(const Eigen::MatrixXcd &c, const Eigen::MatrixXd &d, int angles = 720);

/// (||C||_D, ||C^H||_{D^{-1}}), each from its own similarity transform and SVD.
std::pair<double, double> adjoint_norm_identity_check(const Eigen::MatrixXcd &c,
                                                      const Eigen::MatrixXd &d);

}  // namespace nbpc

#endif  // NBPC_ANALYSIS_HPP
