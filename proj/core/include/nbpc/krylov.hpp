// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_KRYLOV_HPP
#define NBPC_KRYLOV_HPP

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nbpc/assembly.hpp"
#include "nbpc/lu_factor.hpp"
#include "nbpc/sparse_matrix.hpp"
#include "nbpc/spd_factor.hpp"

namespace nbpc
{

/// y = Op x. Implementations must be linear.
using LinearOperator = std::function<void(std::span<const cplx>, std::span<cplx>)>;

enum class NormMode
{
  euclidean,
  dk,
  dk_inverse
};

NormMode parse_norm_mode(std::string_view name);
std::string_view to_string(NormMode mode);

//
// Inner product (x, y)_W = (W x, y)_2 with W = I, D_k or D_k^{-1}. Holds
// non-owning pointers; the weight objects must outlive the spec.
//
struct InnerProductSpec
{
  NormMode mode = NormMode::euclidean;
  const ComplexSparseMatrix *dk = nullptr;
  const SpdFactor *dk_factor = nullptr;

  static InnerProductSpec euclidean() { return {}; }
  static InnerProductSpec weighted(const ComplexSparseMatrix &dk)
  {
    return {NormMode::dk, &dk, nullptr};
  }
  static InnerProductSpec weighted_inverse(const SpdFactor &factor)
  {
    return {NormMode::dk_inverse, nullptr, &factor};
  }

  /// y = W x.
  void apply_weight(std::span<const cplx> x, std::span<cplx> y) const;
};

cplx weighted_inner(const InnerProductSpec &spec, std::span<const cplx> x, std::span<const cplx> y);
double weighted_norm(const InnerProductSpec &spec, std::span<const cplx> x);

enum class PreconditionSide
{
  left,
  right
};

PreconditionSide parse_side(std::string_view name);
std::string_view to_string(PreconditionSide side);

struct GmresOptions
{
  double tol = 1e-5;
  int max_iter = 500;
  std::optional<int> restart;
  PreconditionSide side = PreconditionSide::left;
  InnerProductSpec inner;

  void validate() const;
};

struct GmresReport
{
  int iterations = 0;
  bool converged = false;
  /// Arnoldi produced an invariant subspace; the iterate is exact.
  bool breakdown = false;
  /// residual_history[m] = ||r_m|| / ||r_0|| in the working norm, m = 0..iterations.
  std::vector<double> residual_history;
  CVector solution;

  double final_relres() const { return residual_history.empty() ? 1.0 : residual_history.back(); }
};

/// GMRES from the zero initial guess, with Arnoldi orthogonalization (modified
/// Gram-Schmidt plus one conditional second pass) in the inner product of
/// opts.inner. Each iterate minimizes the working-norm residual over the Krylov
/// space. Throws NonFiniteError if NaN/Inf appears.
GmresReport gmres(const LinearOperator &op, std::span<const cplx> b, const GmresOptions &opts);

/// left: A1^{-1} (A2 x); right: A2 (A1^{-1} x).
CVector apply_preconditioned(PreconditionSide side, const LuFactor &a1,
                             const ComplexSparseMatrix &a2, std::span<const cplx> x);

/// Solves A2 u = f preconditioned by the factors of A1. For the right side GMRES
/// runs on A2 A1^{-1} v = f and the report's solution is u = A1^{-1} v.
GmresReport solve_preconditioned(const LuFactor &a1, const ComplexSparseMatrix &a2,
                                 std::span<const cplx> f, const GmresOptions &opts);

/// Assembles and factorizes everything for the pair (instance1, instance2),
/// then calls solve_preconditioned with the plane-wave load of instance 2.
/// Weighted modes with no weight supplied in opts.inner use D_k of the mesh.
GmresReport solve_nearby(const ProblemInstance &instance1, const ProblemInstance &instance2,
                         GmresOptions opts, LuBackend backend = LuBackend::automatic);

}  // namespace nbpc

#endif  // NBPC_KRYLOV_HPP
