// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/analysis.hpp"

#include <cmath>
#include <optional>

#include "nbpc/errors.hpp"
#include "nbpc/rng.hpp"

namespace nbpc
{

namespace
{

CVector start_vector(Index n)
{
  RngStream rng(0x5eed5eedULL);
  CVector x(n);
  for (cplx &v : x)
    v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return x;
}

// x -> W^{-1} x for the weight of `spec`.
void apply_inverse_weight(const InnerProductSpec &spec, std::span<const cplx> x, std::span<cplx> y)
{
  switch (spec.mode)
  {
  case NormMode::euclidean:
    std::copy(x.begin(), x.end(), y.begin());
    return;
  case NormMode::dk:
    if (!spec.dk_factor)
      throw Error("weighted_operator_norm: mode dk needs the D_k factor");
    std::copy(x.begin(), x.end(), y.begin());
    spec.dk_factor->solve_in_place(y);
    return;
  case NormMode::dk_inverse:
    if (!spec.dk)
      throw Error("weighted_operator_norm: mode dk_inverse needs the D_k matrix");
    spec.dk->multiply(x, y);
    return;
  }
}

}  // namespace

double power_iteration_max(const LinearOperator &op, Index n, double rel_tol, int max_iter)
{
  CVector x = start_vector(n);
  double nx = norm2(x);
  for (cplx &v : x)
    v /= nx;
  CVector y(n);
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it)
  {
    op(x, y);
    const double rq = dot(y, x).real();
    const double ny = norm2(y);
    if (ny == 0.0)
      return 0.0;
    if (it > 0 && std::abs(rq - prev) <= rel_tol * std::abs(rq))
      return rq;
    prev = rq;
    for (Index i = 0; i < n; ++i)
      x[i] = y[i] / ny;
  }
  throw ConvergenceError("power iteration: no convergence after " + std::to_string(max_iter) +
                         " steps");
}

OperatorNormEstimate weighted_operator_norm(const LinearOperator &apply_b,
                                            const LinearOperator &apply_b_adjoint, Index n,
                                            const InnerProductSpec &spec, int max_iter,
                                            double rel_tol)
{
  OperatorNormEstimate out;
  CVector x = start_vector(n);
  CVector wx(n), y(n), wy(n), z(n);

  auto normalize = [&](CVector &v) {
    spec.apply_weight(v, wx);
    const double nv = std::sqrt(std::max(0.0, dot(v, wx).real()));
    if (nv > 0.0)
      for (cplx &e : v)
        e /= nv;
    return nv;
  };
  normalize(x);

  double prev = -1.0;
  for (int it = 0; it < max_iter; ++it)
  {
    apply_b(x, y);
    spec.apply_weight(y, wy);
    const double est = std::max(0.0, dot(y, wy).real());  // ||B x||_W^2 with ||x||_W = 1
    out.iterations = it + 1;
    out.value = std::sqrt(std::max(est, out.value * out.value));
    if (!std::isfinite(est))
      throw NonFiniteError("weighted_operator_norm: non-finite value");
    if (est == 0.0)
    {
      out.converged = true;
      return out;
    }
    if (prev >= 0.0 && std::abs(est - prev) < rel_tol * est)
    {
      out.converged = true;
      return out;
    }
    prev = est;
    apply_b_adjoint(wy, z);
    apply_inverse_weight(spec, z, x);
    if (normalize(x) == 0.0)
    {
      out.converged = true;
      return out;
    }
  }
  return out;
}

PerturbationOperator make_perturbation_operator(PreconditionSide side, const LuFactor &a1,
                                                const ComplexSparseMatrix &difference)
{
  if (a1.dim() != difference.dim())
    throw DimensionMismatch("perturbation operator: dimension mismatch");
  PerturbationOperator out;
  if (side == PreconditionSide::left)
  {
    // B = A1^{-1} Delta,  B^H = Delta^H A1^{-H}
    out.apply = [&a1, &difference](std::span<const cplx> x, std::span<cplx> y) {
      difference.multiply(x, y);
      a1.solve_in_place(y);
    };
    out.apply_adjoint = [&a1, &difference](std::span<const cplx> x, std::span<cplx> y) {
      const CVector t = a1.solve_adjoint(x);
      difference.multiply_adjoint(t, y);
    };
  }
  else
  {
    // B = Delta A1^{-1},  B^H = A1^{-H} Delta^H
    out.apply = [&a1, &difference](std::span<const cplx> x, std::span<cplx> y) {
      const CVector t = a1.solve(x);
      difference.multiply(t, y);
    };
    out.apply_adjoint = [&a1, &difference](std::span<const cplx> x, std::span<cplx> y) {
      difference.multiply_adjoint(x, y);
      a1.solve_adjoint_in_place(y);
    };
  }
  return out;
}

ComplexSparseMatrix assemble_difference(const ProblemInstance &one, const ProblemInstance &two)
{
  if (one.k != two.k)
    throw Error("assemble_difference: wavenumbers differ");
  const Mesh2D &mesh = *one.mesh;
  const double k2 = one.k * one.k;
  return linear_combination(1.0, assemble_stiffness(mesh, difference(one.A, two.A)), -k2,
                            assemble_mass(mesh, difference(one.n, two.n)));
}

std::vector<ScanRow> perturbation_norm_scan(const ProblemInstance &base,
                                            const PerturbationPattern &pattern,
                                            const std::vector<double> &ts, NormMode mode,
                                            LuBackend backend)
{
  base.validate();
  const Mesh2D &mesh = *base.mesh;
  const ComplexSparseMatrix a1 = assemble_system(base);
  const LuFactor factor(a1, backend, mesh.bandwidth());
  const ComplexSparseMatrix dk = assemble_Dk(mesh, base.k);
  std::optional<SpdFactor> dk_factor;
  if (mode != NormMode::euclidean)
    dk_factor.emplace(dk, mesh.bandwidth());
  InnerProductSpec spec;
  spec.mode = mode;
  spec.dk = &dk;
  spec.dk_factor = dk_factor ? &*dk_factor : nullptr;
  const PreconditionSide side =
    mode == NormMode::dk_inverse ? PreconditionSide::right : PreconditionSide::left;

  std::vector<ScanRow> rows;
  for (const double t : ts)
  {
    ProblemInstance other = base;
    double diff = 0.0;
    if (const auto *g = std::get_if<ScalarField>(&pattern))
    {
      if (g->m() != base.n.m())
        throw GridMismatch("perturbation_norm_scan: pattern grid differs from n");
      for (std::size_t i = 0; i < other.n.size(); ++i)
        other.n.values()[i] += t * g->values()[i];
      diff = diff_norm_linf(base.n, other.n);
    }
    else
    {
      const auto &gm = std::get<MatrixField>(pattern);
      if (gm.m() != base.A.m())
        throw GridMismatch("perturbation_norm_scan: pattern grid differs from A");
      for (std::size_t i = 0; i < other.A.size(); ++i)
        other.A.values()[i] = other.A.values()[i] + t * gm.values()[i];
      diff = diff_norm_linf(base.A, other.A);
    }
    const ComplexSparseMatrix delta = assemble_difference(base, other);
    const PerturbationOperator op = make_perturbation_operator(side, factor, delta);
    const OperatorNormEstimate est =
      weighted_operator_norm(op.apply, op.apply_adjoint, mesh.num_nodes(), spec);
    rows.push_back({t, diff, est.value, est.converged});
  }
  return rows;
}

}  // namespace nbpc
