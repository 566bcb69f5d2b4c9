// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/krylov.hpp"

#include <cmath>
#include <string>

#include "nbpc/errors.hpp"

namespace nbpc
{

NormMode parse_norm_mode(std::string_view name)
{
  if (name == "euclidean" || name == "2")
    return NormMode::euclidean;
  if (name == "dk")
    return NormMode::dk;
  if (name == "dkinv" || name == "dk_inverse")
    return NormMode::dk_inverse;
  throw ConfigError("norm", "unknown norm '" + std::string(name) + "'");
}

std::string_view to_string(NormMode mode)
{
  switch (mode)
  {
  case NormMode::euclidean:
    return "euclidean";
  case NormMode::dk:
    return "dk";
  case NormMode::dk_inverse:
    return "dkinv";
  }
  return "?";
}

PreconditionSide parse_side(std::string_view name)
{
  if (name == "left")
    return PreconditionSide::left;
  if (name == "right")
    return PreconditionSide::right;
  throw ConfigError("side", "expected 'left' or 'right', got '" + std::string(name) + "'");
}

std::string_view to_string(PreconditionSide side)
{
  return side == PreconditionSide::left ? "left" : "right";
}

void InnerProductSpec::apply_weight(std::span<const cplx> x, std::span<cplx> y) const
{
  switch (mode)
  {
  case NormMode::euclidean:
    if (x.size() != y.size())
      throw DimensionMismatch("inner product: dimension mismatch");
    std::copy(x.begin(), x.end(), y.begin());
    return;
  case NormMode::dk:
    if (!dk)
      throw Error("inner product: D_k matrix not set");
    dk->multiply(x, y);
    return;
  case NormMode::dk_inverse:
    if (!dk_factor)
      throw Error("inner product: D_k factor not set");
    if (x.size() != y.size())
      throw DimensionMismatch("inner product: dimension mismatch");
    std::copy(x.begin(), x.end(), y.begin());
    dk_factor->solve_in_place(y);
    return;
  }
}

cplx weighted_inner(const InnerProductSpec &spec, std::span<const cplx> x, std::span<const cplx> y)
{
  if (x.size() != y.size())
    throw DimensionMismatch("weighted_inner: dimension mismatch");
  CVector wx(x.size());
  spec.apply_weight(x, wx);
  return dot(wx, y);
}

double weighted_norm(const InnerProductSpec &spec, std::span<const cplx> x)
{
  return std::sqrt(std::max(0.0, weighted_inner(spec, x, x).real()));
}

void GmresOptions::validate() const
{
  if (!(tol > 0.0 && tol < 1.0))
    throw ConfigError("tol", "must lie in (0, 1)");
  if (max_iter < 1)
    throw ConfigError("max_iter", "must be >= 1");
  if (restart && *restart < 1)
    throw ConfigError("restart", "must be >= 1");
  if (inner.mode == NormMode::dk && !inner.dk)
    throw ConfigError("norm", "mode dk needs the D_k matrix");
  if (inner.mode == NormMode::dk_inverse && !inner.dk_factor)
    throw ConfigError("norm", "mode dkinv needs the D_k factor");
}

namespace
{

void check_finite(cplx v)
{
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonFiniteError("gmres: non-finite value encountered");
}

// sqrt of a squared norm, clamping rounding noise below zero
double root_of(cplx squared)
{
  check_finite(squared);
  return std::sqrt(std::max(0.0, squared.real()));
}

// Rotation [c, s; -conj(s), c] with real c that zeroes the second entry.
struct Givens
{
  double c = 1.0;
  cplx s{};

  static Givens make(cplx a, cplx b)
  {
    const double aa = std::abs(a), bb = std::abs(b);
    if (bb == 0.0)
      return {1.0, {}};
    if (aa == 0.0)
      return {0.0, std::conj(b) / bb};
    const double t = std::hypot(aa, bb);
    return {aa / t, (a / aa) * std::conj(b) / t};
  }

  void apply(cplx &x, cplx &y) const
  {
    const cplx nx = c * x + s * y;
    y = -std::conj(s) * x + c * y;
    x = nx;
  }
};

struct CycleResult
{
  int steps = 0;
  bool converged = false;
  bool breakdown = false;
};

// One GMRES cycle from the zero guess on op x = r, appending residual ratios
// (relative to `ref_norm`) to `history` and adding the correction to x.
CycleResult gmres_cycle(const LinearOperator &op, std::span<const cplx> r, double ref_norm,
                        const GmresOptions &opts, int max_steps, std::vector<double> &history,
                        std::span<cplx> x)
{
  const std::size_t n = r.size();
  const InnerProductSpec &ip = opts.inner;
  const bool weighted = ip.mode != NormMode::euclidean;

  CycleResult out;
  CVector wr(n);
  ip.apply_weight(r, wr);
  const double beta = root_of(dot(r, wr));
  check_finite(beta);
  if (beta == 0.0)
  {
    out.converged = true;
    return out;
  }

  std::vector<CVector> basis;   // V
  std::vector<CVector> wbasis;  // W V (only stored for weighted modes)
  basis.reserve(max_steps + 1);
  if (weighted)
    wbasis.reserve(max_steps + 1);
  {
    CVector v(r.begin(), r.end());
    for (cplx &e : v)
      e /= beta;
    basis.push_back(std::move(v));
    if (weighted)
    {
      for (cplx &e : wr)
        e /= beta;
      wbasis.push_back(std::move(wr));
    }
  }
  auto weighted_basis = [&](std::size_t i) -> const CVector & {
    return weighted ? wbasis[i] : basis[i];
  };

  std::vector<std::vector<cplx>> hess;  // column j has j + 2 entries
  std::vector<Givens> rotations;
  std::vector<cplx> g{cplx(beta)};
  const double breakdown_tol = 1e-14 * ref_norm;

  CVector w(n), ww(n);
  for (int j = 0; j < max_steps; ++j)
  {
    op(basis[j], w);
    std::vector<cplx> h(j + 2);
    double projected = 0.0;
    for (int i = 0; i <= j; ++i)
    {
      const cplx hij = dot(w, weighted_basis(i));
      axpy(-hij, basis[i], w);
      h[i] = hij;
      projected += std::norm(hij);
    }
    ip.apply_weight(w, ww);
    double wnorm = root_of(dot(w, ww));
    const double before = std::sqrt(wnorm * wnorm + projected);
    if (wnorm < before / std::sqrt(2.0))
    {
      for (int i = 0; i <= j; ++i)
      {
        const cplx corr = dot(w, weighted_basis(i));
        axpy(-corr, basis[i], w);
        h[i] += corr;
      }
      ip.apply_weight(w, ww);
      wnorm = root_of(dot(w, ww));
    }
    check_finite(wnorm);
    h[j + 1] = wnorm;

    for (int i = 0; i < j; ++i)
      rotations[i].apply(h[i], h[i + 1]);
    const Givens rot = Givens::make(h[j], h[j + 1]);
    rot.apply(h[j], h[j + 1]);
    rotations.push_back(rot);
    g.push_back(0.0);
    rot.apply(g[j], g[j + 1]);
    hess.push_back(std::move(h));

    const bool lucky = wnorm < breakdown_tol;
    const double relres = lucky ? 0.0 : std::abs(g[j + 1]) / ref_norm;
    history.push_back(relres);
    out.steps = j + 1;

    if (lucky)
    {
      out.breakdown = true;
      out.converged = true;
      break;
    }
    if (relres <= opts.tol)
    {
      out.converged = true;
      break;
    }
    if (j + 1 < max_steps)
    {
      CVector v(n);
      for (std::size_t l = 0; l < n; ++l)
        v[l] = w[l] / wnorm;
      basis.push_back(std::move(v));
      if (weighted)
      {
        CVector zv(n);
        for (std::size_t l = 0; l < n; ++l)
          zv[l] = ww[l] / wnorm;
        wbasis.push_back(std::move(zv));
      }
    }
  }

  // back substitution on the rotated Hessenberg system
  const int m = out.steps;
  std::vector<cplx> y(m);
  for (int i = m - 1; i >= 0; --i)
  {
    cplx s = g[i];
    for (int l = i + 1; l < m; ++l)
      s -= hess[l][i] * y[l];
    y[i] = s / hess[i][i];
  }
  for (int i = 0; i < m; ++i)
    axpy(y[i], basis[i], x);
  return out;
}

}  // namespace

GmresReport gmres(const LinearOperator &op, std::span<const cplx> b, const GmresOptions &opts)
{
  opts.validate();
  const std::size_t n = b.size();
  GmresReport report;
  report.solution.assign(n, cplx{});
  report.residual_history.push_back(1.0);

  const double ref = weighted_norm(opts.inner, b);
  check_finite(ref);
  if (ref == 0.0)
  {
    report.converged = true;
    report.residual_history.back() = 0.0;
    return report;
  }

  const int cycle_len = opts.restart ? *opts.restart : opts.max_iter;
  CVector r(b.begin(), b.end());
  CVector ax(n);
  while (report.iterations < opts.max_iter)
  {
    const int steps = std::min(cycle_len, opts.max_iter - report.iterations);
    const CycleResult cycle =
      gmres_cycle(op, r, ref, opts, steps, report.residual_history, report.solution);
    report.iterations += cycle.steps;
    if (cycle.converged || cycle.breakdown)
    {
      report.converged = true;
      report.breakdown = cycle.breakdown;
      break;
    }
    if (!opts.restart)
      break;
    // restart from the true residual
    op(report.solution, ax);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = b[i] - ax[i];
  }
  report.converged = report.final_relres() <= opts.tol || report.breakdown;
  return report;
}

CVector apply_preconditioned(PreconditionSide side, const LuFactor &a1,
                             const ComplexSparseMatrix &a2, std::span<const cplx> x)
{
  if (a1.dim() != a2.dim() || x.size() != static_cast<std::size_t>(a2.dim()))
    throw DimensionMismatch("apply_preconditioned: dimension mismatch");
  if (side == PreconditionSide::left)
  {
    CVector y = matvec(a2, x);
    a1.solve_in_place(y);
    return y;
  }
  return matvec(a2, a1.solve(x));
}

GmresReport solve_preconditioned(const LuFactor &a1, const ComplexSparseMatrix &a2,
                                 std::span<const cplx> f, const GmresOptions &opts)
{
  if (a1.dim() != a2.dim() || f.size() != static_cast<std::size_t>(a2.dim()))
    throw DimensionMismatch("solve_preconditioned: dimension mismatch");
  const std::size_t n = f.size();
  if (opts.side == PreconditionSide::left)
  {
    const LinearOperator op = [&](std::span<const cplx> x, std::span<cplx> y) {
      a2.multiply(x, y);
      a1.solve_in_place(y);
    };
    const CVector b = a1.solve(f);
    return gmres(op, b, opts);
  }
  CVector tmp(n);
  const LinearOperator op = [&](std::span<const cplx> x, std::span<cplx> y) {
    std::copy(x.begin(), x.end(), tmp.begin());
    a1.solve_in_place(tmp);
    a2.multiply(tmp, y);
  };
  GmresReport report = gmres(op, f, opts);
  a1.solve_in_place(report.solution);
  return report;
}

GmresReport solve_nearby(const ProblemInstance &instance1, const ProblemInstance &instance2,
                         GmresOptions opts, LuBackend backend)
{
  if (instance1.mesh.get() != instance2.mesh.get() &&
      instance1.mesh->cells_per_side() != instance2.mesh->cells_per_side())
    throw DimensionMismatch("solve_nearby: instances live on different meshes");
  if (instance1.k != instance2.k)
    throw Error("solve_nearby: instances have different wavenumbers");

  const ComplexSparseMatrix a1 = assemble_system(instance1);
  const ComplexSparseMatrix a2 = assemble_system(instance2);
  const CVector f = assemble_planewave_rhs(instance2);
  const LuFactor factor(a1, backend, instance1.mesh->bandwidth());

  std::optional<ComplexSparseMatrix> dk;
  std::optional<SpdFactor> dk_factor;
  if (opts.inner.mode == NormMode::dk && !opts.inner.dk)
  {
    dk.emplace(assemble_Dk(*instance1.mesh, instance1.k));
    opts.inner.dk = &*dk;
  }
  if (opts.inner.mode == NormMode::dk_inverse && !opts.inner.dk_factor)
  {
    dk_factor.emplace(assemble_Dk(*instance1.mesh, instance1.k), instance1.mesh->bandwidth());
    opts.inner.dk_factor = &*dk_factor;
  }
  return solve_preconditioned(factor, a2, f, opts);
}

}  // namespace nbpc
