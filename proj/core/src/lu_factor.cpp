// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/lu_factor.hpp"

#include <string>

#include "nbpc/errors.hpp"

namespace nbpc
{

LuBackend parse_lu_backend(std::string_view name)
{
  if (name == "banded" || name == "band")
    return LuBackend::banded;
  if (name == "sparse" || name == "umfpack")
    return LuBackend::sparse;
  if (name == "auto" || name == "automatic")
    return LuBackend::automatic;
  throw ConfigError("lu", "unknown LU backend '" + std::string(name) + "'");
}

std::string_view to_string(LuBackend backend)
{
  switch (backend)
  {
  case LuBackend::banded:
    return "banded";
  case LuBackend::sparse:
    return "sparse";
  case LuBackend::automatic:
    return "auto";
  }
  return "?";
}

namespace
{

std::variant<BandedLU, SparseLU> make_factor(const ComplexSparseMatrix &m, LuBackend backend,
                                             Index bandwidth)
{
  if (bandwidth < 0)
    bandwidth = m.bandwidth();
  if (backend == LuBackend::automatic)
    backend = BandedLU::storage_estimate(m.dim(), bandwidth) <= banded_storage_budget
                ? LuBackend::banded
                : LuBackend::sparse;
  if (backend == LuBackend::banded)
    return std::variant<BandedLU, SparseLU>(std::in_place_type<BandedLU>, m, bandwidth);
  return std::variant<BandedLU, SparseLU>(std::in_place_type<SparseLU>, m);
}

}  // namespace

LuFactor::LuFactor(const ComplexSparseMatrix &m, LuBackend backend, Index bandwidth)
  : impl_(make_factor(m, backend, bandwidth))
{
}

Index LuFactor::dim() const noexcept
{
  return std::visit([](const auto &f) { return f.dim(); }, impl_);
}

LuBackend LuFactor::backend() const noexcept
{
  return std::holds_alternative<BandedLU>(impl_) ? LuBackend::banded : LuBackend::sparse;
}

void LuFactor::solve_in_place(std::span<cplx> x) const
{
  std::visit([&](const auto &f) { f.solve_in_place(x); }, impl_);
}

void LuFactor::solve_adjoint_in_place(std::span<cplx> x) const
{
  std::visit([&](const auto &f) { f.solve_adjoint_in_place(x); }, impl_);
}

CVector LuFactor::solve(std::span<const cplx> b) const
{
  CVector x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

CVector LuFactor::solve_adjoint(std::span<const cplx> b) const
{
  CVector x(b.begin(), b.end());
  solve_adjoint_in_place(x);
  return x;
}

}  // namespace nbpc
