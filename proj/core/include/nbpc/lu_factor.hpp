// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_LU_FACTOR_HPP
#define NBPC_LU_FACTOR_HPP

#include <span>
#include <string_view>
#include <variant>

#include "nbpc/banded_lu.hpp"
#include "nbpc/sparse_lu.hpp"

namespace nbpc
{

enum class LuBackend
{
  banded,
  sparse,
  automatic
};

LuBackend parse_lu_backend(std::string_view name);
std::string_view to_string(LuBackend backend);

/// Band storage above this many bytes makes `automatic` pick the sparse backend.
inline constexpr std::size_t banded_storage_budget = std::size_t{256} << 20;

//
// Exact LU factors of a Galerkin matrix, from either backend. This is the
// object the nearby preconditioner applies.
//
class LuFactor
{
public:
  LuFactor(const ComplexSparseMatrix &m, LuBackend backend = LuBackend::automatic,
           Index bandwidth = -1);

  Index dim() const noexcept;
  LuBackend backend() const noexcept;

  CVector solve(std::span<const cplx> b) const;
  CVector solve_adjoint(std::span<const cplx> b) const;
  void solve_in_place(std::span<cplx> x) const;
  void solve_adjoint_in_place(std::span<cplx> x) const;

  const BandedLU *banded() const noexcept { return std::get_if<BandedLU>(&impl_); }

private:
  std::variant<BandedLU, SparseLU> impl_;
};

}  // namespace nbpc

#endif  // NBPC_LU_FACTOR_HPP
