// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_SPARSE_LU_HPP
#define NBPC_SPARSE_LU_HPP

#include <memory>
#include <span>

#include "nbpc/sparse_matrix.hpp"

namespace nbpc
{

//
// General sparse LU with a fill-reducing ordering, backed by UMFPACK. Used in
// place of the band factorization when band storage would not fit in memory.
//
class SparseLU
{
public:
  explicit SparseLU(const ComplexSparseMatrix &m);
  ~SparseLU();
  SparseLU(SparseLU &&) noexcept;
  SparseLU &operator=(SparseLU &&) noexcept;
  SparseLU(const SparseLU &) = delete;
  SparseLU &operator=(const SparseLU &) = delete;

  Index dim() const noexcept;
  /// Nonzeros in L + U.
  double factor_nonzeros() const noexcept;

  void solve_in_place(std::span<cplx> x) const;
  void solve_adjoint_in_place(std::span<cplx> x) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nbpc

#endif  // NBPC_SPARSE_LU_HPP
