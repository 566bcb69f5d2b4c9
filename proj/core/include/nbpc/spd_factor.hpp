// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_SPD_FACTOR_HPP
#define NBPC_SPD_FACTOR_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "nbpc/sparse_matrix.hpp"

namespace nbpc
{

/// Band Cholesky factor L L^T of a real symmetric positive definite matrix.
class SpdFactor
{
public:
  /// `bandwidth` < 0 uses the matrix's own bandwidth. Throws
  /// NotPositiveDefinite on a non-positive pivot and Error on complex entries.
  explicit SpdFactor(const ComplexSparseMatrix &m, Index bandwidth = -1);

  Index dim() const noexcept { return n_; }
  Index bandwidth() const noexcept { return b_; }

  CVector solve(std::span<const cplx> rhs) const;
  void solve_in_place(std::span<cplx> x) const;

  /// y = L^T x, so that x^T D x = |L^T x|^2.
  CVector apply_upper(std::span<const cplx> x) const;

  Eigen::MatrixXd lower_dense() const;

private:
  double &at(Index row, Index col) { return l_[static_cast<std::size_t>(col) * (b_ + 1) + row - col]; }
  double at(Index row, Index col) const
  {
    return l_[static_cast<std::size_t>(col) * (b_ + 1) + row - col];
  }

  Index n_;
  Index b_;
  std::vector<double> l_;
};

SpdFactor spd_factorize(const ComplexSparseMatrix &dk);
CVector spd_solve(const SpdFactor &factor, std::span<const cplx> b);

}  // namespace nbpc

#endif  // NBPC_SPD_FACTOR_HPP
