// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_BANDED_LU_HPP
#define NBPC_BANDED_LU_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "nbpc/sparse_matrix.hpp"

namespace nbpc
{

//
// Complex band LU with partial pivoting in LAPACK gbtrf layout: column j of
// the band holds rows j-ku-kl .. j+kl, where the top kl rows receive pivot
// fill. A completed factor is immutable; solves allocate their own output and
// may run concurrently.
//
class BandedLU
{
public:
  /// Factorizes m; every stored entry must satisfy |i - j| <= bandwidth.
  /// Throws BandwidthError or SingularMatrix (|pivot| < 1e-14 * max|m_ij|).
  BandedLU(const ComplexSparseMatrix &m, Index bandwidth);

  Index dim() const noexcept { return n_; }
  Index lower_bandwidth() const noexcept { return kl_; }
  Index upper_bandwidth() const noexcept { return ku_; }
  std::size_t storage_bytes() const noexcept { return ab_.size() * sizeof(cplx); }

  /// Solves M x = b.
  CVector solve(std::span<const cplx> b) const;
  /// Solves M^H x = b.
  CVector solve_adjoint(std::span<const cplx> b) const;

  void solve_in_place(std::span<cplx> x) const;
  void solve_adjoint_in_place(std::span<cplx> x) const;

  struct DenseFactors
  {
    std::vector<Index> row_order;  ///< (P M) row r = M row row_order[r]
    Eigen::MatrixXcd lower;        ///< unit lower triangular
    Eigen::MatrixXcd upper;
  };
  /// Expands the factors into dense P, L, U with P M = L U. Small matrices only.
  DenseFactors unpack() const;

  /// Bytes the band storage would need for an n x n matrix of half-bandwidth b.
  static std::size_t storage_estimate(Index n, Index bandwidth) noexcept;

private:
  cplx &at(Index row, Index col) { return ab_[static_cast<std::size_t>(col) * ldab_ + kv_ + row - col]; }
  const cplx &at(Index row, Index col) const
  {
    return ab_[static_cast<std::size_t>(col) * ldab_ + kv_ + row - col];
  }

  Index n_;
  Index kl_;
  Index ku_;
  Index kv_;
  Index ldab_;
  std::vector<cplx> ab_;
  std::vector<Index> ipiv_;
};

/// Band LU of m with the given half-bandwidth.
BandedLU lu_factorize(const ComplexSparseMatrix &m, Index bandwidth);
CVector lu_solve(const BandedLU &factor, std::span<const cplx> b);

}  // namespace nbpc

#endif  // NBPC_BANDED_LU_HPP
