// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/banded_lu.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbpc/errors.hpp"

namespace nbpc
{

std::size_t BandedLU::storage_estimate(Index n, Index bandwidth) noexcept
{
  return static_cast<std::size_t>(n) * (3 * static_cast<std::size_t>(bandwidth) + 1) *
         sizeof(cplx);
}

BandedLU::BandedLU(const ComplexSparseMatrix &m, Index bandwidth)
  : n_(m.dim()), kl_(bandwidth), ku_(bandwidth), kv_(2 * bandwidth), ldab_(3 * bandwidth + 1)
{
  if (bandwidth < 0)
    throw BandwidthError("band lu: negative bandwidth");
  ab_.assign(static_cast<std::size_t>(n_) * ldab_, cplx{});
  ipiv_.resize(n_);

  const auto off = m.row_offsets();
  const auto col = m.col_indices();
  const auto val = m.values();
  for (Index r = 0; r < n_; ++r)
    for (Index p = off[r]; p < off[r + 1]; ++p)
    {
      if (std::abs(col[p] - r) > bandwidth)
        throw BandwidthError("band lu: entry (" + std::to_string(r) + ", " +
                             std::to_string(col[p]) + ") outside bandwidth " +
                             std::to_string(bandwidth));
      at(r, col[p]) = val[p];
    }

  const double threshold = 1e-14 * m.max_abs();
  Index ju = 0;
  for (Index j = 0; j < n_; ++j)
  {
    const Index km = std::min(kl_, n_ - 1 - j);
    cplx *colj = &ab_[static_cast<std::size_t>(j) * ldab_ + kv_];

    Index jp = 0;
    double best = std::abs(colj[0]);
    for (Index i = 1; i <= km; ++i)
      if (std::abs(colj[i]) > best)
      {
        best = std::abs(colj[i]);
        jp = i;
      }
    ipiv_[j] = j + jp;
    if (!(best > threshold) || best == 0.0)
      throw SingularMatrix("band lu: pivot column " + std::to_string(j) +
                           " is numerically zero");

    ju = std::max(ju, std::min(j + ku_ + jp, n_ - 1));
    if (jp != 0)
      for (Index c = j; c <= ju; ++c)
        std::swap(at(j, c), at(j + jp, c));

    if (km > 0)
    {
      const cplx inv = 1.0 / colj[0];
      for (Index i = 1; i <= km; ++i)
        colj[i] *= inv;
      for (Index c = j + 1; c <= ju; ++c)
      {
        const cplx t = at(j, c);
        if (t == cplx{})
          continue;
        cplx *target = &at(j + 1, c);
        for (Index i = 1; i <= km; ++i)
          target[i - 1] -= t * colj[i];
      }
    }
  }
}

void BandedLU::solve_in_place(std::span<cplx> x) const
{
  if (x.size() != static_cast<std::size_t>(n_))
    throw DimensionMismatch("lu_solve: dimension mismatch");
  // L: interleaved interchanges and unit-lower eliminations
  for (Index j = 0; j + 1 < n_; ++j)
  {
    const Index km = std::min(kl_, n_ - 1 - j);
    if (ipiv_[j] != j)
      std::swap(x[j], x[ipiv_[j]]);
    const cplx xj = x[j];
    if (xj == cplx{})
      continue;
    const cplx *l = &ab_[static_cast<std::size_t>(j) * ldab_ + kv_ + 1];
    for (Index i = 0; i < km; ++i)
      x[j + 1 + i] -= xj * l[i];
  }
  // U has upper bandwidth kl + ku
  for (Index j = n_ - 1; j >= 0; --j)
  {
    x[j] /= at(j, j);
    const cplx xj = x[j];
    if (xj == cplx{})
      continue;
    const Index top = std::max<Index>(0, j - kv_);
    for (Index i = top; i < j; ++i)
      x[i] -= xj * at(i, j);
  }
}

void BandedLU::solve_adjoint_in_place(std::span<cplx> x) const
{
  if (x.size() != static_cast<std::size_t>(n_))
    throw DimensionMismatch("lu_solve: dimension mismatch");
  // U^H y = b
  for (Index j = 0; j < n_; ++j)
  {
    const Index top = std::max<Index>(0, j - kv_);
    cplx s = x[j];
    for (Index i = top; i < j; ++i)
      s -= std::conj(at(i, j)) * x[i];
    x[j] = s / std::conj(at(j, j));
  }
  // L^H P x = y
  for (Index j = n_ - 2; j >= 0; --j)
  {
    const Index km = std::min(kl_, n_ - 1 - j);
    const cplx *l = &ab_[static_cast<std::size_t>(j) * ldab_ + kv_ + 1];
    cplx s = x[j];
    for (Index i = 0; i < km; ++i)
      s -= std::conj(l[i]) * x[j + 1 + i];
    x[j] = s;
    if (ipiv_[j] != j)
      std::swap(x[j], x[ipiv_[j]]);
  }
}

CVector BandedLU::solve(std::span<const cplx> b) const
{
  CVector x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

CVector BandedLU::solve_adjoint(std::span<const cplx> b) const
{
  CVector x(b.begin(), b.end());
  solve_adjoint_in_place(x);
  return x;
}

BandedLU::DenseFactors BandedLU::unpack() const
{
  DenseFactors f;
  f.row_order.resize(n_);
  for (Index i = 0; i < n_; ++i)
    f.row_order[i] = i;
  f.lower = Eigen::MatrixXcd::Identity(n_, n_);
  f.upper = Eigen::MatrixXcd::Zero(n_, n_);
  for (Index j = 0; j < n_; ++j)
  {
    const Index p = ipiv_[j];
    if (p != j)
    {
      std::swap(f.row_order[j], f.row_order[p]);
      for (Index c = 0; c < j; ++c)
        std::swap(f.lower(j, c), f.lower(p, c));
    }
    const Index km = std::min(kl_, n_ - 1 - j);
    for (Index i = 1; i <= km; ++i)
      f.lower(j + i, j) = at(j + i, j);
    for (Index i = std::max<Index>(0, j - kv_); i <= j; ++i)
      f.upper(i, j) = at(i, j);
  }
  return f;
}

BandedLU lu_factorize(const ComplexSparseMatrix &m, Index bandwidth) { return BandedLU(m, bandwidth); }

CVector lu_solve(const BandedLU &factor, std::span<const cplx> b) { return factor.solve(b); }

}  // namespace nbpc
