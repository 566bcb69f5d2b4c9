// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/spd_factor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbpc/errors.hpp"

namespace nbpc
{

SpdFactor::SpdFactor(const ComplexSparseMatrix &m, Index bandwidth)
  : n_(m.dim()), b_(bandwidth < 0 ? m.bandwidth() : bandwidth)
{
  l_.assign(static_cast<std::size_t>(n_) * (b_ + 1), 0.0);
  const auto off = m.row_offsets();
  const auto col = m.col_indices();
  const auto val = m.values();
  for (Index r = 0; r < n_; ++r)
    for (Index p = off[r]; p < off[r + 1]; ++p)
    {
      const Index c = col[p];
      if (val[p].imag() != 0.0)
        throw Error("spd factor: matrix has complex entries");
      if (std::abs(c - r) > b_)
        throw BandwidthError("spd factor: entry outside bandwidth");
      if (r >= c)
        at(r, c) = val[p].real();
    }

  for (Index j = 0; j < n_; ++j)
  {
    const double d = at(j, j);
    if (!(d > 0.0))
      throw NotPositiveDefinite("spd factor: non-positive pivot at column " + std::to_string(j));
    const double ljj = std::sqrt(d);
    const Index last = std::min(n_ - 1, j + b_);
    double *lj = &at(j, j);
    lj[0] = ljj;
    for (Index i = 1; i <= last - j; ++i)
      lj[i] /= ljj;
    for (Index c = j + 1; c <= last; ++c)
    {
      const double lcj = lj[c - j];
      if (lcj == 0.0)
        continue;
      double *colc = &at(c, c);
      for (Index i = c; i <= last; ++i)
        colc[i - c] -= lj[i - j] * lcj;
    }
  }
}

void SpdFactor::solve_in_place(std::span<cplx> x) const
{
  if (x.size() != static_cast<std::size_t>(n_))
    throw DimensionMismatch("spd_solve: dimension mismatch");
  for (Index j = 0; j < n_; ++j)
  {
    const double *lj = &l_[static_cast<std::size_t>(j) * (b_ + 1)];
    x[j] /= lj[0];
    const cplx xj = x[j];
    const Index last = std::min(n_ - 1, j + b_);
    for (Index i = j + 1; i <= last; ++i)
      x[i] -= lj[i - j] * xj;
  }
  for (Index j = n_ - 1; j >= 0; --j)
  {
    const double *lj = &l_[static_cast<std::size_t>(j) * (b_ + 1)];
    const Index last = std::min(n_ - 1, j + b_);
    cplx s = x[j];
    for (Index i = j + 1; i <= last; ++i)
      s -= lj[i - j] * x[i];
    x[j] = s / lj[0];
  }
}

CVector SpdFactor::solve(std::span<const cplx> rhs) const
{
  CVector x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

CVector SpdFactor::apply_upper(std::span<const cplx> x) const
{
  if (x.size() != static_cast<std::size_t>(n_))
    throw DimensionMismatch("spd factor: dimension mismatch");
  CVector y(n_);
  for (Index j = 0; j < n_; ++j)
  {
    const double *lj = &l_[static_cast<std::size_t>(j) * (b_ + 1)];
    const Index last = std::min(n_ - 1, j + b_);
    cplx s{};
    for (Index i = j; i <= last; ++i)
      s += lj[i - j] * x[i];
    y[j] = s;
  }
  return y;
}

Eigen::MatrixXd SpdFactor::lower_dense() const
{
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n_, n_);
  for (Index j = 0; j < n_; ++j)
    for (Index i = j; i <= std::min(n_ - 1, j + b_); ++i)
      l(i, j) = at(i, j);
  return l;
}

SpdFactor spd_factorize(const ComplexSparseMatrix &dk) { return SpdFactor(dk); }

CVector spd_solve(const SpdFactor &factor, std::span<const cplx> b) { return factor.solve(b); }

}  // namespace nbpc
