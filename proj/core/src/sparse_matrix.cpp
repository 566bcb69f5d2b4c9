// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "nbpc/errors.hpp"

namespace nbpc
{

ComplexSparseMatrix::ComplexSparseMatrix(Index dim, std::vector<Index> row_offsets,
                                         std::vector<Index> col_indices, std::vector<cplx> values,
                                         bool symmetric)
  : dim_(dim), row_offsets_(std::move(row_offsets)), col_indices_(std::move(col_indices)),
    values_(std::move(values)), symmetric_(symmetric)
{
  if (dim_ < 0 || row_offsets_.size() != static_cast<std::size_t>(dim_) + 1 ||
      row_offsets_.front() != 0 ||
      static_cast<std::size_t>(row_offsets_.back()) != col_indices_.size() ||
      col_indices_.size() != values_.size())
    throw DimensionMismatch("csr: inconsistent array sizes");
  for (Index r = 0; r < dim_; ++r)
  {
    if (row_offsets_[r] > row_offsets_[r + 1])
      throw Error("csr: row offsets must be nondecreasing");
    for (Index p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p)
    {
      const Index c = col_indices_[p];
      if (c < 0 || c >= dim_)
        throw DimensionMismatch("csr: column index out of range");
      if (p > row_offsets_[r] && col_indices_[p - 1] >= c)
        throw Error("csr: column indices must be strictly increasing in row " +
                    std::to_string(r));
    }
  }
}

ComplexSparseMatrix ComplexSparseMatrix::from_pattern(const std::vector<std::vector<Index>> &rows,
                                                      bool symmetric)
{
  const auto dim = static_cast<Index>(rows.size());
  std::vector<Index> offsets(rows.size() + 1, 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    offsets[r + 1] = offsets[r] + static_cast<Index>(rows[r].size());
  std::vector<Index> cols;
  cols.reserve(offsets.back());
  for (const auto &row : rows)
    cols.insert(cols.end(), row.begin(), row.end());
  std::vector<cplx> vals(cols.size());
  return ComplexSparseMatrix(dim, std::move(offsets), std::move(cols), std::move(vals), symmetric);
}

ComplexSparseMatrix ComplexSparseMatrix::identity(Index dim)
{
  std::vector<Index> offsets(dim + 1);
  std::vector<Index> cols(dim);
  for (Index i = 0; i <= dim; ++i)
    offsets[i] = i;
  for (Index i = 0; i < dim; ++i)
    cols[i] = i;
  return ComplexSparseMatrix(dim, std::move(offsets), std::move(cols),
                             std::vector<cplx>(dim, cplx(1.0)), true);
}

void ComplexSparseMatrix::add(Index row, Index col, cplx value)
{
  const auto first = col_indices_.begin() + row_offsets_[row];
  const auto last = col_indices_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col)
    throw Error("csr: entry (" + std::to_string(row) + ", " + std::to_string(col) +
                ") not in pattern");
  values_[it - col_indices_.begin()] += value;
}

cplx ComplexSparseMatrix::entry(Index row, Index col) const
{
  const auto first = col_indices_.begin() + row_offsets_[row];
  const auto last = col_indices_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col)
    return {};
  return values_[it - col_indices_.begin()];
}

void ComplexSparseMatrix::multiply(std::span<const cplx> x, std::span<cplx> y) const
{
  if (x.size() != static_cast<std::size_t>(dim_) || y.size() != x.size())
    throw DimensionMismatch("matvec: dimension mismatch");
  for (Index r = 0; r < dim_; ++r)
  {
    cplx sum{};
    for (Index p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p)
      sum += values_[p] * x[col_indices_[p]];
    y[r] = sum;
  }
}

void ComplexSparseMatrix::multiply_adjoint(std::span<const cplx> x, std::span<cplx> y) const
{
  if (x.size() != static_cast<std::size_t>(dim_) || y.size() != x.size())
    throw DimensionMismatch("matvec_adjoint: dimension mismatch");
  std::fill(y.begin(), y.end(), cplx{});
  for (Index r = 0; r < dim_; ++r)
  {
    const cplx xr = x[r];
    for (Index p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p)
      y[col_indices_[p]] += std::conj(values_[p]) * xr;
  }
}

double ComplexSparseMatrix::max_abs() const noexcept
{
  double m = 0.0;
  for (const cplx &v : values_)
    m = std::max(m, std::abs(v));
  return m;
}

Index ComplexSparseMatrix::bandwidth() const noexcept
{
  Index bw = 0;
  for (Index r = 0; r < dim_; ++r)
    for (Index p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p)
      bw = std::max(bw, std::abs(col_indices_[p] - r));
  return bw;
}

double ComplexSparseMatrix::symmetry_defect() const
{
  double worst = 0.0;
  for (Index r = 0; r < dim_; ++r)
    for (Index p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p)
      worst = std::max(worst, std::abs(values_[p] - entry(col_indices_[p], r)));
  return worst;
}

ComplexSparseMatrix ComplexSparseMatrix::scaled(cplx t) const
{
  ComplexSparseMatrix out = *this;
  for (cplx &v : out.values_)
    v *= t;
  return out;
}

ComplexSparseMatrix linear_combination(cplx a, const ComplexSparseMatrix &x, cplx b,
                                       const ComplexSparseMatrix &y)
{
  if (x.dim() != y.dim())
    throw DimensionMismatch("linear_combination: dimension mismatch");
  const Index n = x.dim();
  std::vector<Index> offsets(n + 1, 0);
  std::vector<Index> cols;
  std::vector<cplx> vals;
  cols.reserve(std::max(x.nnz(), y.nnz()));
  vals.reserve(cols.capacity());
  const auto xo = x.row_offsets(), yo = y.row_offsets();
  const auto xc = x.col_indices(), yc = y.col_indices();
  const auto xv = x.values(), yv = y.values();
  for (Index r = 0; r < n; ++r)
  {
    Index p = xo[r], q = yo[r];
    while (p < xo[r + 1] || q < yo[r + 1])
    {
      if (q >= yo[r + 1] || (p < xo[r + 1] && xc[p] < yc[q]))
      {
        cols.push_back(xc[p]);
        vals.push_back(a * xv[p++]);
      }
      else if (p >= xo[r + 1] || yc[q] < xc[p])
      {
        cols.push_back(yc[q]);
        vals.push_back(b * yv[q++]);
      }
      else
      {
        cols.push_back(xc[p]);
        vals.push_back(a * xv[p++] + b * yv[q++]);
      }
    }
    offsets[r + 1] = static_cast<Index>(cols.size());
  }
  return ComplexSparseMatrix(n, std::move(offsets), std::move(cols), std::move(vals),
                             x.symmetric() && y.symmetric());
}

CVector matvec(const ComplexSparseMatrix &m, std::span<const cplx> x)
{
  CVector y(x.size());
  m.multiply(x, y);
  return y;
}

CVector matvec_adjoint(const ComplexSparseMatrix &m, std::span<const cplx> x)
{
  CVector y(x.size());
  m.multiply_adjoint(x, y);
  return y;
}

void write_matrix_market(std::ostream &os, const ComplexSparseMatrix &m)
{
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << m.dim() << ' ' << m.dim() << ' ' << m.nnz() << '\n';
  const auto off = m.row_offsets();
  const auto col = m.col_indices();
  const auto val = m.values();
  for (Index r = 0; r < m.dim(); ++r)
    for (Index p = off[r]; p < off[r + 1]; ++p)
      os << r + 1 << ' ' << col[p] + 1 << ' ' << val[p].real() << ' ' << val[p].imag() << '\n';
  os.precision(old);
}

ComplexSparseMatrix read_matrix_market(std::istream &is)
{
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket matrix coordinate complex general", 0))
    throw FormatError("matrix market: unsupported header");
  while (std::getline(is, line) && !line.empty() && line[0] == '%')
  {
  }
  std::istringstream head(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (!(head >> rows >> cols >> nnz) || rows != cols || rows < 0 || nnz < 0)
    throw FormatError("matrix market: bad size line");
  std::vector<std::tuple<Index, Index, cplx>> entries;
  entries.reserve(nnz);
  for (long long e = 0; e < nnz; ++e)
  {
    long long r = 0, c = 0;
    double re = 0, im = 0;
    if (!(is >> r >> c >> re >> im) || r < 1 || c < 1 || r > rows || c > cols)
      throw FormatError("matrix market: bad entry " + std::to_string(e));
    entries.emplace_back(static_cast<Index>(r - 1), static_cast<Index>(c - 1), cplx(re, im));
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  const auto n = static_cast<Index>(rows);
  std::vector<Index> offsets(n + 1, 0);
  std::vector<Index> colidx;
  std::vector<cplx> vals;
  Index last_r = -1, last_c = -1;
  for (const auto &[r, c, v] : entries)
  {
    if (r == last_r && c == last_c)
    {
      vals.back() += v;
      continue;
    }
    colidx.push_back(c);
    vals.push_back(v);
    ++offsets[r + 1];
    last_r = r;
    last_c = c;
  }
  for (Index r = 0; r < n; ++r)
    offsets[r + 1] += offsets[r];
  return ComplexSparseMatrix(n, std::move(offsets), std::move(colidx), std::move(vals));
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y)
{
  if (x.size() != y.size())
    throw DimensionMismatch("dot: dimension mismatch");
  cplx s{};
  for (std::size_t i = 0; i < x.size(); ++i)
    s += x[i] * std::conj(y[i]);
  return s;
}

double norm2(std::span<const cplx> x)
{
  double s = 0.0;
  for (const cplx &v : x)
    s += std::norm(v);
  return std::sqrt(s);
}

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y)
{
  if (x.size() != y.size())
    throw DimensionMismatch("axpy: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] += a * x[i];
}

}  // namespace nbpc
