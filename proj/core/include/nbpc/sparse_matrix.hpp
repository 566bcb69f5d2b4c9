// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_SPARSE_MATRIX_HPP
#define NBPC_SPARSE_MATRIX_HPP

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "nbpc/mesh.hpp"

namespace nbpc
{

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

//
// Square complex matrix in compressed sparse row format. Column indices are
// strictly increasing within each row. Products are accumulated in column
// order, so results do not depend on anything but the stored entries.
//
class ComplexSparseMatrix
{
public:
  ComplexSparseMatrix() = default;
  ComplexSparseMatrix(Index dim, std::vector<Index> row_offsets, std::vector<Index> col_indices,
                      std::vector<cplx> values, bool symmetric = false);

  /// Zero-valued matrix with the given sorted, duplicate-free column lists per row.
  static ComplexSparseMatrix from_pattern(const std::vector<std::vector<Index>> &rows,
                                          bool symmetric = false);
  static ComplexSparseMatrix identity(Index dim);

  Index dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool symmetric() const noexcept { return symmetric_; }

  std::span<const Index> row_offsets() const noexcept { return row_offsets_; }
  std::span<const Index> col_indices() const noexcept { return col_indices_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  /// Accumulates into an existing structural entry; throws if (row, col) is not stored.
  void add(Index row, Index col, cplx value);
  /// Stored value at (row, col), zero if the entry is not in the pattern.
  cplx entry(Index row, Index col) const;

  /// y = M x
  void multiply(std::span<const cplx> x, std::span<cplx> y) const;
  /// y = M^H x (conjugate transpose)
  void multiply_adjoint(std::span<const cplx> x, std::span<cplx> y) const;

  /// Largest |M_ij|.
  double max_abs() const noexcept;
  /// Largest |i - j| over stored entries.
  Index bandwidth() const noexcept;
  /// max |M_ij - M_ji| over the pattern union, no conjugation.
  double symmetry_defect() const;

  ComplexSparseMatrix scaled(cplx t) const;

private:
  Index dim_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<cplx> values_;
  bool symmetric_ = false;
};

/// a*X + b*Y on the union of the two patterns.
ComplexSparseMatrix linear_combination(cplx a, const ComplexSparseMatrix &x, cplx b,
                                       const ComplexSparseMatrix &y);

CVector matvec(const ComplexSparseMatrix &m, std::span<const cplx> x);
CVector matvec_adjoint(const ComplexSparseMatrix &m, std::span<const cplx> x);

/// MatrixMarket "coordinate complex general" with 1-based (row, col, re, im) lines.
void write_matrix_market(std::ostream &os, const ComplexSparseMatrix &m);
ComplexSparseMatrix read_matrix_market(std::istream &is);

// Small dense-vector helpers shared across modules.
cplx dot(std::span<const cplx> x, std::span<const cplx> y);  ///< sum x_i conj(y_i)
double norm2(std::span<const cplx> x);
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);

}  // namespace nbpc

#endif  // NBPC_SPARSE_MATRIX_HPP
