// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/sparse_lu.hpp"

#include <umfpack.h>

#include <algorithm>
#include <string>
#include <vector>

#include "nbpc/errors.hpp"

namespace nbpc
{

// UMFPACK works on compressed columns. The CSR arrays of M are the CSC arrays
// of M^T, so the stored factorization is of F = M^T and solves are mapped:
//   M x = b    ->  F^T x = b            (UMFPACK_Aat)
//   M^H x = b  ->  F conj(x) = conj(b)  (UMFPACK_A)
struct SparseLU::Impl
{
  int n = 0;
  std::vector<int> ap;
  std::vector<int> ai;
  std::vector<double> ax;  // interleaved re/im
  void *numeric = nullptr;
  double control[UMFPACK_CONTROL];
  double lu_nnz = 0.0;

  ~Impl()
  {
    if (numeric)
      umfpack_zi_free_numeric(&numeric);
  }

  void solve(int sys, std::span<cplx> x) const
  {
    std::vector<double> b(2 * x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      b[2 * i] = x[i].real();
      b[2 * i + 1] = x[i].imag();
    }
    std::vector<double> out(b.size());
    double info[UMFPACK_INFO];
    const int status = umfpack_zi_solve(sys, ap.data(), ai.data(), ax.data(), nullptr, out.data(),
                                        nullptr, b.data(), nullptr, numeric, control, info);
    if (status != UMFPACK_OK)
      throw SingularMatrix("sparse lu: solve failed with status " + std::to_string(status));
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = cplx(out[2 * i], out[2 * i + 1]);
  }
};

SparseLU::SparseLU(const ComplexSparseMatrix &m) : impl_(std::make_unique<Impl>())
{
  Impl &d = *impl_;
  d.n = m.dim();
  d.ap.assign(m.row_offsets().begin(), m.row_offsets().end());
  d.ai.assign(m.col_indices().begin(), m.col_indices().end());
  d.ax.resize(2 * m.nnz());
  for (std::size_t p = 0; p < m.nnz(); ++p)
  {
    d.ax[2 * p] = m.values()[p].real();
    d.ax[2 * p + 1] = m.values()[p].imag();
  }
  umfpack_zi_defaults(d.control);
  d.control[UMFPACK_IRSTEP] = 0;

  double info[UMFPACK_INFO];
  void *symbolic = nullptr;
  int status = umfpack_zi_symbolic(d.n, d.n, d.ap.data(), d.ai.data(), d.ax.data(), nullptr,
                                   &symbolic, d.control, info);
  if (status != UMFPACK_OK)
    throw Error("sparse lu: symbolic analysis failed with status " + std::to_string(status));
  status = umfpack_zi_numeric(d.ap.data(), d.ai.data(), d.ax.data(), nullptr, symbolic,
                              &d.numeric, d.control, info);
  umfpack_zi_free_symbolic(&symbolic);
  if (status == UMFPACK_WARNING_singular_matrix)
    throw SingularMatrix("sparse lu: matrix is singular");
  if (status != UMFPACK_OK)
    throw Error("sparse lu: numeric factorization failed with status " + std::to_string(status));
  d.lu_nnz = info[UMFPACK_LNZ] + info[UMFPACK_UNZ];
}

SparseLU::~SparseLU() = default;
SparseLU::SparseLU(SparseLU &&) noexcept = default;
SparseLU &SparseLU::operator=(SparseLU &&) noexcept = default;

Index SparseLU::dim() const noexcept { return impl_->n; }
double SparseLU::factor_nonzeros() const noexcept { return impl_->lu_nnz; }

void SparseLU::solve_in_place(std::span<cplx> x) const
{
  if (x.size() != static_cast<std::size_t>(impl_->n))
    throw DimensionMismatch("sparse lu: dimension mismatch");
  impl_->solve(UMFPACK_Aat, x);
}

void SparseLU::solve_adjoint_in_place(std::span<cplx> x) const
{
  if (x.size() != static_cast<std::size_t>(impl_->n))
    throw DimensionMismatch("sparse lu: dimension mismatch");
  for (cplx &v : x)
    v = std::conj(v);
  impl_->solve(UMFPACK_A, x);
  for (cplx &v : x)
    v = std::conj(v);
}

}  // namespace nbpc
