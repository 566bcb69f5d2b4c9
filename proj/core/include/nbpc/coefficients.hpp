// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_COEFFICIENTS_HPP
#define NBPC_COEFFICIENTS_HPP

#include <iosfwd>
#include <vector>

#include "nbpc/mesh.hpp"
#include "nbpc/rng.hpp"

namespace nbpc
{

/// Symmetric 2x2 real matrix [[a11, a12], [a12, a22]].
struct SymMatrix2
{
  double a11 = 1.0;
  double a12 = 0.0;
  double a22 = 1.0;

  static constexpr SymMatrix2 identity() { return {1.0, 0.0, 1.0}; }

  double det() const noexcept { return a11 * a22 - a12 * a12; }
  bool is_spd() const noexcept { return a11 > 0.0 && det() > 0.0; }

  friend SymMatrix2 operator-(const SymMatrix2 &a, const SymMatrix2 &b)
  {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22};
  }
  friend SymMatrix2 operator+(const SymMatrix2 &a, const SymMatrix2 &b)
  {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a22 + b.a22};
  }
  friend SymMatrix2 operator*(double t, const SymMatrix2 &a)
  {
    return {t * a.a11, t * a.a12, t * a.a22};
  }
  friend bool operator==(const SymMatrix2 &, const SymMatrix2 &) = default;
};

//
// Piecewise-constant coefficient on an m x m grid of cells. Cell (ci, cj)
// covers [ci/m, (ci+1)/m] x [cj/m, (cj+1)/m] and is stored at cj*m + ci,
// i.e. row-major starting from the bottom-left cell.
//
template <class T>
class CellField
{
public:
  CellField() = default;
  CellField(Index m, T value) : m_(m), values_(static_cast<std::size_t>(m) * m, value) {}
  CellField(Index m, std::vector<T> values);

  Index m() const noexcept { return m_; }
  std::size_t size() const noexcept { return values_.size(); }

  const T &operator()(Index ci, Index cj) const { return values_[cj * m_ + ci]; }
  T &operator()(Index ci, Index cj) { return values_[cj * m_ + ci]; }

  const std::vector<T> &values() const noexcept { return values_; }
  std::vector<T> &values() noexcept { return values_; }

  friend bool operator==(const CellField &, const CellField &) = default;

private:
  Index m_ = 0;
  std::vector<T> values_;
};

/// Scalar coefficient n (positive for a physical medium).
using ScalarField = CellField<double>;
/// Matrix coefficient A (SPD in every cell for a physical medium).
using MatrixField = CellField<SymMatrix2>;

bool is_positive(const ScalarField &n);
bool is_spd(const MatrixField &a);

/// alpha = 0.5 * k^(-beta).
double alpha_of(double k, double beta);

/// Independent Unif[1 - alpha, 1 + alpha) draws, one per cell in storage order.
ScalarField sample_random_n(Index m, double alpha, RngStream &rng);

/// Per cell, in order: a ~ U[0,alpha), c ~ U[0,alpha), b ~ U[0,delta) with
/// delta = min(alpha, sqrt((1+a)(1+c))); cell = [[1+a, b], [b, 1+c]].
MatrixField sample_random_A(Index m, double alpha, RngStream &rng);

/// 1 + alpha on cells with (ci + cj) even, 1 - alpha otherwise.
ScalarField checkerboard_n(Index m, double alpha);

/// +1 / -1 checkerboard sign pattern, with +1 on cell (0,0).
ScalarField checkerboard_sign(Index m);

double spectral_norm_2x2(const SymMatrix2 &s) noexcept;

ScalarField difference(const ScalarField &a, const ScalarField &b);
MatrixField difference(const MatrixField &a, const MatrixField &b);

/// Essential sup of |f1 - f2| (spectral norm per cell for matrix fields).
double diff_norm_linf(const ScalarField &f1, const ScalarField &f2);
double diff_norm_linf(const MatrixField &f1, const MatrixField &f2);

/// (integral over the unit square of |f1 - f2|^q)^(1/q), exact for cell fields.
double diff_norm_lq(const ScalarField &f1, const ScalarField &f2, double q);
double diff_norm_lq(const MatrixField &f1, const MatrixField &f2, double q);

/// Text format: first token m, then m*m values (scalar) or 3*m*m values
/// (a11 a12 a22 per cell) in storage order.
void write_field(std::ostream &os, const ScalarField &f);
void write_field(std::ostream &os, const MatrixField &f);
ScalarField read_scalar_field(std::istream &is);
MatrixField read_matrix_field(std::istream &is);

}  // namespace nbpc

#endif  // NBPC_COEFFICIENTS_HPP
