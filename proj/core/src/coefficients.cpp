// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "nbpc/errors.hpp"

namespace nbpc
{

template <class T>
CellField<T>::CellField(Index m, std::vector<T> values) : m_(m), values_(std::move(values))
{
  if (m < 1 || values_.size() != static_cast<std::size_t>(m) * m)
    throw DimensionMismatch("cell field: expected " + std::to_string(m) + "^2 values, got " +
                            std::to_string(values_.size()));
}

template class CellField<double>;
template class CellField<SymMatrix2>;

bool is_positive(const ScalarField &n)
{
  return std::ranges::all_of(n.values(), [](double v) { return v > 0.0; });
}

bool is_spd(const MatrixField &a)
{
  return std::ranges::all_of(a.values(), [](const SymMatrix2 &s) { return s.is_spd(); });
}

double alpha_of(double k, double beta) { return 0.5 * std::pow(k, -beta); }

ScalarField sample_random_n(Index m, double alpha, RngStream &rng)
{
  ScalarField n(m, 1.0);
  for (double &v : n.values())
    v = rng.uniform(1.0 - alpha, 1.0 + alpha);
  return n;
}

MatrixField sample_random_A(Index m, double alpha, RngStream &rng)
{
  MatrixField a(m, SymMatrix2::identity());
  for (SymMatrix2 &cell : a.values())
  {
    const double da = rng.uniform(0.0, alpha);
    const double dc = rng.uniform(0.0, alpha);
    const double delta = std::min(alpha, std::sqrt((1.0 + da) * (1.0 + dc)));
    const double b = rng.uniform(0.0, delta);
    cell = {1.0 + da, b, 1.0 + dc};
  }
  return a;
}

ScalarField checkerboard_sign(Index m)
{
  ScalarField s(m, 1.0);
  for (Index cj = 0; cj < m; ++cj)
    for (Index ci = 0; ci < m; ++ci)
      s(ci, cj) = ((ci + cj) % 2 == 0) ? 1.0 : -1.0;
  return s;
}

ScalarField checkerboard_n(Index m, double alpha)
{
  ScalarField n = checkerboard_sign(m);
  for (double &v : n.values())
    v = 1.0 + alpha * v;
  return n;
}

double spectral_norm_2x2(const SymMatrix2 &s) noexcept
{
  const double mean = 0.5 * (s.a11 + s.a22);
  const double half_gap = 0.5 * (s.a11 - s.a22);
  // eigenvalues are mean +- radius, so the larger modulus is |mean| + radius
  return std::abs(mean) + std::hypot(half_gap, s.a12);
}

namespace
{

template <class T>
void require_same_grid(const CellField<T> &a, const CellField<T> &b)
{
  if (a.m() != b.m())
    throw GridMismatch("coefficient grids differ: " + std::to_string(a.m()) + " vs " +
                       std::to_string(b.m()));
}

double cell_norm(double v) { return std::abs(v); }
double cell_norm(const SymMatrix2 &s) { return spectral_norm_2x2(s); }

template <class T>
CellField<T> difference_impl(const CellField<T> &a, const CellField<T> &b)
{
  require_same_grid(a, b);
  CellField<T> d = a;
  for (std::size_t i = 0; i < d.size(); ++i)
    d.values()[i] = a.values()[i] - b.values()[i];
  return d;
}

template <class T>
double linf_impl(const CellField<T> &f1, const CellField<T> &f2)
{
  require_same_grid(f1, f2);
  double worst = 0.0;
  for (std::size_t i = 0; i < f1.size(); ++i)
    worst = std::max(worst, cell_norm(f1.values()[i] - f2.values()[i]));
  return worst;
}

template <class T>
double lq_impl(const CellField<T> &f1, const CellField<T> &f2, double q)
{
  require_same_grid(f1, f2);
  if (!(q >= 1.0) || !std::isfinite(q))
    throw Error("diff_norm_lq: q must be finite and >= 1");
  // Scale by the largest cell norm first so that large q cannot overflow.
  const double scale = linf_impl(f1, f2);
  if (scale == 0.0)
    return 0.0;
  const double cell_area = 1.0 / (static_cast<double>(f1.m()) * f1.m());
  double sum = 0.0;
  for (std::size_t i = 0; i < f1.size(); ++i)
    sum += cell_area * std::pow(cell_norm(f1.values()[i] - f2.values()[i]) / scale, q);
  return scale * std::pow(sum, 1.0 / q);
}

}  // namespace

ScalarField difference(const ScalarField &a, const ScalarField &b) { return difference_impl(a, b); }
MatrixField difference(const MatrixField &a, const MatrixField &b) { return difference_impl(a, b); }

double diff_norm_linf(const ScalarField &f1, const ScalarField &f2) { return linf_impl(f1, f2); }
double diff_norm_linf(const MatrixField &f1, const MatrixField &f2) { return linf_impl(f1, f2); }

double diff_norm_lq(const ScalarField &f1, const ScalarField &f2, double q)
{
  return lq_impl(f1, f2, q);
}
double diff_norm_lq(const MatrixField &f1, const MatrixField &f2, double q)
{
  return lq_impl(f1, f2, q);
}

void write_field(std::ostream &os, const ScalarField &f)
{
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  os << f.m() << '\n';
  for (Index cj = 0; cj < f.m(); ++cj)
  {
    for (Index ci = 0; ci < f.m(); ++ci)
      os << (ci ? " " : "") << f(ci, cj);
    os << '\n';
  }
  os.precision(old);
}

void write_field(std::ostream &os, const MatrixField &f)
{
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  os << f.m() << '\n';
  for (const SymMatrix2 &s : f.values())
    os << s.a11 << ' ' << s.a12 << ' ' << s.a22 << '\n';
  os.precision(old);
}

namespace
{

Index read_header(std::istream &is)
{
  long long m = 0;
  if (!(is >> m) || m < 1 || m > 100000)
    throw FormatError("field file: missing or invalid grid size header");
  return static_cast<Index>(m);
}

double read_value(std::istream &is, std::size_t i)
{
  double v = 0.0;
  if (!(is >> v))
    throw FormatError("field file: truncated at value " + std::to_string(i));
  return v;
}

}  // namespace

ScalarField read_scalar_field(std::istream &is)
{
  const Index m = read_header(is);
  std::vector<double> values(static_cast<std::size_t>(m) * m);
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = read_value(is, i);
  return ScalarField(m, std::move(values));
}

MatrixField read_matrix_field(std::istream &is)
{
  const Index m = read_header(is);
  std::vector<SymMatrix2> values(static_cast<std::size_t>(m) * m);
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    values[i].a11 = read_value(is, 3 * i);
    values[i].a12 = read_value(is, 3 * i + 1);
    values[i].a22 = read_value(is, 3 * i + 2);
  }
  return MatrixField(m, std::move(values));
}

}  // namespace nbpc
