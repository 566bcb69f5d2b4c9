// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "nbpc/assembly.hpp"
#include "nbpc/banded_lu.hpp"
#include "nbpc/errors.hpp"
#include "nbpc/lu_factor.hpp"
#include "nbpc/sparse_lu.hpp"
#include "nbpc/spd_factor.hpp"
#include "oracles.hpp"

using namespace nbpc;

namespace
{

Eigen::MatrixXcd random_banded(Index n, Index bw, RngStream &rng, double diag_shift)
{
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = std::max<Index>(0, i - bw); j <= std::min<Index>(n - 1, i + bw); ++j)
      d(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  d.diagonal().array() += diag_shift;
  return d;
}

double rel_err(std::span<const cplx> x, std::span<const cplx> y)
{
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    num += std::norm(x[i] - y[i]);
    den += std::norm(y[i]);
  }
  return std::sqrt(num / den);
}

ComplexSparseMatrix helmholtz_a1(double k)
{
  auto mesh = std::make_shared<const Mesh2D>(choose_resolution(k, 10));
  return assemble_system(homogeneous_instance(k, mesh, 10));
}

}  // namespace

TEST(Matvec, IdentityPattern)
{
  RngStream rng(1);
  const CVector x = oracle::random_vector(17, rng);
  EXPECT_EQ(matvec(ComplexSparseMatrix::identity(17), x), x);
}

TEST(Matvec, AgreesWithDenseProduct)
{
  RngStream rng(2);
  for (int t = 0; t < 10; ++t)
  {
    Eigen::MatrixXcd d = oracle::random_matrix(5, rng);
    d(1, 3) = 0.0;
    d(4, 0) = 0.0;
    const ComplexSparseMatrix m = oracle::sparse(d);
    const CVector x = oracle::random_vector(5, rng);
    const Eigen::VectorXcd ref = d * oracle::to_eigen(x);
    const CVector y = matvec(m, x);
    const Eigen::VectorXcd refh = d.adjoint() * oracle::to_eigen(x);
    const CVector yh = matvec_adjoint(m, x);
    for (int i = 0; i < 5; ++i)
    {
      EXPECT_LE(std::abs(y[i] - ref(i)), 1e-14);
      EXPECT_LE(std::abs(yh[i] - refh(i)), 1e-14);
    }
  }
}

TEST(Matvec, SymmetricBilinearForm)
{
  RngStream rng(3);
  const ComplexSparseMatrix a = helmholtz_a1(6.0);
  const CVector x = oracle::random_vector(a.dim(), rng), y = oracle::random_vector(a.dim(), rng);
  // x^T (A y) = y^T (A x), unconjugated
  cplx lhs = 0.0, rhs = 0.0;
  const CVector ay = matvec(a, y), ax = matvec(a, x);
  for (Index i = 0; i < a.dim(); ++i)
  {
    lhs += x[i] * ay[i];
    rhs += y[i] * ax[i];
  }
  EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
}

TEST(Matvec, DimensionMismatch)
{
  const ComplexSparseMatrix m = ComplexSparseMatrix::identity(4);
  CVector x(3), y(4);
  EXPECT_THROW(m.multiply(x, y), DimensionMismatch);
}

TEST(SparseMatrix, RejectsUnsortedColumns)
{
  EXPECT_THROW(ComplexSparseMatrix(2, {0, 2, 3}, {1, 0, 1}, {1.0, 1.0, 1.0}), Error);
  ComplexSparseMatrix m = ComplexSparseMatrix::identity(3);
  EXPECT_THROW(m.add(0, 2, 1.0), Error);
}

TEST(SparseMatrix, MatrixMarketRoundTrip)
{
  RngStream rng(4);
  Eigen::MatrixXcd d = random_banded(9, 2, rng, 0.0);
  const ComplexSparseMatrix m = oracle::sparse(d);
  std::stringstream ss;
  write_matrix_market(ss, m);
  const ComplexSparseMatrix back = read_matrix_market(ss);
  EXPECT_EQ(back.dim(), m.dim());
  EXPECT_EQ(linear_combination(1.0, m, -1.0, back).max_abs(), 0.0);
}

TEST(SparseMatrix, MatrixMarketFixture)
{
  std::istringstream in("%%MatrixMarket matrix coordinate complex general\n"
                        "% comment\n"
                        "2 2 3\n"
                        "1 1 1.5 -2\n"
                        "2 1 0 1\n"
                        "2 2 3 0\n");
  const ComplexSparseMatrix m = read_matrix_market(in);
  EXPECT_EQ(m.entry(0, 0), cplx(1.5, -2.0));
  EXPECT_EQ(m.entry(1, 0), cplx(0.0, 1.0));
  EXPECT_EQ(m.entry(0, 1), cplx{});
  EXPECT_EQ(m.entry(1, 1), cplx(3.0, 0.0));
  std::istringstream bad("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2\n");
  EXPECT_THROW(read_matrix_market(bad), FormatError);
}

TEST(BandedLU, DiagonalMatrix)
{
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(6, 6);
  for (int i = 0; i < 6; ++i)
    d(i, i) = cplx(i + 1.0, 0.5 * i);
  const BandedLU lu(oracle::sparse(d), 2);
  const auto f = lu.unpack();
  for (Index r = 0; r < 6; ++r)
    EXPECT_EQ(f.row_order[r], r);
  EXPECT_LE((f.lower - Eigen::MatrixXcd::Identity(6, 6)).norm(), 0.0);
  EXPECT_LE((f.upper - d).norm(), 1e-15);
}

TEST(BandedLU, ReconstructionRandomBanded)
{
  RngStream rng(5);
  for (int t = 0; t < 5; ++t)
  {
    const Eigen::MatrixXcd d = random_banded(50, 4, rng, 0.0);
    const ComplexSparseMatrix m = oracle::sparse(d);
    const auto f = BandedLU(m, 4).unpack();
    Eigen::MatrixXcd pm(50, 50);
    for (Index r = 0; r < 50; ++r)
      pm.row(r) = d.row(f.row_order[r]);
    const Eigen::MatrixXcd diff = pm - f.lower * f.upper;
    EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-11 * m.max_abs());
    // partial pivoting bounds the multipliers
    EXPECT_LE(f.lower.cwiseAbs().maxCoeff(), 1.0 + 1e-15);
    for (Index i = 0; i < 50; ++i)
      EXPECT_EQ(f.lower(i, i), cplx(1.0));
  }
}

TEST(BandedLU, HelmholtzRoundTrip)
{
  const ComplexSparseMatrix a = helmholtz_a1(20.0);
  const BandedLU lu = lu_factorize(a, a.bandwidth());
  RngStream rng(6);
  for (int t = 0; t < 3; ++t)
  {
    const CVector x = oracle::random_vector(a.dim(), rng);
    EXPECT_LE(rel_err(lu_solve(lu, matvec(a, x)), x), 1e-9);
    EXPECT_LE(rel_err(lu.solve_adjoint(matvec_adjoint(a, x)), x), 1e-9);
  }
}

TEST(BandedLU, ZeroOnesAndDeterminism)
{
  const ComplexSparseMatrix a = helmholtz_a1(8.0);
  const BandedLU lu(a, a.bandwidth());
  const CVector zero = lu.solve(CVector(a.dim()));
  for (const cplx z : zero)
    EXPECT_EQ(z, cplx{});
  const CVector ones(a.dim(), 1.0);
  const CVector b = matvec(a, ones);
  const CVector x1 = lu.solve(b), x2 = lu.solve(b);
  EXPECT_LE(rel_err(x1, ones), 1e-9);
  EXPECT_EQ(x1, x2);
}

TEST(BandedLU, Errors)
{
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(4, 4);
  d(0, 3) = 1.0;
  EXPECT_THROW(BandedLU(oracle::sparse(d), 1), BandwidthError);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(3, 3);
  s(2, 2) = 0.0;
  s(1, 2) = 1.0;
  EXPECT_THROW(BandedLU(oracle::sparse(s), 2), SingularMatrix);
  const BandedLU lu(ComplexSparseMatrix::identity(3), 0);
  EXPECT_THROW(lu.solve(CVector(4)), DimensionMismatch);
}

TEST(SparseLU, AgreesWithBanded)
{
  const ComplexSparseMatrix a = helmholtz_a1(12.0);
  const BandedLU banded(a, a.bandwidth());
  const SparseLU sparse(a);
  EXPECT_GT(sparse.factor_nonzeros(), 0.0);
  RngStream rng(7);
  const CVector b = oracle::random_vector(a.dim(), rng);
  CVector x = b, xh = b;
  sparse.solve_in_place(x);
  sparse.solve_adjoint_in_place(xh);
  EXPECT_LE(rel_err(x, banded.solve(b)), 1e-10);
  EXPECT_LE(rel_err(xh, banded.solve_adjoint(b)), 1e-10);
}

TEST(SparseLU, Singular)
{
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(3, 3);
  s(2, 2) = 0.0;
  s(2, 1) = 0.0;
  s(1, 2) = 1.0;
  EXPECT_THROW(SparseLU(oracle::sparse(s)), SingularMatrix);
}

TEST(LuFactor, BackendSelection)
{
  const ComplexSparseMatrix small = helmholtz_a1(6.0);
  EXPECT_EQ(LuFactor(small).backend(), LuBackend::banded);
  EXPECT_NE(LuFactor(small).banded(), nullptr);
  EXPECT_EQ(LuFactor(small, LuBackend::sparse).backend(), LuBackend::sparse);
  // 437k unknowns with half-bandwidth 662 would need ~14 GB of band storage
  EXPECT_GT(BandedLU::storage_estimate(436921, 662), banded_storage_budget);
  EXPECT_EQ(parse_lu_backend("auto"), LuBackend::automatic);
  EXPECT_THROW(parse_lu_backend("mumps"), Error);
}

TEST(SpdFactor, ReconstructionAndRoundTrip)
{
  const Mesh2D mesh(4);
  const ComplexSparseMatrix dk = assemble_Dk(mesh, 5.0);
  const SpdFactor f = spd_factorize(dk);
  const Eigen::MatrixXd l = f.lower_dense();
  const Eigen::MatrixXd d = oracle::dense(dk).real();
  EXPECT_LE((l * l.transpose() - d).cwiseAbs().maxCoeff(), 1e-12);

  RngStream rng(8);
  for (int t = 0; t < 5; ++t)
  {
    const CVector x = oracle::random_vector(dk.dim(), rng);
    EXPECT_LE(rel_err(spd_solve(f, matvec(dk, x)), x), 1e-10);
    const CVector b = oracle::random_vector(dk.dim(), rng);
    EXPECT_GT(dot(spd_solve(f, b), b).real(), 0.0);
  }
}

TEST(SpdFactor, RejectsIndefinite)
{
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(3, 3);
  d(1, 1) = -1.0;
  EXPECT_THROW(SpdFactor(oracle::sparse(d)), NotPositiveDefinite);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(2, 2);
  c(0, 0) = cplx(1.0, 1.0);
  EXPECT_THROW(SpdFactor(oracle::sparse(c)), Error);
}
