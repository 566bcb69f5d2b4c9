// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "nbpc/analysis.hpp"
#include "nbpc/coefficients.hpp"
#include "nbpc/errors.hpp"
#include "nbpc/krylov.hpp"
#include "oracles.hpp"

using namespace nbpc;

namespace
{

using oracle::dense_operator;
using Weight = oracle::DenseWeight;

constexpr NormMode all_modes[] = {NormMode::euclidean, NormMode::dk, NormMode::dk_inverse};

}  // namespace

TEST(Gmres, IdentityConvergesInOneStep)
{
  RngStream rng(1);
  const CVector b = oracle::random_vector(30, rng);
  const GmresReport r = gmres(
    [](std::span<const cplx> x, std::span<cplx> y) { std::copy(x.begin(), x.end(), y.begin()); },
    b, {});
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.final_relres(), 1e-14);
  EXPECT_EQ(r.residual_history.front(), 1.0);
  for (std::size_t i = 0; i < b.size(); ++i)
    EXPECT_LE(std::abs(r.solution[i] - b[i]), 1e-14);
}

TEST(Gmres, MatchesBruteForceKrylovMinimization)
{
  RngStream rng(2);
  for (int trial = 0; trial < 10; ++trial)
  {
    const Eigen::MatrixXcd c = oracle::random_matrix(8, rng) + 2.0 * Eigen::MatrixXcd::Identity(8, 8);
    const CVector b = oracle::random_vector(8, rng);
    const Weight w(oracle::random_spd(8, rng));
    for (const NormMode mode : all_modes)
    {
      GmresOptions opts;
      opts.tol = 1e-13;
      opts.max_iter = 8;
      opts.inner = w.spec(mode);
      const GmresReport r = gmres(dense_operator(c), b, opts);
      const std::vector<double> ref =
        oracle::krylov_min_residuals(c, oracle::to_eigen(b), w.matrix(mode), r.iterations);
      ASSERT_EQ(r.residual_history.size(), ref.size());
      for (std::size_t m = 0; m < ref.size(); ++m)
        EXPECT_NEAR(r.residual_history[m], ref[m], 1e-8) << "mode " << to_string(mode) << " m " << m;
    }
  }
}

TEST(Gmres, ReportedResidualIsTrueResidual)
{
  RngStream rng(3);
  const Eigen::MatrixXcd c = oracle::random_matrix(20, rng) + 4.0 * Eigen::MatrixXcd::Identity(20, 20);
  const CVector b = oracle::random_vector(20, rng);
  const Weight w(oracle::random_spd(20, rng));
  for (const NormMode mode : all_modes)
  {
    GmresOptions opts;
    opts.tol = 1e-6;
    opts.inner = w.spec(mode);
    const GmresReport r = gmres(dense_operator(c), b, opts);
    const Eigen::VectorXcd res = oracle::to_eigen(b) - c * oracle::to_eigen(r.solution);
    const double true_rel = weighted_norm(opts.inner, oracle::to_cvector(res)) / weighted_norm(opts.inner, b);
    EXPECT_NEAR(true_rel, r.final_relres(), 1e-10);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.final_relres(), opts.tol);
  }
}

TEST(Gmres, ContractionBoundForHalfPerturbation)
{
  RngStream rng(4);
  const Index n = 40;
  const Weight w(oracle::random_spd(n, rng));
  const auto [root, inv_root] = spd_sqrt(w.dense);
  Eigen::MatrixXcd e = oracle::random_matrix(n, rng);
  e *= 0.5 / Eigen::JacobiSVD<Eigen::MatrixXcd>(e).singularValues()(0);
  // ||I - C||_D = ||D^{1/2} (I - C) D^{-1/2}||_2 = 0.5
  const Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(n, n) -
                             inv_root.cast<cplx>() * e * root.cast<cplx>();
  GmresOptions opts;
  opts.tol = 1e-12;
  opts.inner = w.spec(NormMode::dk);
  const GmresReport r = gmres(dense_operator(c), oracle::random_vector(n, rng), opts);
  const double rate = 2.0 * std::sqrt(2.0) / 3.0;
  for (std::size_t m = 0; m < r.residual_history.size(); ++m)
    EXPECT_LE(r.residual_history[m], std::pow(rate, m) + 1e-12);
}

TEST(Gmres, ElmanEnvelope)
{
  RngStream rng(5);
  const Index n = 30;
  for (const double alpha : {0.2, 0.6, 0.9})
  {
    const Weight w(oracle::random_spd(n, rng));
    const auto [root, inv_root] = spd_sqrt(w.dense);
    Eigen::MatrixXcd e = oracle::random_matrix(n, rng);
    e *= alpha / Eigen::JacobiSVD<Eigen::MatrixXcd>(e).singularValues()(0);
    const Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(n, n) -
                               inv_root.cast<cplx>() * e * root.cast<cplx>();
    const double measured = dense_weighted_norm(Eigen::MatrixXcd::Identity(n, n) - c, w.dense);
    EXPECT_NEAR(measured, alpha, 1e-10);
    GmresOptions opts;
    opts.tol = 1e-12;
    opts.inner = w.spec(NormMode::dk);
    const GmresReport r = gmres(dense_operator(c), oracle::random_vector(n, rng), opts);
    const double rate = 2.0 * std::sqrt(measured) / (1.0 + measured);
    for (std::size_t m = 0; m < r.residual_history.size(); ++m)
      EXPECT_LE(r.residual_history[m], std::pow(rate, m) + 1e-8);
  }
}

TEST(Gmres, LuckyBreakdownOnInvariantSubspace)
{
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(6, 6);
  c.diagonal() << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  CVector b(6);
  b[0] = 1.0;
  b[1] = 1.0;
  const GmresReport r = gmres(dense_operator(c), b, {});
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.breakdown);
  EXPECT_EQ(r.iterations, 2);
  EXPECT_NEAR(std::abs(r.solution[1] - 0.5), 0.0, 1e-14);
}

TEST(Gmres, RestartedConverges)
{
  RngStream rng(6);
  const Eigen::MatrixXcd c = oracle::random_matrix(60, rng) + 9.0 * Eigen::MatrixXcd::Identity(60, 60);
  const CVector b = oracle::random_vector(60, rng);
  GmresOptions opts;
  opts.restart = 3;
  const GmresReport r = gmres(dense_operator(c), b, opts);
  EXPECT_TRUE(r.converged);
  for (std::size_t m = 1; m < r.residual_history.size(); ++m)
    EXPECT_LE(r.residual_history[m], r.residual_history[m - 1] * (1 + 1e-12));
  const Eigen::VectorXcd res = oracle::to_eigen(b) - c * oracle::to_eigen(r.solution);
  EXPECT_LE(res.norm() / norm2(b), 1e-5 * (1 + 1e-6));
}

TEST(Gmres, NotConvergedAtMaxIter)
{
  RngStream rng(7);
  const Eigen::MatrixXcd c = oracle::random_matrix(50, rng);
  GmresOptions opts;
  opts.max_iter = 5;
  const GmresReport r = gmres(dense_operator(c), oracle::random_vector(50, rng), opts);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 5);
  EXPECT_EQ(r.residual_history.size(), 6u);
  EXPECT_GT(r.final_relres(), opts.tol);
}

TEST(Gmres, NonFiniteIsHardError)
{
  const LinearOperator bad = [](std::span<const cplx>, std::span<cplx> y) {
    std::fill(y.begin(), y.end(), cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  };
  EXPECT_THROW(gmres(bad, CVector(4, 1.0), {}), NonFiniteError);
}

TEST(Gmres, OptionValidation)
{
  GmresOptions opts;
  opts.tol = 1.5;
  EXPECT_THROW(opts.validate(), ConfigError);
  opts.tol = 1e-5;
  opts.restart = 0;
  EXPECT_THROW(opts.validate(), ConfigError);
  opts.restart.reset();
  opts.inner.mode = NormMode::dk;
  EXPECT_THROW(opts.validate(), ConfigError);
}

TEST(WeightedInner, BasicProperties)
{
  RngStream rng(8);
  const Weight w(oracle::random_spd(10, rng));
  for (const NormMode mode : all_modes)
  {
    const InnerProductSpec s = w.spec(mode);
    const CVector x = oracle::random_vector(10, rng), y = oracle::random_vector(10, rng);
    const cplx xx = weighted_inner(s, x, x);
    EXPECT_GT(xx.real(), 0.0);
    EXPECT_LE(std::abs(xx.imag()), 1e-13 * xx.real());
    EXPECT_EQ(weighted_inner(s, CVector(10), CVector(10)), cplx{});
    EXPECT_LE(std::abs(weighted_inner(s, x, y) - std::conj(weighted_inner(s, y, x))), 1e-13);
    const Eigen::VectorXcd ex = oracle::to_eigen(x), ey = oracle::to_eigen(y);
    const cplx ref = ey.dot(w.matrix(mode).cast<cplx>() * ex);  // y^H W x
    EXPECT_LE(std::abs(weighted_inner(s, x, y) - ref), 1e-12 * std::abs(ref));
  }
}

TEST(WeightedInner, DkAtZeroIsStiffnessEnergy)
{
  const Mesh2D mesh(7);
  const ComplexSparseMatrix d0 = assemble_Dk(mesh, 0.0);
  RngStream rng(9);
  const CVector v = oracle::random_vector(mesh.num_nodes(), rng);
  EXPECT_NEAR(weighted_inner(InnerProductSpec::weighted(d0), v, v).real(),
              oracle::p1_energy(mesh, v).first, 1e-10);
}

class NearbyTest : public ::testing::Test
{
protected:
  static ProblemInstance checker(double k, double beta)
  {
    auto mesh = std::make_shared<const Mesh2D>(choose_resolution(k, 10));
    ProblemInstance inst = homogeneous_instance(k, mesh, 10);
    inst.n = checkerboard_n(10, alpha_of(k, beta));
    return inst;
  }
};

TEST_F(NearbyTest, ApplyPreconditioned)
{
  const ProblemInstance one = checker(10.0, 1.0);
  ProblemInstance two = one;
  two.n = checkerboard_n(10, 0.3);
  const ComplexSparseMatrix a1 = assemble_system(one), a2 = assemble_system(two);
  const LuFactor lu(a1);
  RngStream rng(10);
  const CVector x = oracle::random_vector(a1.dim(), rng);
  for (const PreconditionSide side : {PreconditionSide::left, PreconditionSide::right})
  {
    const CVector same = apply_preconditioned(side, lu, a1, x);
    CVector e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      e[i] = same[i] - x[i];
    EXPECT_LE(norm2(e), 1e-9 * norm2(x));
    for (const cplx z : apply_preconditioned(side, lu, a2, CVector(x.size())))
      EXPECT_EQ(z, cplx{});
  }
  const CVector back = matvec(a1, apply_preconditioned(PreconditionSide::left, lu, a2, x));
  const CVector a2x = matvec(a2, x);
  CVector e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    e[i] = back[i] - a2x[i];
  EXPECT_LE(norm2(e), 1e-9 * norm2(a2x));
}

TEST_F(NearbyTest, ExactPreconditionerOneIteration)
{
  const ProblemInstance one = checker(10.0, 0.0);
  for (const PreconditionSide side : {PreconditionSide::left, PreconditionSide::right})
    for (const NormMode mode : all_modes)
    {
      GmresOptions opts;
      opts.side = side;
      opts.inner.mode = mode;
      EXPECT_EQ(solve_nearby(one, one, opts).iterations, 1);
    }
}

TEST_F(NearbyTest, SolutionResidualTransfer)
{
  const ProblemInstance two = checker(10.0, 0.0);
  const ProblemInstance one = homogeneous_instance(10.0, two.mesh, 10);
  const ComplexSparseMatrix a2 = assemble_system(two);
  const CVector f = assemble_planewave_rhs(two);
  for (const PreconditionSide side : {PreconditionSide::left, PreconditionSide::right})
  {
    GmresOptions opts;
    opts.side = side;
    const GmresReport r = solve_nearby(one, two, opts);
    EXPECT_TRUE(r.converged);
    const CVector a2u = matvec(a2, r.solution);
    CVector res(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      res[i] = a2u[i] - f[i];
    EXPECT_LE(norm2(res) / norm2(f), 10.0 * opts.tol);
  }
}

TEST_F(NearbyTest, ResidualHistoryNonIncreasingAllModes)
{
  const ProblemInstance two = checker(12.0, 0.0);
  const ProblemInstance one = homogeneous_instance(12.0, two.mesh, 10);
  for (const NormMode mode : all_modes)
  {
    GmresOptions opts;
    opts.inner.mode = mode;
    opts.side = mode == NormMode::dk_inverse ? PreconditionSide::right : PreconditionSide::left;
    const GmresReport r = solve_nearby(one, two, opts);
    for (std::size_t m = 1; m < r.residual_history.size(); ++m)
      EXPECT_LE(r.residual_history[m], r.residual_history[m - 1] * (1 + 1e-12));
    EXPECT_EQ(r.converged, r.final_relres() <= opts.tol);
    EXPECT_LE(r.iterations, opts.max_iter);
  }
}

TEST_F(NearbyTest, NormModesAgreeOnConvergedSolution)
{
  const ProblemInstance two = checker(10.0, 0.3);
  const ProblemInstance one = homogeneous_instance(10.0, two.mesh, 10);
  GmresOptions opts;
  opts.tol = 1e-12;
  const GmresReport e = solve_nearby(one, two, opts);
  opts.inner.mode = NormMode::dk;
  const GmresReport d = solve_nearby(one, two, opts);
  CVector diff(e.solution.size());
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff[i] = e.solution[i] - d.solution[i];
  EXPECT_LE(norm2(diff), 1e-8 * norm2(e.solution));
}

TEST_F(NearbyTest, BetaOneCheckerboardRegression)
{
  // frozen from this library's own sweep: 4 iterations at both k
  std::vector<int> its;
  for (const double k : {20.0, 40.0})
  {
    const ProblemInstance two = checker(k, 1.0);
    its.push_back(solve_nearby(homogeneous_instance(k, two.mesh, 10), two, {}).iterations);
  }
  EXPECT_LE(std::abs(its[0] - its[1]), 2);
  EXPECT_EQ(its[0], 4);
}
