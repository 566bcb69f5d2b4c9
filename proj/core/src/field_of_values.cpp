// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "nbpc/analysis.hpp"
#include "nbpc/errors.hpp"

namespace nbpc
{

namespace
{

constexpr Index dense_limit = 500;

void require_dense_size(Index n, const char *what)
{
  if (n > dense_limit)
    throw Error(std::string(what) + ": dense path limited to N <= 500");
}

double largest_singular_value(const Eigen::MatrixXcd &m)
{
  if (m.size() == 0)
    return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

Eigen::MatrixXcd to_dense(const ComplexSparseMatrix &m)
{
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m.dim(), m.dim());
  const auto off = m.row_offsets();
  const auto col = m.col_indices();
  const auto val = m.values();
  for (Index r = 0; r < m.dim(); ++r)
    for (Index p = off[r]; p < off[r + 1]; ++p)
      d(r, col[p]) = val[p];
  return d;
}

Eigen::MatrixXcd dense_from_operator(const LinearOperator &op, Index n)
{
  Eigen::MatrixXcd d(n, n);
  CVector e(n), y(n);
  for (Index j = 0; j < n; ++j)
  {
    std::fill(e.begin(), e.end(), cplx{});
    e[j] = 1.0;
    op(e, y);
    for (Index i = 0; i < n; ++i)
      d(i, j) = y[i];
  }
  return d;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> spd_sqrt(const Eigen::MatrixXd &d)
{
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(d);
  if (eig.info() != Eigen::Success)
    throw ConvergenceError("spd_sqrt: eigensolver did not converge");
  const Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda.size() > 0 && !(lambda.minCoeff() > 0.0))
    throw NotPositiveDefinite("spd_sqrt: matrix is not positive definite");
  const Eigen::MatrixXd &v = eig.eigenvectors();
  Eigen::MatrixXd root = v * lambda.cwiseSqrt().asDiagonal() * v.transpose();
  Eigen::MatrixXd inv_root = v * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  return {std::move(root), std::move(inv_root)};
}

double dense_weighted_norm(const Eigen::MatrixXcd &c, const Eigen::MatrixXd &d)
{
  require_dense_size(static_cast<Index>(c.rows()), "dense_weighted_norm");
  const auto [root, inv_root] = spd_sqrt(d);
  const Eigen::MatrixXcd m = root.cast<cplx>() * c * inv_root.cast<cplx>();
  return largest_singular_value(m);
}

FovReport fov_distance(const Eigen::MatrixXcd &c, const Eigen::MatrixXd &d, int angles)
{
  const auto n = static_cast<Index>(c.rows());
  require_dense_size(n, "fov_distance");
  if (c.cols() != n || d.rows() != n || d.cols() != n)
    throw DimensionMismatch("fov_distance: dimension mismatch");
  if (angles < 4)
    throw Error("fov_distance: need at least 4 angles");

  const auto [root, inv_root] = spd_sqrt(d);
  const Eigen::MatrixXcd m = root.cast<cplx>() * c * inv_root.cast<cplx>();
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  const Eigen::MatrixXcd skew = cplx(0.0, -0.5) * (m - m.adjoint());  // (M - M^H) / 2i

  // Points of W(M) found so far. Each z bounds the support function from
  // above: lambda_min(Herm(e^{-i theta} M)) <= Re(e^{-i theta} z).
  std::vector<cplx> witnesses;
  auto upper_bound = [&](double theta) {
    double ub = std::numeric_limits<double>::infinity();
    const cplx rot = std::polar(1.0, -theta);
    for (const cplx &z : witnesses)
      ub = std::min(ub, (rot * z).real());
    return ub;
  };
  // lambda_min of Herm(e^{-i theta} M) = cos(theta) H + sin(theta) K
  auto lambda_min = [&](double theta) {
    const Eigen::MatrixXcd h = std::cos(theta) * herm + std::sin(theta) * skew;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success)
      throw ConvergenceError("fov_distance: Hermitian eigensolver did not converge");
    const Eigen::VectorXcd x = eig.eigenvectors().col(0);
    witnesses.push_back(x.dot(m * x));  // x^H M x
    return eig.eigenvalues()(0);
  };

  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  const double step = 2.0 * std::numbers::pi / angles;
  std::vector<int> order(angles);
  for (int j = 0; j < angles; ++j)
    order[j] = j;
  for (const int j : order)
  {
    const double theta = j * step;
    if (upper_bound(theta) <= best)
      continue;
    const double v = lambda_min(theta);
    if (v > best)
    {
      best = v;
      best_theta = theta;
    }
  }

  // golden-section refinement of the (concave near its max) support function
  {
    double a = best_theta - step, b = best_theta + step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = lambda_min(x1), f2 = lambda_min(x2);
    for (int it = 0; it < 40 && b - a > 1e-10; ++it)
    {
      if (f1 < f2)
      {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = lambda_min(x2);
      }
      else
      {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = lambda_min(x1);
      }
    }
    for (const auto &[f, x] : {std::pair{f1, x1}, std::pair{f2, x2}})
      if (f > best)
      {
        best = f;
        best_theta = x;
      }
  }

  FovReport report;
  report.op_norm = largest_singular_value(m);
  report.dist0 = std::max(0.0, best);
  report.best_angle = best_theta;
  report.origin_excluded = best > 0.0;
  report.cos_beta = report.op_norm > 0.0 ? std::min(1.0, report.dist0 / report.op_norm) : 0.0;
  report.sin_beta = std::sqrt(std::max(0.0, 1.0 - report.cos_beta * report.cos_beta));
  return report;
}

std::pair<double, double> adjoint_norm_identity_check(const Eigen::MatrixXcd &c,
                                                      const Eigen::MatrixXd &d)
{
  require_dense_size(static_cast<Index>(c.rows()), "adjoint_norm_identity_check");
  const auto [root, inv_root] = spd_sqrt(d);
  // ||C||_D = ||D^{1/2} C D^{-1/2}||_2
  const Eigen::MatrixXcd forward = root.cast<cplx>() * c * inv_root.cast<cplx>();
  // ||C^H||_{D^{-1}} = ||D^{-1/2} C^H D^{1/2}||_2
  const Eigen::MatrixXcd adjoint = inv_root.cast<cplx>() * c.adjoint() * root.cast<cplx>();
  return {largest_singular_value(forward), largest_singular_value(adjoint)};
}

}  // namespace nbpc
