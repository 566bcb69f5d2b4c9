// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/verify.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

#include "nbpc/analysis.hpp"
#include "nbpc/coefficients.hpp"
#include "nbpc/rng.hpp"
#include "nbpc/sharpness.hpp"

namespace nbpc
{

namespace
{

Eigen::MatrixXcd random_complex(Index n, RngStream &rng)
{
  Eigen::MatrixXcd c(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      c(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return c;
}

Eigen::MatrixXd random_spd(Index n, RngStream &rng)
{
  Eigen::MatrixXd g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      g(i, j) = rng.uniform(-1.0, 1.0);
  return g * g.transpose() + static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

int run_verify(std::ostream &os)
{
  int failures = 0;
  auto check = [&](const std::string &name, const std::function<std::string()> &body) {
    std::string detail;
    try
    {
      detail = body();
    }
    catch (const std::exception &e)
    {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty())
      os << "PASS " << name << '\n';
    else
    {
      os << "FAIL " << name << ": " << detail << '\n';
      ++failures;
    }
  };

  check("adjoint_norm_identity", [] {
    RngStream rng(101);
    for (int t = 0; t < 5; ++t)
    {
      const Eigen::MatrixXcd c = random_complex(20, rng);
      const Eigen::MatrixXd d = random_spd(20, rng);
      const auto [a, b] = adjoint_norm_identity_check(c, d);
      if (rel(a, b) > 1e-10)
        return "norms differ: " + std::to_string(a) + " vs " + std::to_string(b);
    }
    return std::string();
  });

  check("fov_normal_matrix", [] {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2, 2);
    c(0, 0) = 1.0;
    c(1, 1) = 3.0;
    const FovReport r = fov_distance(c, Eigen::MatrixXd::Identity(2, 2));
    if (std::abs(r.dist0 - 1.0) > 1e-10 || std::abs(r.op_norm - 3.0) > 1e-10)
      return "dist0 = " + std::to_string(r.dist0) + ", op_norm = " + std::to_string(r.op_norm);
    return std::string();
  });

  check("fov_membership", [] {
    RngStream rng(202);
    const Index n = 12;
    const Eigen::MatrixXcd c =
      Eigen::MatrixXcd::Identity(n, n) + 0.3 * random_complex(n, rng) / std::sqrt(double(n));
    const Eigen::MatrixXd d = random_spd(n, rng);
    const FovReport r = fov_distance(c, d);
    for (int t = 0; t < 200; ++t)
    {
      Eigen::VectorXcd x(n);
      for (Index i = 0; i < n; ++i)
        x(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      const cplx dx = x.dot(d.cast<cplx>() * x);
      const cplx val = x.dot(d.cast<cplx>() * (c * x)) / dx.real();
      if (std::abs(val) < r.dist0 - 1e-8)
        return std::string("probe inside the excluded disc");
    }
    return std::string();
  });

  check("weighted_norm_scaling", [] {
    const Mesh2D mesh(8);
    const ComplexSparseMatrix dk = assemble_Dk(mesh, 5.0);
    const SpdFactor f(dk);
    const Index n = mesh.num_nodes();
    const LinearOperator twice = [](std::span<const cplx> x, std::span<cplx> y) {
      for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = 2.0 * x[i];
    };
    InnerProductSpec specs[3] = {InnerProductSpec::euclidean(), InnerProductSpec::weighted(dk),
                                 InnerProductSpec::weighted_inverse(f)};
    specs[1].dk_factor = &f;
    specs[2].dk = &dk;
    for (const InnerProductSpec &s : specs)
    {
      const OperatorNormEstimate e = weighted_operator_norm(twice, twice, n, s);
      if (rel(e.value, 2.0) > 1e-8)
        return "norm of 2I = " + std::to_string(e.value);
    }
    return std::string();
  });

  check("perturbation_linearity", [] {
    auto mesh = std::make_shared<const Mesh2D>(20);
    const ProblemInstance base = homogeneous_instance(10.0, mesh, 10);
    const std::vector<ScanRow> rows =
      perturbation_norm_scan(base, checkerboard_sign(10), {0.01, 0.02, 0.04}, NormMode::dk);
    if (rel(rows[1].norm / rows[0].norm, 2.0) > 1e-6 || rel(rows[2].norm / rows[0].norm, 4.0) > 1e-6)
      return "ratios " + std::to_string(rows[1].norm / rows[0].norm) + ", " +
             std::to_string(rows[2].norm / rows[0].norm);
    return std::string();
  });

  check("inverse_inequality_s2", [] {
    const NormConstants c = compute_norm_constants(Mesh2D(10), 2.0);
    if (std::abs(c.c_inv_s - 1.0) > 1e-10)
      return "C_inv,2 = " + std::to_string(c.c_inv_s);
    if (!(c.m_minus <= c.m_plus))
      return std::string("m_minus > m_plus");
    return std::string();
  });

  check("sharpness_residual_order", [] {
    const SharpnessConfig cfg;
    for (const double k : cfg.ks)
    {
      const ResidualCheck r = sharpness_residual_check(cfg, k);
      if (r.observed_order < 3.5 || r.fine_residual > 1e-4)
      {
        std::ostringstream msg;
        msg << "k = " << k << ": order " << r.observed_order << ", residual " << r.fine_residual;
        return msg.str();
      }
    }
    return std::string();
  });

  return failures;
}

}  // namespace nbpc
