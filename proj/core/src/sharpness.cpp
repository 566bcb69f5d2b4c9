// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nbpc/errors.hpp"
#include "nbpc/quadrature.hpp"
#include "nbpc/rng.hpp"

namespace nbpc
{

namespace
{

using cplx = std::complex<double>;

struct Bump
{
  double p;    // phat
  double dp;   // phat'
  double ddp;  // phat'' (phat''' = 0)
};

Bump bump(const SharpnessConfig &cfg, double r)
{
  const double half = 0.5 * (cfg.R2 - cfg.R1);
  const double pmax = half * half;
  return {(r - cfg.R1) * (cfg.R2 - r) / pmax, (cfg.R1 + cfg.R2 - 2.0 * r) / pmax, -2.0 / pmax};
}

bool inside(const SharpnessConfig &cfg, double r) { return r > cfg.R1 && r < cfg.R2; }

// exp(ikr) chi from the polynomial, without the cut-off.
cplx w_poly(const SharpnessConfig &cfg, double k, double r)
{
  return std::polar(1.0, k * r) * std::pow(bump(cfg, r).p, cfg.m);
}

void integrate(const SharpnessConfig &cfg, int panels, double k, double out[4])
{
  const GaussRule rule = gauss_legendre(8);
  const double width = (cfg.R2 - cfg.R1) / panels;
  std::fill(out, out + 4, 0.0);
  for (int p = 0; p < panels; ++p)
  {
    const double a = cfg.R1 + p * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    {
      const double r = a + 0.5 * width * (rule.nodes[q] + 1.0);
      const double wt = 0.5 * width * rule.weights[q] * 2.0 * std::numbers::pi * r;
      const RadialValue d = sharpness_difference(cfg, k, r);
      const RadialValue u = sharpness_u2(cfg, k, r);
      out[0] += wt * std::norm(d.value);
      out[1] += wt * std::norm(d.derivative);
      out[2] += wt * std::norm(u.value);
      out[3] += wt * std::norm(u.derivative);
    }
  }
}

}  // namespace

void SharpnessConfig::validate() const
{
  if (!(R1 > 0.0) || !(R2 > R1))
    throw ConfigError("radii", "need 0 < R1 < R2");
  if (l < 0 || m <= l + 4)
    throw ConfigError("m", "need m > l + 4 and l >= 0");
  if (!c_of_k)
    throw ConfigError("c_of_k", "amplitude function missing");
  if (ks.empty())
    throw ConfigError("k", "empty k list");
  for (const double k : ks)
    if (!(k > 0.0))
      throw ConfigError("k", "wavenumbers must be positive");
  if (panels < 1)
    throw ConfigError("panels", "need at least one panel");
}

RadialValue sharpness_difference(const SharpnessConfig &cfg, double k, double r)
{
  if (!inside(cfg, r))
    return {};
  const Bump b = bump(cfg, r);
  const double chi = std::pow(b.p, cfg.m);
  const double dchi = cfg.m * std::pow(b.p, cfg.m - 1) * b.dp;
  const cplx e = std::polar(1.0, k * r);
  return {e * chi, e * (cplx(0.0, k) * chi + dchi)};
}

cplx sharpness_ftilde(const SharpnessConfig &cfg, double k, double r)
{
  if (!inside(cfg, r))
    return {};
  const Bump b = bump(cfg, r);
  const int m = cfg.m;
  const double chi = std::pow(b.p, m);
  const double dchi = m * std::pow(b.p, m - 1) * b.dp;
  const double ddchi = m * (m - 1) * std::pow(b.p, m - 2) * b.dp * b.dp + m * std::pow(b.p, m - 1) * b.ddp;
  const cplx ik(0.0, k);
  return -std::polar(1.0, k * r) * (ik / r * chi + 2.0 * ik * dchi + ddchi + dchi / r);
}

RadialValue sharpness_u2(const SharpnessConfig &cfg, double k, double r)
{
  if (!inside(cfg, r))
    return {};
  // u2 = exp(ikr) phat^e P(r) / (k^2 c), e = m - l - 2, with the common factor
  // phat^(m-2) of chi, chi', chi'' cancelled against chi~ analytically.
  const Bump b = bump(cfg, r);
  const double m = cfg.m;
  const int e = cfg.m - cfg.l - 2;
  const cplx ik(0.0, k);
  const double p = b.p, dp = b.dp, ddp = b.ddp;
  const cplx P = ik / r * p * p + 2.0 * ik * m * p * dp + m * (m - 1) * dp * dp + m * p * ddp +
                 m * p * dp / r;
  const cplx dP = ik * (-p * p / (r * r) + 2.0 * p * dp / r) + 2.0 * ik * m * (dp * dp + p * ddp) +
                  2.0 * m * (m - 1) * dp * ddp + m * dp * ddp +
                  m * (dp * dp / r + p * ddp / r - p * dp / (r * r));
  const double scale = 1.0 / (k * k * cfg.c_of_k(k));
  const cplx ex = std::polar(1.0, k * r);
  const double pe = std::pow(p, e);
  const double dpe = e * std::pow(p, e - 1) * dp;
  return {scale * ex * pe * P, scale * ex * (ik * pe * P + dpe * P + pe * dP)};
}

std::vector<SharpnessRow> sharpness_experiment(const SharpnessConfig &cfg)
{
  cfg.validate();
  std::vector<SharpnessRow> rows;
  for (const double k : cfg.ks)
  {
    double coarse[4], fine[4];
    integrate(cfg, cfg.panels, k, coarse);
    integrate(cfg, 2 * cfg.panels, k, fine);
    for (int i = 0; i < 4; ++i)
      if (std::abs(fine[i] - coarse[i]) > 1e-6 * std::abs(fine[i]))
        throw ConvergenceError("sharpness_experiment: radial quadrature not converged");
    SharpnessRow row;
    row.k = k;
    row.c = cfg.c_of_k(k);
    row.diff_l2 = std::sqrt(fine[0]);
    row.diff_h1k = std::sqrt(fine[1] + k * k * fine[0]);
    row.u2_l2 = std::sqrt(fine[2]);
    row.u2_h1k = std::sqrt(fine[3] + k * k * fine[2]);
    row.ratio_h1k = row.diff_h1k / row.u2_h1k / (k * row.c);
    row.ratio_l2 = row.diff_l2 / row.u2_l2 / (k * row.c);
    rows.push_back(row);
  }
  return rows;
}

ResidualCheck sharpness_residual_check(const SharpnessConfig &cfg, double k, int radii,
                                       std::uint64_t seed)
{
  cfg.validate();
  ResidualCheck out;
  out.k = k;
  out.coarse_step = 0.05 * std::min(1.0 / k, (cfg.R2 - cfg.R1) / cfg.m);

  RngStream rng(seed);
  std::vector<double> rs(radii);
  const double margin = 4.0 * out.coarse_step;
  for (double &r : rs)
    r = rng.uniform(cfg.R1 + margin, cfg.R2 - margin);

  double fscale = 0.0;
  for (int i = 0; i <= 1000; ++i)
  {
    const double r = cfg.R1 + (cfg.R2 - cfg.R1) * (i + 0.5) / 1001.0;
    fscale = std::max(fscale, std::abs(sharpness_ftilde(cfg, k, r)));
  }

  // Laplacian of a radial function: w'' + w'/r, both by 5-point stencils.
  auto residual = [&](double r, double h) {
    const cplx wm2 = w_poly(cfg, k, r - 2 * h), wm1 = w_poly(cfg, k, r - h);
    const cplx w0 = w_poly(cfg, k, r);
    const cplx wp1 = w_poly(cfg, k, r + h), wp2 = w_poly(cfg, k, r + 2 * h);
    const cplx d1 = (wm2 - 8.0 * wm1 + 8.0 * wp1 - wp2) / (12.0 * h);
    const cplx d2 = (-wm2 + 16.0 * wm1 - 30.0 * w0 + 16.0 * wp1 - wp2) / (12.0 * h * h);
    return std::abs(d2 + d1 / r + k * k * w0 + sharpness_ftilde(cfg, k, r));
  };

  double sum_coarse = 0.0, sum_fine = 0.0;
  for (const double r : rs)
  {
    const double rc = residual(r, out.coarse_step);
    const double rf = residual(r, 0.5 * out.coarse_step);
    sum_coarse += rc;
    sum_fine += rf;
    out.coarse_residual = std::max(out.coarse_residual, rc / fscale);
    out.fine_residual = std::max(out.fine_residual, rf / fscale);
  }
  out.observed_order = std::log2(sum_coarse / sum_fine);
  return out;
}

}  // namespace nbpc
