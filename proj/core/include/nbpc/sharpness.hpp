// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_SHARPNESS_HPP
#define NBPC_SHARPNESS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace nbpc
{

//
// Radial construction on the annulus R1 < r < R2 in two dimensions:
//   chi(r)  = phat(r)^m,  chi~(r) = phat(r)^l,
//   phat(r) = (r - R1)(R2 - r) / max of the same,
//   u1 - u2 = exp(ikr) chi,   f~ = -(Laplacian + k^2)(exp(ikr) chi),
//   u2 = -f~ / (k^2 c(k) chi~),
// so that n2 = 1 + c(k) chi~ differs from n1 = 1 by c(k) in L-infinity.
//
struct SharpnessConfig
{
  double R1 = 0.5;
  double R2 = 1.0;
  int m = 7;
  int l = 2;
  std::function<double(double)> c_of_k = [](double k) { return 1.0 / k; };
  std::vector<double> ks{10.0, 20.0, 40.0, 80.0};
  /// Composite Gauss-Legendre panels over [R1, R2], 8 points each.
  int panels = 64;

  void validate() const;
};

struct SharpnessRow
{
  double k = 0.0;
  double c = 0.0;
  double diff_l2 = 0.0;
  double diff_h1k = 0.0;
  double u2_l2 = 0.0;
  double u2_h1k = 0.0;
  /// (||u1-u2|| / ||u2||) / (k c(k)) in each norm.
  double ratio_h1k = 0.0;
  double ratio_l2 = 0.0;
};

/// Value and radial derivative of a radial function at r.
struct RadialValue
{
  std::complex<double> value;
  std::complex<double> derivative;
};

RadialValue sharpness_difference(const SharpnessConfig &cfg, double k, double r);
RadialValue sharpness_u2(const SharpnessConfig &cfg, double k, double r);
std::complex<double> sharpness_ftilde(const SharpnessConfig &cfg, double k, double r);

/// One row per k in cfg.ks. Throws ConvergenceError if doubling the panel
/// count moves any norm by more than 1e-6 relative.
std::vector<SharpnessRow> sharpness_experiment(const SharpnessConfig &cfg);

struct ResidualCheck
{
  double k = 0.0;
  double coarse_step = 0.0;
  /// max over radii of |(Laplacian + k^2) w + f~| / max |f~|, w = exp(ikr) chi.
  double coarse_residual = 0.0;
  double fine_residual = 0.0;
  /// log2(coarse / fine), summed over the radii.
  double observed_order = 0.0;
};

//
// Fourth-order central differences of w at `radii` random radii (steps h and
// h/2 with h = 0.05 min(1/k, (R2 - R1)/m)), compared with the closed form f~.
//
ResidualCheck sharpness_residual_check(const SharpnessConfig &cfg, double k, int radii = 100,
                                       std::uint64_t seed = 17);

}  // namespace nbpc

#endif  // NBPC_SHARPNESS_HPP
