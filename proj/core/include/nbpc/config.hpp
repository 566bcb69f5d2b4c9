// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_CONFIG_HPP
#define NBPC_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbpc/krylov.hpp"
#include "nbpc/lu_factor.hpp"
#include "nbpc/mesh.hpp"

namespace nbpc
{

/// Coefficient family of the second medium; the first is always A = I, n = 1.
enum class Family
{
  random_n,     ///< n2 ~ Unif(1 - alpha, 1 + alpha) on a 10 x 10 grid
  random_A,     ///< A2 = [[1+a, b], [b, 1+c]] on a 10 x 10 grid
  checker10_n,  ///< n2 checkerboard on a 10 x 10 grid
  checker2_n    ///< n2 checkerboard on a 2 x 2 grid
};

Family parse_family(std::string_view name);
std::string_view to_string(Family family);
/// Side of the coefficient grid for the family.
Index family_grid(Family family);
bool family_is_random(Family family);

struct ExperimentSpec
{
  Family family = Family::checker10_n;
  std::vector<double> ks{20.0, 30.0, 40.0, 50.0, 60.0};
  std::vector<double> betas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  int realizations = 1;
  std::uint64_t seed = 20260101;
  double tol = 1e-5;
  int max_iter = 500;
  std::optional<int> restart;
  PreconditionSide side = PreconditionSide::left;
  NormMode norm = NormMode::euclidean;
  MeshRule rule;
  Index max_cells = 1100;
  LuBackend lu = LuBackend::automatic;
  int jobs = 1;
  std::string out;
  /// Directory for per-solve residual histories; empty disables them.
  std::string residual_dir;

  /// Forces realizations = 1 for the checkerboard families, then range-checks.
  /// Throws ConfigError naming the offending key.
  void finalize();
};

/// Sets one key from its text value, e.g. ("beta", "0:1:0.1").
void apply_setting(ExperimentSpec &spec, std::string_view key, std::string_view value);

/// key = value lines; '#' starts a comment. Unknown keys are errors.
ExperimentSpec parse_config(std::istream &is);
ExperimentSpec parse_config_file(const std::string &path);

/// "a,b,c", "lo:hi:step" (inclusive) or a mix, e.g. "10,20:60:20".
std::vector<double> parse_list(std::string_view key, std::string_view text);

}  // namespace nbpc

#endif  // NBPC_CONFIG_HPP
