// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/mesh.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nbpc/errors.hpp"

namespace nbpc
{

Mesh2D::Mesh2D(Index cells_per_side)
  : cells_(cells_per_side), h_(std::numbers::sqrt2 / cells_per_side)
{
  if (cells_per_side < 1)
    throw Error("mesh: cells_per_side must be >= 1");

  const Index n = cells_ + 1;
  nodes_.reserve(static_cast<std::size_t>(n) * n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      nodes_.push_back({static_cast<double>(i) / cells_, static_cast<double>(j) / cells_});

  triangles_.reserve(2 * static_cast<std::size_t>(cells_) * cells_);
  for (Index j = 0; j < cells_; ++j)
    for (Index i = 0; i < cells_; ++i)
    {
      const Index bl = node_index(i, j);
      const Index br = node_index(i + 1, j);
      const Index tr = node_index(i + 1, j + 1);
      const Index tl = node_index(i, j + 1);
      triangles_.push_back({bl, br, tr});
      triangles_.push_back({bl, tr, tl});
    }

  boundary_.reserve(4 * static_cast<std::size_t>(cells_));
  for (Index i = 0; i < cells_; ++i)
    boundary_.push_back({{node_index(i, 0), node_index(i + 1, 0)}, Side::bottom});
  for (Index j = 0; j < cells_; ++j)
    boundary_.push_back({{node_index(cells_, j), node_index(cells_, j + 1)}, Side::right});
  for (Index i = cells_; i > 0; --i)
    boundary_.push_back({{node_index(i, cells_), node_index(i - 1, cells_)}, Side::top});
  for (Index j = cells_; j > 0; --j)
    boundary_.push_back({{node_index(0, j), node_index(0, j - 1)}, Side::left});
}

bool Mesh2D::on_boundary(Index node) const noexcept
{
  const auto [i, j] = grid_position(node);
  return i == 0 || j == 0 || i == cells_ || j == cells_;
}

Mesh2D build_unit_square_mesh(Index cells_per_side) { return Mesh2D(cells_per_side); }

Index choose_resolution(double k, Index grid_m, const MeshRule &rule, Index max_cells)
{
  if (!(k > 0.0))
    throw Error("choose_resolution: k must be positive");
  if (grid_m < 1)
    throw Error("choose_resolution: grid_m must be >= 1");

  const double target = rule.constant * std::pow(k, -rule.exponent);
  const double needed = std::numbers::sqrt2 / target;
  if (!std::isfinite(needed) || needed > static_cast<double>(max_cells) + grid_m)
    throw ResolutionOverflow("choose_resolution: k=" + std::to_string(k) +
                             " needs more than " + std::to_string(max_cells) + " cells per side");

  auto ok = [&](long long c) { return std::numbers::sqrt2 / static_cast<double>(c) <= target; };
  long long c = grid_m * static_cast<long long>(std::ceil(needed / grid_m));
  if (c < grid_m)
    c = grid_m;
  // guard the ceil against rounding on either side
  while (!ok(c))
    c += grid_m;
  while (c > grid_m && ok(c - grid_m))
    c -= grid_m;

  if (c > max_cells)
    throw ResolutionOverflow("choose_resolution: k=" + std::to_string(k) + " needs c=" +
                             std::to_string(c) + " > " + std::to_string(max_cells));
  return static_cast<Index>(c);
}

}  // namespace nbpc
