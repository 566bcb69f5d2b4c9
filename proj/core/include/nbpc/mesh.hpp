// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_MESH_HPP
#define NBPC_MESH_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace nbpc
{

using Index = std::int32_t;

struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

enum class Side : std::uint8_t
{
  bottom,
  right,
  top,
  left
};

struct BoundaryEdge
{
  std::array<Index, 2> nodes;
  Side side;
};

//
// Structured P1 triangulation of the unit square. Every grid square is cut
// by its bottom-left to top-right diagonal, so all triangles are congruent.
// Node (i, j) sits at (i/c, j/c) and has index j*(c+1) + i.
//
class Mesh2D
{
public:
  explicit Mesh2D(Index cells_per_side);

  Index cells_per_side() const noexcept { return cells_; }
  Index nodes_per_side() const noexcept { return cells_ + 1; }
  Index num_nodes() const noexcept { return static_cast<Index>(nodes_.size()); }
  Index num_triangles() const noexcept { return static_cast<Index>(triangles_.size()); }

  /// Maximal element diameter, sqrt(2)/c.
  double h() const noexcept { return h_; }

  /// Half-bandwidth of any matrix assembled on this mesh in node order.
  Index bandwidth() const noexcept { return cells_ + 2; }

  const std::vector<Point2> &nodes() const noexcept { return nodes_; }
  const std::vector<std::array<Index, 3>> &triangles() const noexcept { return triangles_; }
  const std::vector<BoundaryEdge> &boundary_edges() const noexcept { return boundary_; }

  Index node_index(Index i, Index j) const noexcept { return j * (cells_ + 1) + i; }
  std::array<Index, 2> grid_position(Index node) const noexcept
  {
    return {node % (cells_ + 1), node / (cells_ + 1)};
  }

  /// Grid square (column, row) that triangle t belongs to.
  std::array<Index, 2> triangle_square(Index t) const noexcept
  {
    const Index sq = t / 2;
    return {sq % cells_, sq / cells_};
  }

  bool on_boundary(Index node) const noexcept;

private:
  Index cells_;
  double h_;
  std::vector<Point2> nodes_;
  std::vector<std::array<Index, 3>> triangles_;
  std::vector<BoundaryEdge> boundary_;
};

Mesh2D build_unit_square_mesh(Index cells_per_side);

/// Mesh-size rule h <= constant * k^(-exponent).
struct MeshRule
{
  double exponent = 1.5;
  double constant = 1.0;
};

/// Smallest multiple c of `grid_m` with sqrt(2)/c <= rule.constant * k^(-rule.exponent).
/// Throws ResolutionOverflow when c would exceed `max_cells`.
Index choose_resolution(double k, Index grid_m, const MeshRule &rule = {},
                        Index max_cells = 20000);

}  // namespace nbpc

#endif  // NBPC_MESH_HPP
