// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "nbpc/errors.hpp"
#include "nbpc/mesh.hpp"

using namespace nbpc;

namespace
{

double signed_area(const Mesh2D &mesh, const std::array<Index, 3> &t)
{
  const Point2 a = mesh.nodes()[t[0]], b = mesh.nodes()[t[1]], c = mesh.nodes()[t[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace

TEST(Mesh, SmallestMesh)
{
  const Mesh2D mesh = build_unit_square_mesh(1);
  EXPECT_EQ(mesh.num_nodes(), 4);
  EXPECT_EQ(mesh.num_triangles(), 2);
  EXPECT_EQ(mesh.boundary_edges().size(), 4u);
  EXPECT_DOUBLE_EQ(mesh.h(), std::numbers::sqrt2);
}

TEST(Mesh, CountingFormulaC2)
{
  const Mesh2D mesh = build_unit_square_mesh(2);
  EXPECT_EQ(mesh.num_nodes(), 9);
  EXPECT_EQ(mesh.num_triangles(), 8);
  EXPECT_EQ(mesh.boundary_edges().size(), 8u);
}

TEST(Mesh, AreasPartitionTheSquare)
{
  const Mesh2D mesh = build_unit_square_mesh(10);
  double total = 0.0;
  for (const auto &t : mesh.triangles())
    total += signed_area(mesh, t);
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(Mesh, CountsAndOrientation)
{
  for (const Index c : {1, 3, 7, 16})
  {
    const Mesh2D mesh(c);
    EXPECT_EQ(mesh.num_nodes(), (c + 1) * (c + 1));
    EXPECT_EQ(mesh.num_triangles(), 2 * c * c);
    EXPECT_EQ(static_cast<Index>(mesh.boundary_edges().size()), 4 * c);
    for (const auto &t : mesh.triangles())
    {
      EXPECT_NE(t[0], t[1]);
      EXPECT_NE(t[1], t[2]);
      EXPECT_NE(t[0], t[2]);
      // Jacobian determinant 2 * area = 1/c^2
      EXPECT_NEAR(2.0 * signed_area(mesh, t) * c * c, 1.0, 1e-13);
    }
  }
}

TEST(Mesh, DiagonalRunsBottomLeftToTopRight)
{
  const Mesh2D mesh(3);
  for (Index t = 0; t < mesh.num_triangles(); ++t)
  {
    const auto [ci, cj] = mesh.triangle_square(t);
    const auto &tri = mesh.triangles()[t];
    const std::set<Index> verts(tri.begin(), tri.end());
    EXPECT_TRUE(verts.count(mesh.node_index(ci, cj)));
    EXPECT_TRUE(verts.count(mesh.node_index(ci + 1, cj + 1)));
  }
}

TEST(Mesh, BoundaryEdgesCoverEachSideOnce)
{
  const Index c = 5;
  const Mesh2D mesh(c);
  double length[4] = {0, 0, 0, 0};
  for (const BoundaryEdge &e : mesh.boundary_edges())
  {
    const Point2 a = mesh.nodes()[e.nodes[0]], b = mesh.nodes()[e.nodes[1]];
    length[static_cast<int>(e.side)] += std::hypot(b.x - a.x, b.y - a.y);
    switch (e.side)
    {
    case Side::bottom:
      EXPECT_EQ(a.y, 0.0);
      EXPECT_EQ(b.y, 0.0);
      break;
    case Side::top:
      EXPECT_EQ(a.y, 1.0);
      EXPECT_EQ(b.y, 1.0);
      break;
    case Side::left:
      EXPECT_EQ(a.x, 0.0);
      EXPECT_EQ(b.x, 0.0);
      break;
    case Side::right:
      EXPECT_EQ(a.x, 1.0);
      EXPECT_EQ(b.x, 1.0);
      break;
    }
  }
  for (const double l : length)
    EXPECT_NEAR(l, 1.0, 1e-14);
}

TEST(Mesh, IndexRoundTrip)
{
  const Mesh2D mesh(9);
  for (Index node = 0; node < mesh.num_nodes(); ++node)
  {
    const auto [i, j] = mesh.grid_position(node);
    EXPECT_EQ(mesh.node_index(i, j), node);
    EXPECT_EQ(mesh.nodes()[node].x, double(i) / 9.0);
    EXPECT_EQ(mesh.nodes()[node].y, double(j) / 9.0);
  }
}

TEST(ChooseResolution, SmallestForUnitWavenumber)
{
  EXPECT_EQ(choose_resolution(1.0, 1), 2);
}

TEST(ChooseResolution, ArithmeticExamples)
{
  EXPECT_EQ(choose_resolution(20.0, 10), 130);
  EXPECT_EQ(choose_resolution(100.0, 10), 1420);
}

TEST(ChooseResolution, MinimalMultipleSatisfyingRule)
{
  for (const double k : {5.0, 8.0, 13.7, 20.0, 33.3, 60.0})
    for (const Index m : {1, 2, 10})
      for (const MeshRule rule : {MeshRule{}, MeshRule{1.0, 2.0}, MeshRule{1.25, 0.5}})
      {
        const Index c = choose_resolution(k, m, rule);
        const double target = rule.constant * std::pow(k, -rule.exponent);
        EXPECT_EQ(c % m, 0);
        EXPECT_LE(std::numbers::sqrt2 / c, target);
        if (c > m)
          EXPECT_LT(target, std::numbers::sqrt2 / (c - m));
      }
}

TEST(ChooseResolution, OverflowGuard)
{
  EXPECT_THROW(choose_resolution(100.0, 10, {}, 1000), ResolutionOverflow);
  EXPECT_NO_THROW(choose_resolution(100.0, 10, {}, 1420));
}
