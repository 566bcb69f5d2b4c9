// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nbpc/errors.hpp"
#include "nbpc/harness.hpp"
#include "nbpc/plot.hpp"

using namespace nbpc;

namespace
{

ExperimentSpec small_spec(Family family)
{
  ExperimentSpec s;
  s.family = family;
  s.ks = {10.0, 15.0};
  s.betas = {0.0, 0.5, 1.0};
  s.realizations = family_is_random(family) ? 2 : 1;
  s.seed = 99;
  s.finalize();
  return s;
}

void expect_same_except_time(const SweepRow &a, const SweepRow &b)
{
  EXPECT_EQ(a.family, b.family);
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(a.beta, b.beta);
  EXPECT_EQ(a.realization, b.realization);
  EXPECT_EQ(a.n_dof, b.n_dof);
  EXPECT_EQ(a.diff_linf, b.diff_linf);
  EXPECT_EQ(a.diff_l4, b.diff_l4);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.converged, b.converged);
  EXPECT_EQ(a.final_relres, b.final_relres);
}

}  // namespace

TEST(Harness, ExactPreconditionerRows)
{
  ExperimentSpec s;
  s.ks = {20.0, 40.0};
  s.betas = {1.0};
  s.finalize();
  const SweepResult r = run_sweep(s);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.factorizations, 2);
  for (const SweepRow &row : r.rows)
  {
    EXPECT_TRUE(row.converged);
    EXPECT_LE(row.iterations, 5);
    EXPECT_LE(row.final_relres, 1e-5);
    EXPECT_TRUE(row.error.empty());
  }
  EXPECT_EQ(r.rows[0].n_dof, 131 * 131);
  EXPECT_FALSE(r.any_failure());
}

TEST(Harness, DeterministicAndOrderedUnderThreads)
{
  ExperimentSpec s = small_spec(Family::random_A);
  const SweepResult one = run_sweep(s);
  s.jobs = 3;
  const SweepResult three = run_sweep(s);
  ASSERT_EQ(one.rows.size(), 2u * 3u * 2u);
  ASSERT_EQ(one.rows.size(), three.rows.size());
  EXPECT_EQ(one.factorizations, 2);
  EXPECT_EQ(three.factorizations, 2);
  for (std::size_t i = 0; i < one.rows.size(); ++i)
    expect_same_except_time(one.rows[i], three.rows[i]);
  EXPECT_EQ(one.rows[0].k, 10.0);
  EXPECT_EQ(one.rows[1].realization, 1);
  EXPECT_EQ(one.rows[2].beta, 0.5);
  EXPECT_EQ(one.rows.back().k, 15.0);
  // different realizations draw different media
  EXPECT_NE(one.rows[0].diff_linf, one.rows[1].diff_linf);
}

TEST(Harness, RunCaseReproducesSweepRow)
{
  const ExperimentSpec s = small_spec(Family::random_n);
  const SweepResult r = run_sweep(s);
  const SweepRow row = run_case(s, 1, 1, 1);
  expect_same_except_time(row, r.rows[(1 * 3 + 1) * 2 + 1]);
}

TEST(Harness, DiffNormsMatchAlpha)
{
  const SweepResult r = run_sweep(small_spec(Family::checker2_n));
  for (const SweepRow &row : r.rows)
  {
    const double alpha = 0.5 * std::pow(row.k, -row.beta);
    EXPECT_NEAR(row.diff_linf, alpha, 1e-14);
    EXPECT_NEAR(row.diff_l4, alpha, 1e-14);
  }
}

TEST(Harness, MaximaOverRealizations)
{
  std::vector<SweepRow> rows(3);
  rows[0] = {"random_n", 20, 0.5, 0, 10, 0.1, 0.1, 7, true, 1e-6, 1.0, ""};
  rows[1] = {"random_n", 20, 0.5, 1, 10, 0.1, 0.1, 9, true, 1e-6, 1.0, ""};
  rows[2] = {"random_n", 20, 1.0, 0, 10, 0.1, 0.1, 3, false, 1e-2, 1.0, ""};
  const std::vector<MaxRow> m = compute_maxima(rows);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].max_iterations, 9);
  EXPECT_EQ(m[0].rows, 2);
  EXPECT_TRUE(m[0].all_converged);
  EXPECT_FALSE(m[1].all_converged);
}

TEST(Harness, CsvRoundTrip)
{
  const SweepResult r = run_sweep(small_spec(Family::checker10_n));
  std::vector<SweepRow> rows = r.rows;
  rows[1].error = "singular";
  rows[1].converged = false;
  std::ostringstream os;
  write_sweep_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), sweep_csv_header);
  EXPECT_NE(os.str().find(",error,"), std::string::npos);
  std::istringstream is(os.str());
  const std::vector<SweepRow> back = read_sweep_csv(is);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    expect_same_except_time(back[i], rows[i]);
    EXPECT_NEAR(back[i].wall_ms, rows[i].wall_ms, 1e-3);
  }
  EXPECT_FALSE(back[1].error.empty());
}

TEST(Harness, CsvRejectsMalformed)
{
  std::istringstream empty("");
  EXPECT_THROW(read_sweep_csv(empty), FormatError);
  std::istringstream header("a,b,c\n");
  EXPECT_THROW(read_sweep_csv(header), FormatError);
  std::istringstream short_row(std::string(sweep_csv_header) + "\nchecker10_n,20,1\n");
  EXPECT_THROW(read_sweep_csv(short_row), FormatError);
  std::istringstream bad_flag(std::string(sweep_csv_header) +
                              "\nchecker10_n,20,1,0,100,0,0,4,maybe,1e-6,3\n");
  EXPECT_THROW(read_sweep_csv(bad_flag), FormatError);
}

TEST(Harness, NumberFormatRoundTrips)
{
  for (const double v : {0.1, 1e-300, 123456789.0, 0.30000000000000004})
    EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(Harness, ResidualFilesWritten)
{
  const auto dir = std::filesystem::temp_directory_path() / "nbpc_residuals_test";
  std::filesystem::remove_all(dir);
  ExperimentSpec s = small_spec(Family::checker10_n);
  s.ks = {10.0};
  s.betas = {1.0};
  s.residual_dir = dir.string();
  const SweepResult r = run_sweep(s);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto &e : std::filesystem::directory_iterator(dir))
    ++files;
  EXPECT_EQ(files, 1u);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(r.rows.size(), 1u);
}

TEST(Plot, OnePolylinePerBeta)
{
  std::vector<SweepRow> rows(2);
  rows[0] = {"checker10_n", 20, 1.0, 0, 10, 0, 0, 4, true, 1e-6, 1.0, ""};
  rows[1] = {"checker10_n", 40, 1.0, 0, 10, 0, 0, 4, true, 1e-6, 1.0, ""};
  const std::string svg = render_iteration_plot(rows, "test");
  std::size_t count = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1))
    ++count;
  EXPECT_EQ(count, 1u);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
}

TEST(Plot, ElevenSeriesAndGreyNonConverged)
{
  std::vector<SweepRow> rows;
  for (int b = 0; b <= 10; ++b)
    for (const double k : {20.0, 40.0})
      rows.push_back({"random_n", k, b / 10.0, 0, 10, 0, 0, 4 + b, b != 3, 1e-6, 1.0, ""});
  const std::string svg = render_iteration_plot(rows, "sweep");
  std::size_t count = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1))
    ++count;
  EXPECT_EQ(count, 11u);
  EXPECT_NE(svg.find("#999999"), std::string::npos);
  EXPECT_THROW(render_iteration_plot({}, "x"), FormatError);
}

TEST(Plot, EmptyCsvWritesNothing)
{
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = dir / "nbpc_plot_empty.csv";
  const auto svg = dir / "nbpc_plot_empty.svg";
  std::filesystem::remove(svg);
  std::ofstream(csv) << sweep_csv_header << "\n";
  EXPECT_THROW(emit_plot(csv.string(), svg.string()), FormatError);
  EXPECT_FALSE(std::filesystem::exists(svg));
  std::filesystem::remove(csv);
}
