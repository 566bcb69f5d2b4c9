// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "nbpc/coefficients.hpp"
#include "nbpc/errors.hpp"
#include "nbpc/krylov.hpp"
#include "nbpc/lu_factor.hpp"
#include "nbpc/rng.hpp"
#include "nbpc/spd_factor.hpp"

namespace nbpc
{

namespace
{

// Everything shared by the cases of one k.
struct KContext
{
  std::shared_ptr<const Mesh2D> mesh;
  std::optional<LuFactor> a1;
  std::optional<ComplexSparseMatrix> dk;
  std::optional<SpdFactor> dk_factor;
};

KContext build_k_context(const ExperimentSpec &spec, double k, int &factorizations)
{
  KContext ctx;
  const Index grid = family_grid(spec.family);
  ctx.mesh = std::make_shared<const Mesh2D>(choose_resolution(k, grid, spec.rule, spec.max_cells));
  const ProblemInstance base = homogeneous_instance(k, ctx.mesh, grid);
  ctx.a1.emplace(assemble_system(base), spec.lu, ctx.mesh->bandwidth());
  ++factorizations;
  if (spec.norm == NormMode::dk)
    ctx.dk.emplace(assemble_Dk(*ctx.mesh, k));
  if (spec.norm == NormMode::dk_inverse)
    ctx.dk_factor.emplace(assemble_Dk(*ctx.mesh, k), ctx.mesh->bandwidth());
  return ctx;
}

GmresOptions gmres_options(const ExperimentSpec &spec, const KContext &ctx)
{
  GmresOptions opts;
  opts.tol = spec.tol;
  opts.max_iter = spec.max_iter;
  opts.restart = spec.restart;
  opts.side = spec.side;
  if (ctx.dk)
    opts.inner = InnerProductSpec::weighted(*ctx.dk);
  if (ctx.dk_factor)
    opts.inner = InnerProductSpec::weighted_inverse(*ctx.dk_factor);
  return opts;
}

void write_residuals(const ExperimentSpec &spec, const SweepRow &row,
                     const std::vector<double> &history)
{
  std::filesystem::create_directories(spec.residual_dir);
  std::ostringstream name;
  name << "residuals_" << row.family << "_k" << format_number(row.k) << "_b"
       << format_number(row.beta) << "_r" << row.realization << ".csv";
  std::ofstream out(std::filesystem::path(spec.residual_dir) / name.str());
  out << "iteration,relres\n";
  for (std::size_t m = 0; m < history.size(); ++m)
    out << m << ',' << format_number(history[m]) << '\n';
}

SweepRow solve_case(const ExperimentSpec &spec, const KContext &ctx, std::size_t k_index,
                    std::size_t beta_index, int realization)
{
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.family = std::string(to_string(spec.family));
  row.k = spec.ks[k_index];
  row.beta = spec.betas[beta_index];
  row.realization = realization;
  row.n_dof = ctx.mesh->num_nodes();
  try
  {
    const ProblemInstance inst = make_case_instance(spec, k_index, beta_index, realization, ctx.mesh);
    const Index grid = family_grid(spec.family);
    if (spec.family == Family::random_A)
    {
      const MatrixField id(grid, SymMatrix2::identity());
      row.diff_linf = diff_norm_linf(inst.A, id);
      row.diff_l4 = diff_norm_lq(inst.A, id, 4.0);
    }
    else
    {
      const ScalarField one(grid, 1.0);
      row.diff_linf = diff_norm_linf(inst.n, one);
      row.diff_l4 = diff_norm_lq(inst.n, one, 4.0);
    }
    const ComplexSparseMatrix a2 = assemble_system(inst);
    const CVector f = assemble_planewave_rhs(inst);
    const GmresReport report = solve_preconditioned(*ctx.a1, a2, f, gmres_options(spec, ctx));
    row.iterations = report.iterations;
    row.converged = report.converged;
    row.final_relres = report.final_relres();
    if (!spec.residual_dir.empty())
      write_residuals(spec, row, report.residual_history);
  }
  catch (const std::exception &e)
  {
    row.error = e.what();
    row.converged = false;
    row.final_relres = std::nan("");
  }
  row.wall_ms =
    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

bool SweepResult::any_failure() const
{
  for (const SweepRow &r : rows)
    if (!r.error.empty())
      return true;
  return false;
}

ProblemInstance make_case_instance(const ExperimentSpec &spec, std::size_t k_index,
                                   std::size_t beta_index, int realization,
                                   std::shared_ptr<const Mesh2D> mesh)
{
  const double k = spec.ks.at(k_index);
  const double alpha = alpha_of(k, spec.betas.at(beta_index));
  const Index grid = family_grid(spec.family);
  ProblemInstance inst = homogeneous_instance(k, std::move(mesh), grid);
  RngStream rng = RngStream::derive(spec.seed, {static_cast<std::uint64_t>(k_index),
                                                static_cast<std::uint64_t>(beta_index),
                                                static_cast<std::uint64_t>(realization)});
  switch (spec.family)
  {
  case Family::random_n:
    inst.n = sample_random_n(grid, alpha, rng);
    break;
  case Family::random_A:
    inst.A = sample_random_A(grid, alpha, rng);
    break;
  case Family::checker10_n:
  case Family::checker2_n:
    inst.n = checkerboard_n(grid, alpha);
    break;
  }
  inst.validate();
  return inst;
}

SweepResult run_sweep(const ExperimentSpec &spec, const SweepProgress &progress)
{
  SweepResult result;
  const std::size_t per_k = spec.betas.size() * static_cast<std::size_t>(spec.realizations);
  std::mutex progress_mutex;
  for (std::size_t ki = 0; ki < spec.ks.size(); ++ki)
  {
    std::vector<SweepRow> rows(per_k);
    std::optional<KContext> ctx;
    try
    {
      ctx.emplace(build_k_context(spec, spec.ks[ki], result.factorizations));
    }
    catch (const std::exception &e)
    {
      // every case of this k fails the same way
      for (std::size_t c = 0; c < per_k; ++c)
      {
        SweepRow &row = rows[c];
        row.family = std::string(to_string(spec.family));
        row.k = spec.ks[ki];
        row.beta = spec.betas[c / spec.realizations];
        row.realization = static_cast<int>(c % spec.realizations);
        row.final_relres = std::nan("");
        row.error = e.what();
        if (progress)
          progress(row);
      }
      result.rows.insert(result.rows.end(), rows.begin(), rows.end());
      continue;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t c = next++; c < per_k; c = next++)
      {
        rows[c] = solve_case(spec, *ctx, ki, c / spec.realizations,
                             static_cast<int>(c % spec.realizations));
        if (progress)
        {
          std::lock_guard lock(progress_mutex);
          progress(rows[c]);
        }
      }
    };
    const int workers = static_cast<int>(std::min<std::size_t>(spec.jobs, per_k));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
      pool.emplace_back(worker);
    worker();
    for (std::thread &t : pool)
      t.join();
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }
  result.maxima = compute_maxima(result.rows);
  return result;
}

SweepRow run_case(const ExperimentSpec &spec, std::size_t k_index, std::size_t beta_index,
                  int realization)
{
  int factorizations = 0;
  const KContext ctx = build_k_context(spec, spec.ks.at(k_index), factorizations);
  return solve_case(spec, ctx, k_index, beta_index, realization);
}

std::vector<MaxRow> compute_maxima(const std::vector<SweepRow> &rows)
{
  std::vector<MaxRow> out;
  std::map<std::pair<double, double>, std::size_t> where;
  for (const SweepRow &r : rows)
  {
    const auto key = std::make_pair(r.k, r.beta);
    auto it = where.find(key);
    if (it == where.end())
    {
      it = where.emplace(key, out.size()).first;
      out.push_back({r.k, r.beta, 0, true, 0});
    }
    MaxRow &m = out[it->second];
    m.max_iterations = std::max(m.max_iterations, r.iterations);
    m.all_converged = m.all_converged && r.converged && r.error.empty();
    ++m.rows;
  }
  return out;
}

std::string format_number(double v)
{
  if (std::isnan(v))
    return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows)
{
  os << sweep_csv_header << '\n';
  for (const SweepRow &r : rows)
  {
    os << r.family << ',' << format_number(r.k) << ',' << format_number(r.beta) << ','
       << r.realization << ',' << r.n_dof << ',' << format_number(r.diff_linf) << ','
       << format_number(r.diff_l4) << ',' << r.iterations << ','
       << (r.error.empty() ? (r.converged ? "1" : "0") : "error") << ','
       << format_number(r.final_relres) << ',' << format_number(std::round(r.wall_ms * 1000.0) / 1000.0)
       << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream &is)
{
  std::string line;
  if (!std::getline(is, line))
    throw FormatError("sweep CSV: empty input");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != sweep_csv_header)
    throw FormatError("sweep CSV: unexpected header '" + line + "'");

  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(is, line))
  {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      f.push_back(cell);
    if (f.size() != 11)
      throw FormatError("sweep CSV line " + std::to_string(lineno) + ": expected 11 fields");
    try
    {
      SweepRow r;
      r.family = f[0];
      r.k = std::stod(f[1]);
      r.beta = std::stod(f[2]);
      r.realization = std::stoi(f[3]);
      r.n_dof = std::stoi(f[4]);
      r.diff_linf = std::stod(f[5]);
      r.diff_l4 = std::stod(f[6]);
      r.iterations = std::stoi(f[7]);
      if (f[8] == "error")
        r.error = "error";
      else if (f[8] == "1" || f[8] == "0")
        r.converged = f[8] == "1";
      else
        throw FormatError("bad converged flag");
      r.final_relres = std::stod(f[9]);
      r.wall_ms = std::stod(f[10]);
      rows.push_back(std::move(r));
    }
    catch (const std::exception &e)
    {
      throw FormatError("sweep CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace nbpc
