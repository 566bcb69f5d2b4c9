// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <memory>

#include "nbpc/analysis.hpp"
#include "nbpc/assembly.hpp"
#include "nbpc/krylov.hpp"
#include "nbpc/lu_factor.hpp"

namespace
{

nbpc::ProblemInstance instance_for(double k)
{
  const auto mesh = std::make_shared<const nbpc::Mesh2D>(nbpc::choose_resolution(k, 10));
  return nbpc::homogeneous_instance(k, mesh, 10);
}

nbpc::LuBackend backend_of(int64_t code)
{
  return code == 0 ? nbpc::LuBackend::banded : nbpc::LuBackend::sparse;
}

void BM_Assemble(benchmark::State &state)
{
  const nbpc::ProblemInstance inst = instance_for(static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(nbpc::assemble_system(inst));
  state.counters["N"] = inst.mesh->num_nodes();
}
BENCHMARK(BM_Assemble)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State &state)
{
  const nbpc::ProblemInstance inst = instance_for(static_cast<double>(state.range(0)));
  const nbpc::ComplexSparseMatrix a = nbpc::assemble_system(inst);
  for (auto _ : state)
    benchmark::DoNotOptimize(nbpc::LuFactor(a, backend_of(state.range(1))));
  state.counters["N"] = a.dim();
}
BENCHMARK(BM_Factorize)
  ->ArgsProduct({{10, 20}, {0, 1}})
  ->ArgNames({"k", "sparse"})
  ->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State &state)
{
  const nbpc::ProblemInstance inst = instance_for(static_cast<double>(state.range(0)));
  const nbpc::ComplexSparseMatrix a = nbpc::assemble_system(inst);
  const nbpc::LuFactor lu(a, backend_of(state.range(1)));
  const nbpc::CVector f = nbpc::assemble_planewave_rhs(inst);
  for (auto _ : state)
    benchmark::DoNotOptimize(lu.solve(f));
  state.counters["N"] = a.dim();
}
BENCHMARK(BM_Solve)
  ->ArgsProduct({{10, 20}, {0, 1}})
  ->ArgNames({"k", "sparse"})
  ->Unit(benchmark::kMillisecond);

void BM_NearbyGmres(benchmark::State &state)
{
  const double k = static_cast<double>(state.range(0));
  const nbpc::ProblemInstance one = instance_for(k);
  nbpc::ProblemInstance two = one;
  two.n = nbpc::checkerboard_n(10, nbpc::alpha_of(k, 0.5));
  const nbpc::LuFactor lu(nbpc::assemble_system(one));
  const nbpc::ComplexSparseMatrix a2 = nbpc::assemble_system(two);
  const nbpc::ComplexSparseMatrix dk = nbpc::assemble_Dk(*one.mesh, k);
  const nbpc::CVector f = nbpc::assemble_planewave_rhs(two);
  nbpc::GmresOptions opts;
  if (state.range(1) == 1)
    opts.inner = nbpc::InnerProductSpec::weighted(dk);
  int iterations = 0;
  for (auto _ : state)
    iterations = nbpc::solve_preconditioned(lu, a2, f, opts).iterations;
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_NearbyGmres)
  ->ArgsProduct({{10, 20}, {0, 1}})
  ->ArgNames({"k", "weighted"})
  ->Unit(benchmark::kMillisecond);

void BM_SpdSolve(benchmark::State &state)
{
  const double k = static_cast<double>(state.range(0));
  const nbpc::ProblemInstance inst = instance_for(k);
  const nbpc::SpdFactor f(nbpc::assemble_Dk(*inst.mesh, k));
  const nbpc::CVector b(f.dim(), 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(f.solve(b));
}
BENCHMARK(BM_SpdSolve)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
