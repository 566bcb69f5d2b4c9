// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_HARNESS_HPP
#define NBPC_HARNESS_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbpc/assembly.hpp"
#include "nbpc/config.hpp"

namespace nbpc
{

inline constexpr const char *sweep_csv_header =
  "family,k,beta,realization,n_dof,diff_linf,diff_l4,iterations,converged,final_relres,wall_ms";

struct SweepRow
{
  std::string family;
  double k = 0.0;
  double beta = 0.0;
  int realization = 0;
  Index n_dof = 0;
  double diff_linf = 0.0;
  double diff_l4 = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_relres = 0.0;
  double wall_ms = 0.0;
  /// Non-empty when the case threw; written as converged = "error".
  std::string error;
};

/// Maximum iteration count over the realizations of one (k, beta).
struct MaxRow
{
  double k = 0.0;
  double beta = 0.0;
  int max_iterations = 0;
  bool all_converged = true;
  int rows = 0;
};

struct SweepResult
{
  std::vector<SweepRow> rows;  ///< k-major, then beta, then realization
  std::vector<MaxRow> maxima;
  int factorizations = 0;      ///< factorizations of A1; one per k
  bool any_failure() const;
};

/// Second medium of case (k index, beta index, realization) on `mesh`.
/// Random draws use the stream derived from (seed, k index, beta index, realization).
ProblemInstance make_case_instance(const ExperimentSpec &spec, std::size_t k_index,
                                   std::size_t beta_index, int realization,
                                   std::shared_ptr<const Mesh2D> mesh);

using SweepProgress = std::function<void(const SweepRow &)>;

/// Runs every case of `spec` (which must be finalized). Cases of one k share
/// the factors of A1 and run on spec.jobs workers.
SweepResult run_sweep(const ExperimentSpec &spec, const SweepProgress &progress = {});

/// One case, built and solved from scratch (own mesh and factorization).
SweepRow run_case(const ExperimentSpec &spec, std::size_t k_index, std::size_t beta_index,
                  int realization);

std::vector<MaxRow> compute_maxima(const std::vector<SweepRow> &rows);

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);
/// Throws FormatError on a bad header or malformed line.
std::vector<SweepRow> read_sweep_csv(std::istream &is);

/// Format of a CSV number: shortest text that round-trips.
std::string format_number(double v);

}  // namespace nbpc

#endif  // NBPC_HARNESS_HPP
