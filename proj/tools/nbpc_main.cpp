// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "nbpc/config.hpp"
#include "nbpc/errors.hpp"
#include "nbpc/harness.hpp"
#include "nbpc/plot.hpp"
#include "nbpc/sharpness.hpp"
#include "nbpc/verify.hpp"

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_config = 2;

int run_sweep_command(const std::string &config_path,
                      const std::map<std::string, std::string> &overrides, bool quiet)
{
  nbpc::ExperimentSpec spec;
  if (!config_path.empty())
    spec = nbpc::parse_config_file(config_path);
  for (const auto &[key, value] : overrides)
    nbpc::apply_setting(spec, key, value);
  spec.finalize();

  std::ofstream file;
  if (!spec.out.empty())
  {
    file.open(spec.out);
    if (!file)
      throw nbpc::ConfigError("out", "cannot open '" + spec.out + "' for writing");
  }
  std::ostream &out = spec.out.empty() ? std::cout : file;

  const nbpc::SweepResult result = nbpc::run_sweep(spec, [&](const nbpc::SweepRow &row) {
    if (quiet)
      return;
    std::cerr << "k=" << row.k << " beta=" << row.beta << " r=" << row.realization
              << " N=" << row.n_dof << " iterations=" << row.iterations
              << (row.error.empty() ? (row.converged ? "" : " (not converged)")
                                    : " ERROR: " + row.error)
              << '\n';
  });
  nbpc::write_sweep_csv(out, result.rows);

  if (!quiet)
  {
    std::cerr << "\nmaximum iterations per (k, beta):\n";
    for (const nbpc::MaxRow &m : result.maxima)
      std::cerr << "  k=" << m.k << " beta=" << m.beta << " max=" << m.max_iterations
                << (m.all_converged ? "" : " (some not converged)") << '\n';
    std::cerr << "factorizations of A1: " << result.factorizations << '\n';
  }
  return result.any_failure() ? exit_failure : exit_ok;
}

int run_sharpness_command(const std::string &ks, int m, int l, double r1, double r2,
                          const std::string &out_path)
{
  nbpc::SharpnessConfig cfg;
  cfg.ks = nbpc::parse_list("k", ks);
  cfg.m = m;
  cfg.l = l;
  cfg.R1 = r1;
  cfg.R2 = r2;
  cfg.validate();
  const auto rows = nbpc::sharpness_experiment(cfg);

  std::ofstream file;
  if (!out_path.empty())
  {
    file.open(out_path);
    if (!file)
      throw nbpc::ConfigError("out", "cannot open '" + out_path + "' for writing");
  }
  std::ostream &out = out_path.empty() ? std::cout : file;
  out << "k,c,diff_l2,diff_h1k,u2_l2,u2_h1k,ratio_h1k,ratio_l2,fd_residual,fd_order\n";
  for (const auto &r : rows)
  {
    const nbpc::ResidualCheck fd = nbpc::sharpness_residual_check(cfg, r.k);
    out << nbpc::format_number(r.k) << ',' << nbpc::format_number(r.c) << ','
        << nbpc::format_number(r.diff_l2) << ',' << nbpc::format_number(r.diff_h1k) << ','
        << nbpc::format_number(r.u2_l2) << ',' << nbpc::format_number(r.u2_h1k) << ','
        << nbpc::format_number(r.ratio_h1k) << ',' << nbpc::format_number(r.ratio_l2) << ','
        << nbpc::format_number(fd.fine_residual) << ',' << nbpc::format_number(fd.observed_order)
        << '\n';
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Nearby preconditioning experiments for the heterogeneous Helmholtz equation"};
  app.require_subcommand(1);

  // sweep
  auto *sweep = app.add_subcommand("sweep", "Run a (k, beta) sweep and write CSV rows");
  std::string config_path;
  std::map<std::string, std::string> overrides;
  bool quiet = false;
  sweep->add_option("--config", config_path, "key = value configuration file");
  const std::pair<const char *, const char *> sweep_flags[] = {
    {"--family", "family"},   {"--k", "k"},           {"--beta", "beta"},
    {"--realizations", "realizations"},               {"--seed", "seed"},
    {"--tol", "tol"},         {"--max-iter", "max_iter"},
    {"--side", "side"},       {"--norm", "norm"},     {"--restart", "restart"},
    {"--out", "out"},         {"--lu", "lu"},         {"--jobs", "jobs"},
    {"--gamma", "gamma"},     {"--mesh-constant", "mesh_constant"},
    {"--max-cells", "max_cells"},                     {"--residual-dir", "residual_dir"}};
  for (const auto &[flag, key] : sweep_flags)
  {
    const std::string k = key;
    sweep->add_option_function<std::string>(
      flag, [&overrides, k](const std::string &v) { overrides[k] = v; },
      std::string("overrides config key '") + key + "'");
  }
  sweep->add_flag("--quiet,-q", quiet, "no progress on stderr");

  // plot
  auto *plot = app.add_subcommand("plot", "Render max iterations vs k from a sweep CSV as SVG");
  std::string plot_in, plot_out = "iterations.svg";
  plot->add_option("csv", plot_in, "sweep CSV")->required();
  plot->add_option("--out", plot_out, "output SVG path");

  // verify
  auto *verify = app.add_subcommand("verify", "Run the analysis property checks");

  // sharpness
  auto *sharp = app.add_subcommand("sharpness", "Radial sharpness construction table");
  std::string sharp_k = "10,20,40,80", sharp_out;
  int sharp_m = 7, sharp_l = 2;
  double sharp_r1 = 0.5, sharp_r2 = 1.0;
  sharp->add_option("--k", sharp_k, "wavenumbers");
  sharp->add_option("--m", sharp_m, "vanishing order of chi");
  sharp->add_option("--l", sharp_l, "vanishing order of chi~");
  sharp->add_option("--R1", sharp_r1, "inner radius");
  sharp->add_option("--R2", sharp_r2, "outer radius");
  sharp->add_option("--out", sharp_out, "output CSV path (default stdout)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return exit_config;
  }

  try
  {
    if (*sweep)
      return run_sweep_command(config_path, overrides, quiet);
    if (*plot)
    {
      nbpc::emit_plot(plot_in, plot_out);
      return exit_ok;
    }
    if (*verify)
      return nbpc::run_verify(std::cout) == 0 ? exit_ok : exit_failure;
    if (*sharp)
      return run_sharpness_command(sharp_k, sharp_m, sharp_l, sharp_r1, sharp_r2, sharp_out);
  }
  catch (const nbpc::ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_ok;
}
