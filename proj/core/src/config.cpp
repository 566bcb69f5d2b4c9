// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "nbpc/errors.hpp"

namespace nbpc
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text)
{
  const std::string buf(trim(text));
  if (buf.empty())
    throw ConfigError(std::string(key), "empty value");
  std::size_t used = 0;
  double v = 0.0;
  try
  {
    v = std::stod(buf, &used);
  }
  catch (const std::exception &)
  {
    throw ConfigError(std::string(key), "not a number: '" + buf + "'");
  }
  if (used != buf.size() || !std::isfinite(v))
    throw ConfigError(std::string(key), "not a number: '" + buf + "'");
  return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text)
{
  const std::string_view t = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(std::string(key), "not an integer: '" + std::string(t) + "'");
  return v;
}

template <typename Fn>
auto rethrow_as_config(std::string_view key, Fn &&fn)
{
  try
  {
    return fn();
  }
  catch (const ConfigError &)
  {
    throw;
  }
  catch (const Error &e)
  {
    throw ConfigError(std::string(key), e.what());
  }
}

}  // namespace

Family parse_family(std::string_view name)
{
  if (name == "random_n")
    return Family::random_n;
  if (name == "random_A")
    return Family::random_A;
  if (name == "checker10_n")
    return Family::checker10_n;
  if (name == "checker2_n")
    return Family::checker2_n;
  throw ConfigError("family", "unknown family '" + std::string(name) +
                                "' (random_n, random_A, checker10_n, checker2_n)");
}

std::string_view to_string(Family family)
{
  switch (family)
  {
  case Family::random_n:
    return "random_n";
  case Family::random_A:
    return "random_A";
  case Family::checker10_n:
    return "checker10_n";
  case Family::checker2_n:
    return "checker2_n";
  }
  return "?";
}

Index family_grid(Family family) { return family == Family::checker2_n ? 2 : 10; }

bool family_is_random(Family family)
{
  return family == Family::random_n || family == Family::random_A;
}

std::vector<double> parse_list(std::string_view key, std::string_view text)
{
  std::vector<double> out;
  std::string_view rest = text;
  while (true)
  {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty())
      throw ConfigError(std::string(key), "empty list item");
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
    {
      out.push_back(parse_double(key, item));
    }
    else
    {
      const std::string_view tail = item.substr(colon + 1);
      const auto colon2 = tail.find(':');
      if (colon2 == std::string_view::npos)
        throw ConfigError(std::string(key), "range needs lo:hi:step");
      const double lo = parse_double(key, item.substr(0, colon));
      const double hi = parse_double(key, tail.substr(0, colon2));
      const double step = parse_double(key, tail.substr(colon2 + 1));
      if (!(step > 0.0) || hi < lo)
        throw ConfigError(std::string(key), "range needs step > 0 and lo <= hi");
      const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      if (count > 100000)
        throw ConfigError(std::string(key), "range too long");
      for (long i = 0; i <= count; ++i)
      {
        // snap to 12 significant digits so 0:1:0.1 yields 0.3, not 0.30000000000000004
        const double v = lo + static_cast<double>(i) * step;
        out.push_back(std::round(v * 1e12) / 1e12);
      }
    }
    if (comma == std::string_view::npos)
      break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

void apply_setting(ExperimentSpec &spec, std::string_view key, std::string_view value)
{
  const std::string_view v = trim(value);
  if (key == "family")
    spec.family = parse_family(v);
  else if (key == "k")
    spec.ks = parse_list(key, v);
  else if (key == "beta")
    spec.betas = parse_list(key, v);
  else if (key == "realizations")
    spec.realizations = parse_int<int>(key, v);
  else if (key == "seed")
    spec.seed = parse_int<std::uint64_t>(key, v);
  else if (key == "tol")
    spec.tol = parse_double(key, v);
  else if (key == "max_iter")
    spec.max_iter = parse_int<int>(key, v);
  else if (key == "restart")
  {
    if (v == "none" || v == "0")
      spec.restart.reset();
    else
      spec.restart = parse_int<int>(key, v);
  }
  else if (key == "side")
    spec.side = rethrow_as_config(key, [&] { return parse_side(v); });
  else if (key == "norm")
    spec.norm = rethrow_as_config(key, [&] { return parse_norm_mode(v); });
  else if (key == "gamma")
    spec.rule.exponent = parse_double(key, v);
  else if (key == "mesh_constant")
    spec.rule.constant = parse_double(key, v);
  else if (key == "max_cells")
    spec.max_cells = parse_int<Index>(key, v);
  else if (key == "lu")
    spec.lu = rethrow_as_config(key, [&] { return parse_lu_backend(v); });
  else if (key == "jobs")
    spec.jobs = parse_int<int>(key, v);
  else if (key == "out")
    spec.out = std::string(v);
  else if (key == "residual_dir")
    spec.residual_dir = std::string(v);
  else
    throw ConfigError(std::string(key), "unknown key");
}

void ExperimentSpec::finalize()
{
  if (!family_is_random(family))
    realizations = 1;
  if (ks.empty())
    throw ConfigError("k", "empty list");
  for (const double k : ks)
    if (!(k >= 5.0))
      throw ConfigError("k", "wavenumbers must be >= 5");
  if (betas.empty())
    throw ConfigError("beta", "empty list");
  for (const double b : betas)
    if (!(b >= 0.0 && b <= 1.0))
      throw ConfigError("beta", "values must lie in [0, 1]");
  if (realizations < 1)
    throw ConfigError("realizations", "must be >= 1");
  if (!(tol > 0.0 && tol < 1.0))
    throw ConfigError("tol", "must lie in (0, 1)");
  if (max_iter < 1)
    throw ConfigError("max_iter", "must be >= 1");
  if (restart && *restart < 1)
    throw ConfigError("restart", "must be >= 1");
  if (!(rule.exponent > 0.0))
    throw ConfigError("gamma", "must be positive");
  if (!(rule.constant > 0.0))
    throw ConfigError("mesh_constant", "must be positive");
  if (max_cells < 1)
    throw ConfigError("max_cells", "must be >= 1");
  if (jobs < 1)
    throw ConfigError("jobs", "must be >= 1");
}

ExperimentSpec parse_config(std::istream &is)
{
  ExperimentSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line))
  {
    ++lineno;
    std::string_view s = line;
    s = trim(s.substr(0, s.find('#')));
    if (s.empty())
      continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    apply_setting(spec, trim(s.substr(0, eq)), s.substr(eq + 1));
  }
  spec.finalize();
  return spec;
}

ExperimentSpec parse_config_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace nbpc
