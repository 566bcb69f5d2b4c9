// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_ERRORS_HPP
#define NBPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nbpc
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
public:
  using Error::Error;
};

/// Two coefficient fields live on different cell grids.
class GridMismatch : public Error
{
public:
  using Error::Error;
};

/// Coefficient grid does not divide the mesh resolution.
class AlignmentError : public Error
{
public:
  using Error::Error;
};

/// The requested resolution exceeds the configured cap.
class ResolutionOverflow : public Error
{
public:
  using Error::Error;
};

class SingularMatrix : public Error
{
public:
  using Error::Error;
};

class NotPositiveDefinite : public Error
{
public:
  using Error::Error;
};

/// A matrix entry lies outside the declared band.
class BandwidthError : public Error
{
public:
  using Error::Error;
};

/// NaN or Inf appeared during an iteration.
class NonFiniteError : public Error
{
public:
  using Error::Error;
};

/// An iterative eigen/quadrature procedure failed its convergence test.
class ConvergenceError : public Error
{
public:
  using Error::Error;
};

/// Malformed input file (CSV, field file, ...).
class FormatError : public Error
{
public:
  using Error::Error;
};

/// Invalid experiment configuration. `key()` names the offending setting.
class ConfigError : public Error
{
public:
  ConfigError(std::string key, const std::string &what)
    : Error(key + ": " + what), key_(std::move(key))
  {
  }

  const std::string &key() const noexcept { return key_; }

private:
  std::string key_;
};

}  // namespace nbpc

#endif  // NBPC_ERRORS_HPP
