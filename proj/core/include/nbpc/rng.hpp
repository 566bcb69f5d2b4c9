// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_RNG_HPP
#define NBPC_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nbpc
{

//
// Portable random stream. std::mt19937_64 has a fully specified output
// sequence; the conversion to doubles is done here rather than through
// std::uniform_real_distribution, whose algorithm is implementation-defined.
//
class RngStream
{
public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream keyed by (seed, keys...). The same keys always give
  /// the same stream, whatever order streams are created in.
  static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return counter_; }

  std::uint64_t next_u64()
  {
    ++counter_;
    return engine_();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 engine_;
};

/// splitmix64 finaliser, used to mix stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace nbpc

#endif  // NBPC_RNG_HPP
