// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/rng.hpp"

namespace nbpc
{

std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
{
  std::uint64_t state = mix64(seed);
  for (const std::uint64_t key : keys)
    state = mix64(state ^ mix64(key + 0x632be59bd9b4e019ULL));
  return RngStream(state);
}

}  // namespace nbpc
