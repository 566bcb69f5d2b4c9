// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_VERIFY_HPP
#define NBPC_VERIFY_HPP

#include <iosfwd>

namespace nbpc
{

/// Quick property suite of the analysis routines. Prints one
/// "PASS name" / "FAIL name: detail" line per check; returns the failure count.
int run_verify(std::ostream &os);

}  // namespace nbpc

#endif  // NBPC_VERIFY_HPP
