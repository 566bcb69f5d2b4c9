// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NBPC_PLOT_HPP
#define NBPC_PLOT_HPP

#include <string>
#include <vector>

#include "nbpc/harness.hpp"

namespace nbpc
{

/// SVG of maximum iterations against k, one polyline per beta. Points where
/// some realization did not converge are drawn as grey markers.
std::string render_iteration_plot(const std::vector<SweepRow> &rows, const std::string &title);

/// Reads a sweep CSV and writes the SVG. Throws FormatError (and writes
/// nothing) when the CSV is malformed or has no rows.
void emit_plot(const std::string &csv_path, const std::string &out_path);

}  // namespace nbpc

#endif  // NBPC_PLOT_HPP
