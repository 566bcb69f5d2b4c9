// Copyright 2026 The nbpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nbpc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "nbpc/errors.hpp"

namespace nbpc
{

namespace
{

constexpr double width = 640.0, height = 440.0;
constexpr double left = 70.0, right = 140.0, top = 40.0, bottom = 60.0;

const char *palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                         "#e377c2", "#bcbd22", "#17becf", "#393b79", "#637939"};

std::string num(double v)
{
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string escape(const std::string &s)
{
  std::string out;
  for (const char c : s)
  {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string render_iteration_plot(const std::vector<SweepRow> &rows, const std::string &title)
{
  if (rows.empty())
    throw FormatError("plot: no rows");
  const std::vector<MaxRow> maxima = compute_maxima(rows);

  std::map<double, std::vector<MaxRow>> series;
  double kmin = maxima.front().k, kmax = kmin;
  int imax = 1;
  for (const MaxRow &m : maxima)
  {
    series[m.beta].push_back(m);
    kmin = std::min(kmin, m.k);
    kmax = std::max(kmax, m.k);
    imax = std::max(imax, m.max_iterations);
  }
  if (kmax == kmin)
  {
    kmin -= 1.0;
    kmax += 1.0;
  }
  const double ymax = std::ceil(imax * 1.1);
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double k) { return left + (k - kmin) / (kmax - kmin) * pw; };
  auto sy = [&](double it) { return top + ph - it / ymax * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  // axes and ticks
  os << "<g stroke=\"black\" fill=\"none\">\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
     << top + ph << "\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
     << "\"/>\n";
  os << "</g>\n";
  std::vector<double> ks;
  for (const MaxRow &m : maxima)
    ks.push_back(m.k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (const double k : ks)
    os << "<text x=\"" << num(sx(k)) << "\" y=\"" << top + ph + 18
       << "\" text-anchor=\"middle\">" << num(k) << "</text>\n";
  for (int t = 0; t <= 5; ++t)
  {
    const double v = std::round(ymax * t / 5.0);
    os << "<text x=\"" << left - 8 << "\" y=\"" << num(sy(v) + 4) << "\" text-anchor=\"end\">"
       << num(v) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15
     << "\" text-anchor=\"middle\">k</text>\n";
  os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << top + ph / 2 << ")\">max GMRES iterations</text>\n";

  int s = 0;
  for (auto &[beta, pts] : series)
  {
    std::sort(pts.begin(), pts.end(), [](const MaxRow &a, const MaxRow &b) { return a.k < b.k; });
    const char *colour = palette[s % std::size(palette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << (i ? " " : "") << num(sx(pts[i].k)) << ',' << num(sy(pts[i].max_iterations));
    os << "\"/>\n";
    for (const MaxRow &p : pts)
      os << "<circle cx=\"" << num(sx(p.k)) << "\" cy=\"" << num(sy(p.max_iterations))
         << "\" r=\"3.5\" fill=\"" << (p.all_converged ? colour : "#999999") << "\"/>\n";
    const double ly = top + 14.0 * s;
    os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 35
       << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">beta = " << num(beta)
       << "</text>\n";
    ++s;
  }
  os << "<text x=\"" << left + pw + 15 << "\" y=\"" << top + 14.0 * s + 10
     << "\" fill=\"#999999\">grey: not converged</text>\n";
  os << "</svg>\n";
  return os.str();
}

void emit_plot(const std::string &csv_path, const std::string &out_path)
{
  std::ifstream in(csv_path);
  if (!in)
    throw FormatError("plot: cannot open '" + csv_path + "'");
  const std::vector<SweepRow> rows = read_sweep_csv(in);
  if (rows.empty())
    throw FormatError("plot: '" + csv_path + "' has no data rows");
  const std::string svg = render_iteration_plot(rows, rows.front().family);
  std::ofstream out(out_path);
  if (!out)
    throw Error("plot: cannot write '" + out_path + "'");
  out << svg;
}

}  // namespace nbpc
