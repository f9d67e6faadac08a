// Copyright 2026 The rfflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rfflab/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rfflab/serialize.h"

namespace rfflab {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;

  double Map(double v) const { return log ? std::log10(v) : v; }
  bool Usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }

  std::vector<double> Ticks() const {
    std::vector<double> ticks;
    if (log) {
      const int a = static_cast<int>(std::ceil(lo - 1e-9));
      const int b = static_cast<int>(std::floor(hi + 1e-9));
      const int step = std::max(1, (b - a) / 6 + 1);
      for (int e = a; e <= b; e += step) ticks.push_back(std::pow(10.0, e));
      return ticks;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
      ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
  }
};

void Fit(Axis& axis, const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values)
    if (axis.Usable(v)) {
      lo = std::min(lo, axis.Map(v));
      hi = std::max(hi, axis.Map(v));
    }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    const double pad = std::max(std::abs(lo) * 0.05, 0.5);
    lo -= pad;
    hi += pad;
  }
  axis.lo = lo;
  axis.hi = hi;
}

}  // namespace

std::string RenderSvg(const LinePlot& plot) {
  const double left = 70, right = 150, top = 40, bottom = 50;
  const double w = plot.width, h = plot.height;
  const double pw = w - left - right, ph = h - top - bottom;

  Axis ax{plot.log_x}, ay{plot.log_y};
  std::vector<double> xs, ys;
  for (const Series& s : plot.series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  Fit(ax, xs);
  Fit(ay, ys);
  auto px = [&](double v) { return left + (ax.Map(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double v) { return top + ph - (ay.Map(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(plot.width) +
         "\" height=\"" + std::to_string(plot.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Num(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         Escape(plot.title) + "</text>\n";
  svg += "<rect x=\"" + Num(left) + "\" y=\"" + Num(top) + "\" width=\"" + Num(pw) + "\" height=\"" +
         Num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.Ticks()) {
    const double x = px(t);
    svg += "<line x1=\"" + Num(x) + "\" y1=\"" + Num(top) + "\" x2=\"" + Num(x) + "\" y2=\"" +
           Num(top + ph) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + Num(x) + "\" y=\"" + Num(top + ph + 15) + "\" text-anchor=\"middle\">" +
           Tick(t) + "</text>\n";
  }
  for (double t : ay.Ticks()) {
    const double y = py(t);
    svg += "<line x1=\"" + Num(left) + "\" y1=\"" + Num(y) + "\" x2=\"" + Num(left + pw) + "\" y2=\"" +
           Num(y) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + Num(left - 6) + "\" y=\"" + Num(y + 4) + "\" text-anchor=\"end\">" + Tick(t) +
           "</text>\n";
  }
  svg += "<text x=\"" + Num(left + pw / 2) + "\" y=\"" + Num(h - 12) + "\" text-anchor=\"middle\">" +
         Escape(plot.x_label) + "</text>\n";
  svg += "<text transform=\"translate(16," + Num(top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + Escape(plot.y_label) + "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const Series& s = plot.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string points;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!ax.Usable(s.x[i]) || !ay.Usable(s.y[i])) continue;
      if (!points.empty()) points += ' ';
      points += Num(px(s.x[i])) + "," + Num(py(s.y[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
           points + "\"/>\n";
    const double ly = top + 12 + 16.0 * static_cast<double>(k);
    svg += "<line x1=\"" + Num(left + pw + 10) + "\" y1=\"" + Num(ly) + "\" x2=\"" + Num(left + pw + 30) +
           "\" y2=\"" + Num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + Num(left + pw + 35) + "\" y=\"" + Num(ly + 4) + "\">" + Escape(s.label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void WriteSvg(const std::filesystem::path& path, const LinePlot& plot) {
  WriteTextFile(path, RenderSvg(plot));
}

}  // namespace rfflab
