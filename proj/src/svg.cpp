#include "leocap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace leocap {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Scale {
  double lo, hi;
  bool log;
  double pix_lo, pix_hi;

  double map(double v) const {
    double t;
    if (log)
      t = (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    else
      t = (v - lo) / (hi - lo);
    return pix_lo + t * (pix_hi - pix_lo);
  }
};

std::vector<double> ticks_for(double lo, double hi, bool log) {
  std::vector<double> out;
  if (log) {
    double d0 = std::floor(std::log10(lo));
    double d1 = std::ceil(std::log10(hi));
    for (double d = d0; d <= d1; d += 1.0) {
      double v = std::pow(10.0, d);
      if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
    }
    if (out.empty()) out = {lo, hi};
    return out;
  }
  double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  if (span / step > 8.0) step *= 2.0;
  if (span / step > 8.0) step *= 2.5;
  for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
    out.push_back(v);
  return out;
}

void render_panel(std::ostringstream& out, const LineChart& chart, double ox, double oy,
                  double width, double height) {
  const double ml = 64, mr = 16, mt = 34, mb = 46;
  double x0 = ox + ml, x1 = ox + width - mr;
  double y0 = oy + height - mb, y1 = oy + mt;

  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const ChartSeries& s : chart.series) {
    for (auto [x, y] : s.points) {
      if (chart.x.log_scale && !(x > 0.0)) continue;
      if (chart.y.log_scale && !(y > 0.0)) continue;
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (xlo > xhi) { xlo = 0.0; xhi = 1.0; }
  if (ylo > yhi) { ylo = 0.0; yhi = 1.0; }
  if (xlo == xhi) { xlo -= 0.5; xhi += 0.5; }
  if (ylo == yhi) { ylo = chart.y.log_scale ? ylo / 2.0 : ylo - 0.5; yhi = yhi + 0.5; }
  if (!chart.y.log_scale && ylo > 0.0) ylo = 0.0;

  Scale xs{xlo, xhi, chart.x.log_scale, x0, x1};
  Scale ys{ylo, yhi, chart.y.log_scale, y0, y1};

  out << "<rect x='" << num(ox) << "' y='" << num(oy) << "' width='" << num(width)
      << "' height='" << num(height) << "' fill='white' stroke='none'/>\n";
  out << "<text x='" << num(ox + width / 2) << "' y='" << num(oy + 18)
      << "' text-anchor='middle' font-size='14' font-family='sans-serif'>" << chart.title
      << "</text>\n";

  for (double v : ticks_for(xlo, xhi, chart.x.log_scale)) {
    double px = xs.map(v);
    out << "<line x1='" << num(px) << "' y1='" << num(y0) << "' x2='" << num(px) << "' y2='"
        << num(y1) << "' stroke='#dddddd'/>\n";
    out << "<text x='" << num(px) << "' y='" << num(y0 + 16)
        << "' text-anchor='middle' font-size='10' font-family='sans-serif'>" << tick_label(v)
        << "</text>\n";
  }
  for (double v : ticks_for(ylo, yhi, chart.y.log_scale)) {
    double py = ys.map(v);
    out << "<line x1='" << num(x0) << "' y1='" << num(py) << "' x2='" << num(x1) << "' y2='"
        << num(py) << "' stroke='#dddddd'/>\n";
    out << "<text x='" << num(x0 - 6) << "' y='" << num(py + 3)
        << "' text-anchor='end' font-size='10' font-family='sans-serif'>" << tick_label(v)
        << "</text>\n";
  }
  out << "<line x1='" << num(x0) << "' y1='" << num(y0) << "' x2='" << num(x1) << "' y2='"
      << num(y0) << "' stroke='black'/>\n";
  out << "<line x1='" << num(x0) << "' y1='" << num(y0) << "' x2='" << num(x0) << "' y2='"
      << num(y1) << "' stroke='black'/>\n";
  out << "<text x='" << num((x0 + x1) / 2) << "' y='" << num(y0 + 34)
      << "' text-anchor='middle' font-size='12' font-family='sans-serif'>" << chart.x.label
      << "</text>\n";
  out << "<text x='" << num(ox + 14) << "' y='" << num((y0 + y1) / 2)
      << "' text-anchor='middle' font-size='12' font-family='sans-serif' transform='rotate(-90 "
      << num(ox + 14) << ' ' << num((y0 + y1) / 2) << ")'>" << chart.y.label << "</text>\n";

  double legend_y = y1 + 4;
  for (const ChartSeries& s : chart.series) {
    std::ostringstream poly;
    bool has_points = false;
    for (auto [x, y] : s.points) {
      if (chart.x.log_scale && !(x > 0.0)) continue;
      if (chart.y.log_scale && !(y > 0.0)) continue;
      poly << num(xs.map(x)) << ',' << num(ys.map(y)) << ' ';
      has_points = true;
    }
    if (has_points)
      out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.6' points='"
          << poly.str() << "'/>\n";
    out << "<line x1='" << num(x0 + 8) << "' y1='" << num(legend_y) << "' x2='"
        << num(x0 + 28) << "' y2='" << num(legend_y) << "' stroke='" << s.color
        << "' stroke-width='1.6'/>\n";
    out << "<text x='" << num(x0 + 32) << "' y='" << num(legend_y + 3)
        << "' font-size='10' font-family='sans-serif'>" << s.label << "</text>\n";
    legend_y += 13;
  }
}

}  // namespace

std::string render_svg(const std::vector<LineChart>& charts, int panel_width,
                       int panel_height) {
  std::ostringstream out;
  int total_width = panel_width * std::max<std::size_t>(charts.size(), 1);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << total_width << "' height='"
      << panel_height << "' viewBox='0 0 " << total_width << ' ' << panel_height << "'>\n";
  for (std::size_t i = 0; i < charts.size(); ++i)
    render_panel(out, charts[i], static_cast<double>(panel_width) * i, 0.0,
                 panel_width, panel_height);
  out << "</svg>\n";
  return out.str();
}

}  // namespace leocap
