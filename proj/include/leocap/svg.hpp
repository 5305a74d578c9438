#pragma once

#include <string>
#include <utility>
#include <vector>

namespace leocap {

struct ChartSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

struct ChartAxis {
  std::string label;
  bool log_scale = false;
};

struct LineChart {
  std::string title;
  ChartAxis x;
  ChartAxis y;
  std::vector<ChartSeries> series;
};

// Renders the charts as side-by-side panels of one self-contained SVG
// document. Presentation only; nothing here feeds back into CSV output.
std::string render_svg(const std::vector<LineChart>& charts, int panel_width = 460,
                       int panel_height = 360);

}  // namespace leocap
