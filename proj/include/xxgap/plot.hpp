#pragma once

#include <span>
#include <string>
#include <vector>

#include "xxgap/experiments.hpp"

namespace xxgap {

// Static SVG figures. Output depends only on the input values.

/// Log-log delta_c against delta for accepted records, with the line delta_c = delta.
std::string scatter_svg(std::span<const ComparisonRecord> records);

/// One box per decade bin of delta: quartile box, median line, mean marker,
/// whiskers and outliers, on a log ratio axis with the ratio = 1 line.
std::string box_svg(std::span<const BoxSummary> bins);

struct SeriesPoint {
  double x = 0.0;
  double y = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct Series {
  std::string label;
  std::vector<SeriesPoint> points;
};

/// Line series with vertical error bars from lo to hi.
std::string scaling_svg(std::span<const Series> series, const std::string& x_label, const std::string& y_label);

}  // namespace xxgap
