#include "xxgap/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "xxgap/errors.hpp"

namespace xxgap {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#c0392b", "#2c6fbb", "#27ae60", "#8e44ad", "#d35400", "#7f8c8d"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Maps a data interval onto a pixel interval, optionally in log10.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double pixel_lo = 0.0;
  double pixel_hi = 1.0;
  bool log = false;

  double operator()(double x) const {
    const double t = log ? (std::log10(x) - lo) / (hi - lo) : (x - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

struct Figure {
  std::string body;
  Axis x{0, 1, kLeft, kWidth - kRight};
  Axis y{0, 1, kHeight - kBottom, kTop};

  void line(double x1, double y1, double x2, double y2, const std::string& style) {
    body += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) + "\" " +
            style + "/>\n";
  }
  void text(double px, double py, const std::string& content, const std::string& anchor, double rotate = 0.0) {
    body += "<text x=\"" + num(px) + "\" y=\"" + num(py) + "\" text-anchor=\"" + anchor + "\"";
    if (rotate != 0.0) body += " transform=\"rotate(" + num(rotate) + " " + num(px) + " " + num(py) + ")\"";
    body += ">" + content + "</text>\n";
  }
  void circle(double px, double py, double r, const std::string& style) {
    body += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) + "\" r=\"" + num(r) + "\" " + style + "/>\n";
  }

  void frame(const std::string& x_label, const std::string& y_label) {
    const std::string stroke = "stroke=\"black\" stroke-width=\"1\"";
    line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom, stroke);
    line(kLeft, kHeight - kBottom, kLeft, kTop, stroke);
    text((kLeft + kWidth - kRight) / 2, kHeight - 10, x_label, "middle");
    text(18, (kTop + kHeight - kBottom) / 2, y_label, "middle", -90);
  }

  // Decade ticks on a log axis, integer-ish ticks on a linear one.
  void ticks_x() {
    for (const auto& [value, label] : tick_values(x)) {
      const double px = x(value);
      line(px, kHeight - kBottom, px, kHeight - kBottom + 5, "stroke=\"black\"");
      text(px, kHeight - kBottom + 20, label, "middle");
    }
  }
  void ticks_y() {
    for (const auto& [value, label] : tick_values(y)) {
      const double py = y(value);
      line(kLeft - 5, py, kLeft, py, "stroke=\"black\"");
      text(kLeft - 8, py + 4, label, "end");
    }
  }

  static std::vector<std::pair<double, std::string>> tick_values(const Axis& a) {
    std::vector<std::pair<double, std::string>> out;
    if (a.log) {
      for (int e = static_cast<int>(std::ceil(a.lo)); e <= static_cast<int>(std::floor(a.hi)); ++e) {
        out.emplace_back(std::pow(10.0, e), "10<tspan dy=\"-6\" font-size=\"9\">" + std::to_string(e) + "</tspan>");
      }
      return out;
    }
    const double span = a.hi - a.lo;
    const double raw = span / 6.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    double step = magnitude;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * magnitude >= raw) {
        step = m * magnitude;
        break;
      }
    }
    for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * span; v += step) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 * span ? 0.0 : v);
      out.emplace_back(v, buf);
    }
    return out;
  }

  std::string finish() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
           body + "</svg>\n";
  }
};

// Decade-aligned log range covering [lo, hi].
std::pair<double, double> log_range(double lo, double hi) {
  double a = std::floor(std::log10(lo));
  double b = std::ceil(std::log10(hi));
  if (a == b) b = a + 1;
  return {a, b};
}

}  // namespace

std::string scatter_svg(std::span<const ComparisonRecord> records) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& r : records) {
    if (r.rejected()) continue;
    lo = std::min({lo, r.delta(), r.delta_c()});
    hi = std::max({hi, r.delta(), r.delta_c()});
  }
  if (!(hi > 0.0)) throw StatisticsError("no accepted records to plot");

  Figure fig;
  const auto [a, b] = log_range(lo, hi);
  fig.x = {a, b, kLeft, kWidth - kRight, true};
  fig.y = {a, b, kHeight - kBottom, kTop, true};
  fig.frame("&#916;", "&#916;<tspan dy=\"4\" font-size=\"9\">c</tspan>");
  fig.ticks_x();
  fig.ticks_y();
  const double p0 = std::pow(10.0, a);
  const double p1 = std::pow(10.0, b);
  fig.line(fig.x(p0), fig.y(p0), fig.x(p1), fig.y(p1), "stroke=\"#c0392b\" stroke-width=\"1.5\"");
  for (const auto& r : records) {
    if (r.rejected()) continue;
    fig.circle(fig.x(r.delta()), fig.y(r.delta_c()), 2.0, "fill=\"#2c6fbb\" fill-opacity=\"0.5\"");
  }
  return fig.finish();
}

std::string box_svg(std::span<const BoxSummary> bins) {
  if (bins.empty()) throw StatisticsError("no decade bins to plot");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& box : bins) {
    lo = std::min(lo, box.whisker_lo);
    hi = std::max(hi, box.whisker_hi);
    for (double v : box.outliers) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  lo = std::min(lo, 1.0);
  hi = std::max(hi, 1.0);

  Figure fig;
  const auto [a, b] = log_range(lo, hi);
  const double slots = static_cast<double>(bins.size());
  fig.x = {-0.5, slots - 0.5, kLeft, kWidth - kRight, false};
  fig.y = {a, b, kHeight - kBottom, kTop, true};
  fig.frame("&#916; bin", "&#916;<tspan dy=\"4\" font-size=\"9\">c</tspan><tspan dy=\"-4\"> / &#916;</tspan>");
  fig.ticks_y();
  fig.line(fig.x(-0.5), fig.y(1.0), fig.x(slots - 0.5), fig.y(1.0), "stroke=\"#c0392b\" stroke-dasharray=\"4 3\"");

  const double half = 0.3 * (fig.x(1.0) - fig.x(0.0));
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const auto& box = bins[k];
    const double cx = fig.x(static_cast<double>(k));
    fig.text(cx, kHeight - kBottom + 20,
             "10<tspan dy=\"-6\" font-size=\"9\">" + std::to_string(box.decade) + "</tspan>", "middle");
    const std::string stroke = "stroke=\"black\" stroke-width=\"1\"";
    fig.line(cx, fig.y(box.whisker_lo), cx, fig.y(box.q1), stroke);
    fig.line(cx, fig.y(box.q3), cx, fig.y(box.whisker_hi), stroke);
    fig.line(cx - half / 2, fig.y(box.whisker_lo), cx + half / 2, fig.y(box.whisker_lo), stroke);
    fig.line(cx - half / 2, fig.y(box.whisker_hi), cx + half / 2, fig.y(box.whisker_hi), stroke);
    const double top = fig.y(box.q3);
    const double bottom = fig.y(box.q1);
    fig.body += "<rect x=\"" + num(cx - half) + "\" y=\"" + num(top) + "\" width=\"" + num(2 * half) +
                "\" height=\"" + num(std::max(bottom - top, 0.5)) + "\" fill=\"#aed6f1\" " + stroke + "/>\n";
    fig.line(cx - half, fig.y(box.median), cx + half, fig.y(box.median), "stroke=\"#e67e22\" stroke-width=\"2\"");
    const double my = fig.y(box.mean);
    fig.body += "<path d=\"M" + num(cx) + " " + num(my - 4) + " L" + num(cx + 4) + " " + num(my) + " L" + num(cx) +
                " " + num(my + 4) + " L" + num(cx - 4) + " " + num(my) + " Z\" fill=\"#27ae60\"/>\n";
    for (double v : box.outliers) fig.circle(cx, fig.y(v), 2.5, "fill=\"none\" stroke=\"black\"");
    fig.text(cx, kTop + 12, "n=" + std::to_string(box.count), "middle");
  }
  return fig.finish();
}

std::string scaling_svg(std::span<const Series> series, const std::string& x_label, const std::string& y_label) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min({y_lo, p.y, p.lo});
      y_hi = std::max({y_hi, p.y, p.hi});
    }
  }
  if (!std::isfinite(x_lo)) throw StatisticsError("no series points to plot");
  if (x_hi == x_lo) {
    x_lo -= 1.0;
    x_hi += 1.0;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double x_pad = 0.05 * (x_hi - x_lo);
  const double y_pad = 0.08 * (y_hi - y_lo);

  Figure fig;
  fig.x = {x_lo - x_pad, x_hi + x_pad, kLeft, kWidth - kRight, false};
  fig.y = {y_lo - y_pad, y_hi + y_pad, kHeight - kBottom, kTop, false};
  fig.frame(escape(x_label), escape(y_label));
  fig.ticks_x();
  fig.ticks_y();

  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::string color = kPalette[k % std::size(kPalette)];
    const auto& s = series[k];
    std::string path;
    for (const auto& p : s.points) {
      path += (path.empty() ? "M" : " L") + num(fig.x(p.x)) + " " + num(fig.y(p.y));
      fig.line(fig.x(p.x), fig.y(p.lo), fig.x(p.x), fig.y(p.hi), "stroke=\"" + color + "\"");
      fig.line(fig.x(p.x) - 4, fig.y(p.lo), fig.x(p.x) + 4, fig.y(p.lo), "stroke=\"" + color + "\"");
      fig.line(fig.x(p.x) - 4, fig.y(p.hi), fig.x(p.x) + 4, fig.y(p.hi), "stroke=\"" + color + "\"");
      fig.circle(fig.x(p.x), fig.y(p.y), 3.0, "fill=\"" + color + "\"");
    }
    if (!path.empty()) fig.body += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(k + 1);
    fig.line(kLeft + 12, ly - 4, kLeft + 32, ly - 4, "stroke=\"" + color + "\" stroke-width=\"2\"");
    fig.text(kLeft + 38, ly, escape(s.label), "start");
  }
  return fig.finish();
}

}  // namespace xxgap
