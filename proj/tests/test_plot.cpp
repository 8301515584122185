#include <doctest.h>

#include <regex>

#include "xxgap/errors.hpp"
#include "xxgap/experiments.hpp"
#include "xxgap/plot.hpp"

using namespace xxgap;

namespace {

ComparisonRecord record(double delta, double delta_c, RecordStatus status = RecordStatus::ok) {
  ComparisonRecord r;
  r.model = "er";
  r.free.delta = delta;
  r.catalyzed.delta = delta_c;
  r.status = status;
  return r;
}

struct Point {
  double x;
  double y;
};

std::vector<Point> circles(const std::string& svg) {
  static const std::regex re(R"re(<circle cx="([-0-9.]+)" cy="([-0-9.]+)")re");
  std::vector<Point> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.push_back({std::stod((*it)[1]), std::stod((*it)[2])});
  }
  return out;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("scatter output is deterministic and well formed") {
  const std::vector<ComparisonRecord> recs = {record(1e-4, 2e-3), record(0.03, 0.01), record(0.5, 0.7)};
  const auto a = scatter_svg(recs);
  CHECK(a == scatter_svg(recs));
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(circles(a).size() == 3);
  // Decade ticks from 10^-4 to 10^0 on both axes.
  CHECK(count(a, ">-4</tspan>") == 2);
  CHECK(count(a, ">0</tspan>") == 2);
}

TEST_CASE("unchanged gaps sit on the diagonal") {
  std::vector<ComparisonRecord> recs;
  for (double d : {2e-5, 3e-4, 1e-3, 0.02, 0.4}) recs.push_back(record(d, d));
  recs.push_back(record(1e-3, 1e-3, RecordStatus::tie));
  const auto svg = scatter_svg(recs);
  const auto pts = circles(svg);
  REQUIRE(pts.size() == 5);
  // The diagonal runs corner to corner of the plot area, so x and y pixel
  // fractions agree for every point on it.
  for (const auto& p : pts) {
    const double fx = (p.x - 70.0) / 550.0;
    const double fy = (430.0 - p.y) / 410.0;
    CHECK(fx == doctest::Approx(fy).epsilon(1e-4).scale(1.0));
  }
  CHECK(svg.find("<line x1=\"70.00\" y1=\"430.00\" x2=\"620.00\" y2=\"20.00\"") != std::string::npos);
}

TEST_CASE("box plot") {
  std::vector<double> ratios = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 100};
  const std::vector<BoxSummary> bins = {box_summary(ratios, -3), box_summary({0.5, 0.8, 1.1}, -1)};
  const auto svg = box_svg(bins);
  CHECK(svg == box_svg(bins));
  CHECK(svg.find(">-3</tspan>") != std::string::npos);
  CHECK(svg.find(">-1</tspan>") != std::string::npos);
  CHECK(svg.find("n=11") != std::string::npos);
  CHECK(svg.find("n=3") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(circles(svg).size() == 1);  // the outlier
  CHECK(count(svg, "<rect x=") == 2);
  CHECK_THROWS_AS(box_svg(std::vector<BoxSummary>{}), StatisticsError);
}

TEST_CASE("scaling plot") {
  const std::vector<Series> series = {{"er p=0.5", {{6, 0.7, 0.65, 0.75}, {8, 0.72, 0.69, 0.75}}},
                                      {"ba m=3 <x>", {{6, 0.8, 0.75, 0.85}}}};
  const auto svg = scaling_svg(series, "N", "fraction");
  CHECK(svg == scaling_svg(series, "N", "fraction"));
  CHECK(circles(svg).size() == 3);
  CHECK(svg.find("er p=0.5") != std::string::npos);
  CHECK(svg.find("&lt;x&gt;") != std::string::npos);
  CHECK(count(svg, "<path d=") == 2);
  CHECK_THROWS_AS(scaling_svg(std::vector<Series>{}, "N", "y"), StatisticsError);
}

TEST_CASE("nothing accepted") {
  const std::vector<ComparisonRecord> recs = {record(1e-3, 1e-3, RecordStatus::failed)};
  CHECK_THROWS_AS(scatter_svg(recs), StatisticsError);
}
