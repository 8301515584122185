#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "xxgap/errors.hpp"
#include "xxgap/experiments.hpp"
#include "xxgap/random.hpp"

using namespace xxgap;

namespace {

ComparisonRecord record(double delta, double delta_c, RecordStatus status = RecordStatus::ok) {
  ComparisonRecord r;
  r.instance_id = "x";
  r.model = "er";
  r.n = 10;
  r.free.delta = delta;
  r.catalyzed.delta = delta_c;
  r.status = status;
  return r;
}

std::vector<ComparisonRecord> synthetic(std::size_t count, std::uint64_t seed) {
  Engine rng(seed);
  std::vector<ComparisonRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double delta = std::pow(10.0, uniform(rng, -5.0, -1.01));
    out.push_back(record(delta, delta * std::pow(10.0, uniform(rng, -1.0, 2.0))));
  }
  return out;
}

const AnnealSpec kFree = AnnealSpec::catalyst_free(101);
const AnnealSpec kXX = AnnealSpec::with_xx(-1.0, 101);

}  // namespace

TEST_CASE("instances are reproducible") {
  const auto a = make_instance(BarabasiAlbert{2}, 7, 5, 3);
  const auto b = make_instance(BarabasiAlbert{2}, 7, 5, 3);
  CHECK(a.id == "3");
  CHECK(a.seed == derive_seed(5, 3));
  CHECK(a.graph.edges == b.graph.edges);
  CHECK(a.graph.weights == b.graph.weights);
  CHECK(a.coupling == b.coupling);
  CHECK(a.coupling >= 1.0);
  CHECK(a.coupling <= 2.0);
  const auto batch = make_batch(BarabasiAlbert{2}, 7, 5, 6);
  REQUIRE(batch.size() == 6);
  CHECK(batch[3].graph.edges == a.graph.edges);
  CHECK(batch[4].graph.weights != a.graph.weights);
}

TEST_CASE("zero catalyst reproduces the free gap") {
  for (std::uint64_t i = 0; i < 6; ++i) {
    const auto r = run_instance(ErdosRenyi{0.5}, 7, 9, i, kFree, AnnealSpec::with_xx(0.0, 101));
    REQUIRE_FALSE(r.status == RecordStatus::failed);
    CHECK(std::abs(r.delta_c() - r.delta()) <= 1e-10);
  }
}

TEST_CASE("arms share one instance") {
  const auto inst = make_instance(ErdosRenyi{0.6}, 8, 12, 0);
  const std::vector<AnnealSpec> arms = {kXX, AnnealSpec::with_xx(1.0, 101), kFree};
  const auto recs = run_arms(inst, kFree, arms);
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) {
    CHECK(r.delta() == recs[0].delta());
    CHECK(r.instance_id == "0");
    CHECK(r.model == "er");
    CHECK(r.param == 0.6);
    CHECK(r.n == 8);
  }
  CHECK(recs[2].delta_c() == recs[2].delta());
  CHECK(recs[0].delta_c() != recs[1].delta_c());
  const auto single = run_instance(inst, kFree, kXX);
  CHECK(single.delta_c() == recs[0].delta_c());
}

TEST_CASE("ties and failures are recorded, not thrown") {
  Instance tied;
  tied.id = "t";
  tied.graph = {2, {{0, 1}}, {0.5, 0.5}};
  tied.coupling = 1.5;
  CHECK(run_instance(tied, kFree, kXX).status == RecordStatus::tie);

  Instance bad = tied;
  bad.graph.weights = {0.2, 0.9};
  bad.coupling = 0.1;  // below the edge weights
  const auto r = run_instance(bad, kFree, kXX);
  CHECK(r.status == RecordStatus::failed);
  CHECK_FALSE(r.error.empty());
  CHECK(r.rejected());
  CHECK(std::isnan(r.ratio()));
}

TEST_CASE("batch results do not depend on the thread count") {
  const auto batch = make_batch(ErdosRenyi{0.5}, 7, 21, 12);
  const std::vector<AnnealSpec> arms = {kXX};
  const auto one = compare_batch(batch, kFree, arms, 1);
  const auto three = compare_batch(batch, kFree, arms, 3);
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(one[0][i].instance_id == batch[i].id);
    CHECK(one[0][i].delta() == three[0][i].delta());
    CHECK(one[0][i].delta_c() == three[0][i].delta_c());
    CHECK(one[0][i].free.s_star == three[0][i].free.s_star);
  }
}

TEST_CASE("two record example") {
  const std::vector<ComparisonRecord> recs = {record(1e-4, 1e-3), record(1e-2, 5e-3)};
  const auto s = summarize(recs);
  CHECK(s.count == 2);
  CHECK(s.fraction_improved == 0.5);
  CHECK(s.geo_mean_improvement == doctest::Approx(std::sqrt(10.0 * 0.5)).epsilon(1e-12));
  CHECK(s.geo_mean_improvement == doctest::Approx(2.2360).epsilon(1e-4));
}

TEST_CASE("equal gaps improve nothing") {
  std::vector<ComparisonRecord> recs;
  for (double d : {1e-4, 3e-3, 0.05}) recs.push_back(record(d, d));
  const auto s = summarize(recs);
  CHECK(s.fraction_improved == 0.0);
  CHECK(s.geo_mean_improvement == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.fraction_ci.lo == 0.0);
  CHECK(s.fraction_ci.hi == 0.0);
}

TEST_CASE("decade labels") {
  CHECK(decade_of(3e-4) == -3);
  CHECK(decade_of(1e-3) == -3);
  CHECK(decade_of(1.1e-3) == -2);
  CHECK(decade_of(0.5) == 0);
  CHECK(decade_of(2.0) == 1);
  CHECK_THROWS_AS(decade_of(0.0), StatisticsError);
}

TEST_CASE("quantiles and boxes") {
  const std::vector<double> v = {1, 2, 3, 4};
  CHECK(quantile(v, 0.0) == 1.0);
  CHECK(quantile(v, 0.25) == doctest::Approx(1.75));
  CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
  CHECK(quantile(v, 1.0) == 4.0);

  // 1..10 and 100: q1 = 3.5, q3 = 8.5, fences at -4 and 16.
  std::vector<double> values = {100};
  for (int i = 10; i >= 1; --i) values.push_back(i);
  const auto box = box_summary(values, -2);
  CHECK(box.decade == -2);
  CHECK(box.count == 11);
  CHECK(box.median == 6.0);
  CHECK(box.q1 == doctest::Approx(3.5));
  CHECK(box.q3 == doctest::Approx(8.5));
  CHECK(box.whisker_lo == 1.0);
  CHECK(box.whisker_hi == 10.0);
  CHECK(box.outliers == std::vector<double>{100});
  CHECK(box.mean == doctest::Approx(155.0 / 11.0));
}

TEST_CASE("decade bins") {
  const std::vector<ComparisonRecord> recs = {record(3e-4, 3e-3), record(5e-4, 5e-4), record(0.02, 0.01),
                                              record(1e-5, 1.0, RecordStatus::tie)};
  const auto bins = decade_bins(recs);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].decade == -3);
  CHECK(bins[0].count == 2);
  CHECK(bins[0].median == doctest::Approx(5.5));
  CHECK(bins[1].decade == -1);
  CHECK(bins[1].median == doctest::Approx(0.5));
  CHECK(pooled_median_ratio(recs, 1e-3).value() == doctest::Approx(5.5));
  CHECK_FALSE(pooled_median_ratio(recs, 1e-6).has_value());
}

TEST_CASE("bootstrap intervals") {
  const auto small = synthetic(100, 1);
  const auto large = synthetic(2000, 2);
  const auto a = summarize(small);
  const auto b = summarize(large);
  CHECK(a.fraction_ci.contains(a.fraction_improved));
  CHECK(a.geo_mean_ci.contains(a.geo_mean_improvement));
  CHECK(b.fraction_ci.contains(b.fraction_improved));
  CHECK(b.geo_mean_ci.contains(b.geo_mean_improvement));
  CHECK(b.fraction_ci.hi - b.fraction_ci.lo < a.fraction_ci.hi - a.fraction_ci.lo);
  CHECK(b.geo_mean_ci.hi - b.geo_mean_ci.lo < a.geo_mean_ci.hi - a.geo_mean_ci.lo);

  // Same seed, same interval; another seed moves it a little.
  const auto again = summarize(small);
  CHECK(again.fraction_ci.lo == a.fraction_ci.lo);
  CHECK(again.geo_mean_ci.hi == a.geo_mean_ci.hi);
  SummaryOptions wider;
  wider.ci_level = 0.99;
  const auto w = summarize(small, wider);
  CHECK(w.geo_mean_ci.hi - w.geo_mean_ci.lo >= a.geo_mean_ci.hi - a.geo_mean_ci.lo);
  wider.ci_level = 1.0;
  CHECK_THROWS_AS(summarize(small, wider), ParameterError);
}

TEST_CASE("point estimates ignore record order") {
  auto recs = synthetic(300, 3);
  const auto a = summarize(recs);
  std::reverse(recs.begin(), recs.end());
  std::rotate(recs.begin(), recs.begin() + 77, recs.end());
  const auto b = summarize(recs);
  CHECK(a.fraction_improved == b.fraction_improved);
  CHECK(a.geo_mean_improvement == doctest::Approx(b.geo_mean_improvement).epsilon(1e-13));
}

TEST_CASE("filters") {
  std::vector<ComparisonRecord> recs = {record(1e-4, 1e-3), record(1e-2, 5e-3)};
  const auto base = summarize(recs);
  recs.push_back(record(1e-6, 1.0, RecordStatus::tie));
  recs.push_back(record(1e-6, 1.0, RecordStatus::degenerate));
  recs.push_back(record(0.5, 5.0));  // above the hard threshold
  const auto s = summarize(recs);
  CHECK(s.total == 5);
  CHECK(s.rejected == 2);
  CHECK(s.count == 2);
  CHECK(s.fraction_improved == base.fraction_improved);
  CHECK(s.geo_mean_improvement == base.geo_mean_improvement);
  // Harder share counts accepted records, hard filter or not.
  CHECK(s.harder_share == doctest::Approx(1.0 / 3.0));

  SummaryOptions everything;
  everything.hard_threshold = std::numeric_limits<double>::infinity();
  CHECK(summarize(recs, everything).count == 3);

  const std::vector<ComparisonRecord> easy = {record(0.5, 0.6), record(1e-3, 1.0, RecordStatus::failed)};
  CHECK_THROWS_AS(summarize(easy), StatisticsError);
  CHECK_THROWS_AS(summarize(std::vector<ComparisonRecord>{}), StatisticsError);
}

TEST_CASE("status names") {
  for (auto st : {RecordStatus::ok, RecordStatus::tie, RecordStatus::degenerate, RecordStatus::failed}) {
    CHECK(parse_status(status_name(st)) == st);
  }
  CHECK_THROWS_AS(parse_status("fine"), DataError);
}

TEST_CASE("anneal time") {
  CHECK(anneal_time_estimate(1.0).value() == 1.0);
  CHECK(anneal_time_estimate(1e-3).value() == doctest::Approx(1e6));
  CHECK(anneal_time_estimate(0.05).value() == doctest::Approx(4.0 * anneal_time_estimate(0.1).value()));
  CHECK_FALSE(anneal_time_estimate(0.0).has_value());
  CHECK_FALSE(anneal_time_estimate(-1.0).has_value());
  GapResult g;
  g.delta = 1e-12;
  g.degenerate = true;
  CHECK_FALSE(anneal_time_estimate(g).has_value());
  g.delta = 0.5;
  g.degenerate = false;
  CHECK(anneal_time_estimate(g).value() == doctest::Approx(4.0));
}

TEST_CASE("trend slope") {
  const std::vector<double> x = {6, 8, 10, 12};
  const std::vector<double> y = {1, 2, 3, 4};
  CHECK(trend_slope(x, y) == doctest::Approx(0.5));
  const std::vector<double> flat = {3, 3, 3, 3};
  CHECK(trend_slope(x, flat) == doctest::Approx(0.0));
  CHECK_THROWS_AS(trend_slope(flat, y), StatisticsError);
  CHECK_THROWS_AS(trend_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), StatisticsError);
  CHECK_THROWS_AS(trend_slope(x, std::vector<double>{1.0, 2.0}), ShapeError);
}

TEST_CASE("scaling sweep seeds each point separately") {
  const std::vector<ScalingSetting> settings = {{ErdosRenyi{0.5}, 5}, {ErdosRenyi{0.5}, 6}};
  SummaryOptions everything;
  everything.hard_threshold = std::numeric_limits<double>::infinity();
  everything.bootstrap_resamples = 50;
  const auto points = scaling_sweep(settings, 15, 33, kFree, kXX, everything, 1);
  REQUIRE(points.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto batch = make_batch(settings[k].model, settings[k].n, derive_seed(33, k), 15);
    const std::vector<AnnealSpec> arms = {kXX};
    const auto recs = compare_batch(batch, kFree, arms, 1);
    const auto s = summarize(recs[0], everything);
    CHECK(points[k].setting.n == settings[k].n);
    CHECK(points[k].stats.fraction_improved == s.fraction_improved);
    CHECK(points[k].stats.geo_mean_improvement == s.geo_mean_improvement);
    CHECK(points[k].accepted == s.total - s.rejected);
  }
}

TEST_CASE("ER(10, 0.6) gaps span four decades" * doctest::description("slow: 1000 instances")) {
  const auto batch = make_batch(ErdosRenyi{0.6}, 10, 2024, 1000);
  const std::vector<AnnealSpec> arms = {AnnealSpec::with_xx(-1.0, 201)};
  const auto recs = compare_batch(batch, AnnealSpec::catalyst_free(201), arms)[0];
  double lo = 1e300, hi = 0.0, lo_c = 1e300, hi_c = 0.0;
  for (const auto& r : recs) {
    if (r.rejected()) continue;
    lo = std::min(lo, r.delta());
    hi = std::max(hi, r.delta());
    lo_c = std::min(lo_c, r.delta_c());
    hi_c = std::max(hi_c, r.delta_c());
  }
  MESSAGE("delta in [" << lo << ", " << hi << "], delta_c in [" << lo_c << ", " << hi_c << "]");
  CHECK(std::log10(hi / lo) >= 4.0);
  CHECK(std::log10(hi_c / lo_c) >= 4.0);
}
