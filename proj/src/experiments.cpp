#include "xxgap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "xxgap/encoder.hpp"
#include "xxgap/errors.hpp"
#include "xxgap/oracle.hpp"
#include "xxgap/random.hpp"

namespace xxgap {

Instance make_instance(const GraphModel& model, std::size_t n, std::uint64_t master_seed, std::uint64_t index) {
  Instance inst;
  inst.id = std::to_string(index);
  inst.model = model;
  inst.seed = derive_seed(master_seed, index);
  inst.graph = generate(model, n, inst.seed);
  inst.coupling = draw_coupling(derive_seed(inst.seed, 1));
  return inst;
}

std::vector<Instance> make_batch(const GraphModel& model, std::size_t n, std::uint64_t master_seed,
                                 std::size_t count) {
  std::vector<Instance> batch;
  batch.reserve(count);
  for (std::size_t i = 0; i < count; ++i) batch.push_back(make_instance(model, n, master_seed, i));
  return batch;
}

std::string status_name(RecordStatus status) {
  switch (status) {
    case RecordStatus::ok:
      return "ok";
    case RecordStatus::tie:
      return "tie";
    case RecordStatus::degenerate:
      return "degenerate";
    case RecordStatus::failed:
      return "failed";
  }
  return "failed";
}

RecordStatus parse_status(const std::string& name) {
  if (name == "ok") return RecordStatus::ok;
  if (name == "tie") return RecordStatus::tie;
  if (name == "degenerate") return RecordStatus::degenerate;
  if (name == "failed") return RecordStatus::failed;
  throw DataError("unknown record status '" + name + "'");
}

double ComparisonRecord::ratio() const noexcept {
  if (rejected()) return std::numeric_limits<double>::quiet_NaN();
  return catalyzed.delta / free.delta;
}

std::vector<ComparisonRecord> run_arms(const Instance& instance, const AnnealSpec& free,
                                       std::span<const AnnealSpec> catalyzed, const SolverOptions& options) {
  ComparisonRecord base;
  base.instance_id = instance.id;
  base.model = model_name(instance.model);
  base.n = instance.graph.n;
  base.param = model_parameter(instance.model);
  base.seed = instance.seed;
  std::vector<ComparisonRecord> out(catalyzed.size(), base);

  auto fail_all = [&](const std::string& message) {
    for (auto& r : out) {
      r.status = RecordStatus::failed;
      r.error = message;
    }
  };

  bool unique = true;
  IsingProblem problem;
  GapResult free_gap;
  try {
    unique = solve_mwis_exhaustive(instance.graph).unique;
    problem = encode_mwis(instance.graph, instance.coupling);
    free_gap = minimum_gap(build_terms(problem, free), free, options);
  } catch (const NumericalError& e) {
    fail_all(e.with_instance(instance.id).what());
    return out;
  } catch (const Error& e) {
    fail_all(e.what());
    return out;
  }

  for (std::size_t a = 0; a < catalyzed.size(); ++a) {
    auto& r = out[a];
    r.free = free_gap;
    const auto& spec = catalyzed[a];
    const bool same_as_free = std::holds_alternative<NoCatalyst>(spec.catalyst) &&
                              spec.grid_points == free.grid_points && spec.refine_tolerance == free.refine_tolerance;
    try {
      r.catalyzed = same_as_free ? free_gap : minimum_gap(build_terms(problem, spec), spec, options);
    } catch (const NumericalError& e) {
      r.status = RecordStatus::failed;
      r.error = e.with_instance(instance.id).what();
      continue;
    } catch (const Error& e) {
      r.status = RecordStatus::failed;
      r.error = e.what();
      continue;
    }
    if (!unique) {
      r.status = RecordStatus::tie;
    } else if (r.free.degenerate || r.catalyzed.degenerate) {
      r.status = RecordStatus::degenerate;
    }
  }
  return out;
}

ComparisonRecord run_instance(const Instance& instance, const AnnealSpec& free, const AnnealSpec& catalyzed,
                              const SolverOptions& options) {
  return run_arms(instance, free, std::span<const AnnealSpec>(&catalyzed, 1), options).front();
}

ComparisonRecord run_instance(const GraphModel& model, std::size_t n, std::uint64_t master_seed, std::uint64_t index,
                              const AnnealSpec& free, const AnnealSpec& catalyzed, const SolverOptions& options) {
  return run_instance(make_instance(model, n, master_seed, index), free, catalyzed, options);
}

std::vector<std::vector<ComparisonRecord>> compare_batch(std::span<const Instance> instances, const AnnealSpec& free,
                                                         std::span<const AnnealSpec> catalyzed, std::size_t jobs,
                                                         const SolverOptions& options) {
  free.validate();
  for (const auto& spec : catalyzed) spec.validate();

  std::vector<std::vector<ComparisonRecord>> per_instance(instances.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(instances.size(), 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        per_instance[i] = run_arms(instances[i], free, catalyzed, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = instances.size();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::vector<ComparisonRecord>> arms(catalyzed.size());
  for (auto& arm : arms) arm.reserve(instances.size());
  for (auto& rows : per_instance) {
    for (std::size_t a = 0; a < rows.size(); ++a) arms[a].push_back(std::move(rows[a]));
  }
  return arms;
}

// ---------------------------------------------------------------------------

int decade_of(double delta) {
  if (!(delta > 0.0)) throw StatisticsError("decade of a non-positive gap");
  return static_cast<int>(std::ceil(std::log10(delta)));
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw StatisticsError("quantile of an empty sample");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxSummary box_summary(std::vector<double> values, int decade) {
  if (values.empty()) throw StatisticsError("box summary of an empty sample");
  std::sort(values.begin(), values.end());
  BoxSummary box;
  box.decade = decade;
  box.count = values.size();
  box.median = quantile(values, 0.5);
  box.q1 = quantile(values, 0.25);
  box.q3 = quantile(values, 0.75);
  box.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const double reach = 1.5 * (box.q3 - box.q1);
  box.whisker_lo = box.q1;
  box.whisker_hi = box.q3;
  for (double v : values) {
    if (v < box.q1 - reach || v > box.q3 + reach) {
      box.outliers.push_back(v);
    } else {
      box.whisker_lo = std::min(box.whisker_lo, v);
      box.whisker_hi = std::max(box.whisker_hi, v);
    }
  }
  return box;
}

std::vector<BoxSummary> decade_bins(std::span<const ComparisonRecord> records) {
  std::map<int, std::vector<double>> bins;
  for (const auto& r : records) {
    if (!r.rejected()) bins[decade_of(r.delta())].push_back(r.ratio());
  }
  std::vector<BoxSummary> out;
  for (auto& [decade, ratios] : bins) out.push_back(box_summary(std::move(ratios), decade));
  return out;
}

std::optional<double> pooled_median_ratio(std::span<const ComparisonRecord> records, double threshold) {
  std::vector<double> ratios;
  for (const auto& r : records) {
    if (!r.rejected() && r.delta() < threshold) ratios.push_back(r.ratio());
  }
  if (ratios.empty()) return std::nullopt;
  std::sort(ratios.begin(), ratios.end());
  return quantile(ratios, 0.5);
}

namespace {

struct RatioSample {
  std::vector<double> log_ratio;
  std::vector<char> improved;

  double fraction(std::span<const std::size_t> pick) const {
    std::size_t hits = 0;
    for (std::size_t i : pick) hits += improved[i];
    return static_cast<double>(hits) / static_cast<double>(pick.size());
  }
  double geo_mean(std::span<const std::size_t> pick) const {
    double sum = 0.0;
    for (std::size_t i : pick) sum += log_ratio[i];
    return std::exp(sum / static_cast<double>(pick.size()));
  }
};

}  // namespace

BatchStats summarize(std::span<const ComparisonRecord> records, const SummaryOptions& options) {
  if (!(options.ci_level > 0.0 && options.ci_level < 1.0)) throw ParameterError("ci level must lie in (0, 1)");

  BatchStats stats;
  stats.total = records.size();
  RatioSample sample;
  std::size_t accepted = 0;
  std::size_t harder = 0;
  for (const auto& r : records) {
    if (r.rejected()) {
      ++stats.rejected;
      continue;
    }
    ++accepted;
    if (r.delta() < kHarderThreshold) ++harder;
    if (r.delta() < options.hard_threshold) {
      sample.log_ratio.push_back(std::log(r.ratio()));
      sample.improved.push_back(r.delta_c() > r.delta());
    }
  }
  stats.count = sample.log_ratio.size();
  if (stats.count == 0) {
    throw StatisticsError("no accepted records with delta below " + std::to_string(options.hard_threshold) + " (" +
                          std::to_string(stats.rejected) + " of " + std::to_string(stats.total) + " rejected)");
  }
  stats.harder_share = static_cast<double>(harder) / static_cast<double>(accepted);

  std::vector<std::size_t> all(stats.count);
  std::iota(all.begin(), all.end(), 0);
  stats.fraction_improved = sample.fraction(all);
  stats.geo_mean_improvement = sample.geo_mean(all);

  if (options.bootstrap_resamples > 0) {
    Engine rng(options.bootstrap_seed);
    std::vector<double> fractions;
    std::vector<double> geo_means;
    fractions.reserve(options.bootstrap_resamples);
    geo_means.reserve(options.bootstrap_resamples);
    std::vector<std::size_t> pick(stats.count);
    for (std::size_t b = 0; b < options.bootstrap_resamples; ++b) {
      for (auto& i : pick) i = uniform_index(rng, stats.count);
      fractions.push_back(sample.fraction(pick));
      geo_means.push_back(sample.geo_mean(pick));
    }
    std::sort(fractions.begin(), fractions.end());
    std::sort(geo_means.begin(), geo_means.end());
    const double tail = 0.5 * (1.0 - options.ci_level);
    stats.fraction_ci = {quantile(fractions, tail), quantile(fractions, 1.0 - tail)};
    stats.geo_mean_ci = {quantile(geo_means, tail), quantile(geo_means, 1.0 - tail)};
  } else {
    stats.fraction_ci = {stats.fraction_improved, stats.fraction_improved};
    stats.geo_mean_ci = {stats.geo_mean_improvement, stats.geo_mean_improvement};
  }

  stats.decade_bins = decade_bins(records);
  return stats;
}

// ---------------------------------------------------------------------------

std::vector<ScalingPoint> scaling_sweep(std::span<const ScalingSetting> settings, std::size_t instances_per_point,
                                        std::uint64_t master_seed, const AnnealSpec& free,
                                        const AnnealSpec& catalyzed, const SummaryOptions& summary,
                                        std::size_t jobs, const SolverOptions& options) {
  std::vector<ScalingPoint> points;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto& setting = settings[k];
    if (setting.n > kMaxTermQubits) {
      throw CapacityError("scaling point n=" + std::to_string(setting.n) + " exceeds the solver cap");
    }
    const auto batch = make_batch(setting.model, setting.n, derive_seed(master_seed, k), instances_per_point);
    const auto arms = compare_batch(batch, free, std::span<const AnnealSpec>(&catalyzed, 1), jobs, options);
    const auto& records = arms.front();

    ScalingPoint point;
    point.setting = setting;
    point.stats = summarize(records, summary);
    for (const auto& r : records) {
      if (r.rejected()) continue;
      ++point.accepted;
      if (r.delta() < kHarderThreshold) ++point.harder;
    }
    points.push_back(std::move(point));
  }
  return points;
}

double trend_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("trend needs paired samples");
  if (x.size() < 2) throw StatisticsError("trend needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw StatisticsError("trend needs at least two distinct x values");
  return sxy / sxx;
}

std::optional<double> anneal_time_estimate(double delta) {
  if (!(delta > 0.0) || delta < kDegeneracyTolerance) return std::nullopt;
  return 1.0 / (delta * delta);
}

std::optional<double> anneal_time_estimate(const GapResult& gap) {
  if (gap.degenerate) return std::nullopt;
  return anneal_time_estimate(gap.delta);
}

}  // namespace xxgap
