#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xxgap/graph.hpp"
#include "xxgap/hamiltonian.hpp"
#include "xxgap/spectrum.hpp"

namespace xxgap {

/// Everything needed to rebuild one problem: the graph with its weights and the coupling.
struct Instance {
  std::string id;
  GraphModel model = ErdosRenyi{};
  std::uint64_t seed = 0;
  WeightedGraph graph;
  double coupling = 1.0;

  std::size_t n() const noexcept { return graph.n; }
};

/// Instance `index` of a batch: graph from derive_seed(master, index), coupling
/// from a second stream under that seed. The id is the decimal index.
Instance make_instance(const GraphModel& model, std::size_t n, std::uint64_t master_seed, std::uint64_t index);

std::vector<Instance> make_batch(const GraphModel& model, std::size_t n, std::uint64_t master_seed,
                                 std::size_t count);

enum class RecordStatus {
  ok,
  tie,         // several maximum weight independent sets
  degenerate,  // a minimum gap below kDegeneracyTolerance
  failed,      // numerical or encoding error, message in `error`
};

std::string status_name(RecordStatus status);
RecordStatus parse_status(const std::string& name);

/// Paired minimum gaps of one instance without and with the catalyst.
struct ComparisonRecord {
  std::string instance_id;
  std::string model;  // "er" or "ba"
  std::size_t n = 0;
  double param = 0.0;
  std::uint64_t seed = 0;
  GapResult free;
  GapResult catalyzed;
  RecordStatus status = RecordStatus::ok;
  std::string error;

  bool rejected() const noexcept { return status != RecordStatus::ok; }
  double delta() const noexcept { return free.delta; }
  double delta_c() const noexcept { return catalyzed.delta; }
  /// delta_c / delta; NaN for rejected records.
  double ratio() const noexcept;
};

/// Catalyst-free gap followed by one catalyzed gap per entry of `catalyzed`,
/// all on the same graph, weights and coupling. Errors are caught and
/// recorded, never thrown.
std::vector<ComparisonRecord> run_arms(const Instance& instance, const AnnealSpec& free,
                                       std::span<const AnnealSpec> catalyzed, const SolverOptions& options = {});

ComparisonRecord run_instance(const Instance& instance, const AnnealSpec& free, const AnnealSpec& catalyzed,
                              const SolverOptions& options = {});

ComparisonRecord run_instance(const GraphModel& model, std::size_t n, std::uint64_t master_seed, std::uint64_t index,
                              const AnnealSpec& free, const AnnealSpec& catalyzed, const SolverOptions& options = {});

/// run_arms over a batch on `jobs` worker threads (0 picks the hardware
/// count). Result [a][i] is arm a of instance i, independent of scheduling.
std::vector<std::vector<ComparisonRecord>> compare_batch(std::span<const Instance> instances, const AnnealSpec& free,
                                                         std::span<const AnnealSpec> catalyzed, std::size_t jobs = 0,
                                                         const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Statistics

inline constexpr double kHardThreshold = 1e-1;
inline constexpr double kHarderThreshold = 1e-3;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool overlaps(const Interval& other) const noexcept { return lo <= other.hi && other.lo <= hi; }
};

/// Box-plot summary of the ratios whose delta lies in (10^(decade-1), 10^decade].
struct BoxSummary {
  int decade = 0;
  std::size_t count = 0;
  double median = 0.0;
  double mean = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  std::vector<double> outliers;
};

struct BatchStats {
  std::size_t total = 0;     // every record handed in
  std::size_t rejected = 0;  // records with a non-ok status
  std::size_t count = 0;     // accepted records below the hard threshold
  double fraction_improved = 0.0;
  Interval fraction_ci;
  double geo_mean_improvement = 1.0;
  Interval geo_mean_ci;
  /// Share of accepted records with delta below kHarderThreshold.
  double harder_share = 0.0;
  std::vector<BoxSummary> decade_bins;  // ascending decade, accepted records only
};

struct SummaryOptions {
  double hard_threshold = kHardThreshold;
  std::size_t bootstrap_resamples = 1000;
  double ci_level = 0.95;
  std::uint64_t bootstrap_seed = 1;
};

/// Throws StatisticsError when no accepted record passes the hard filter.
BatchStats summarize(std::span<const ComparisonRecord> records, const SummaryOptions& options = {});

/// Label of the decade bin holding `delta`: ceil(log10(delta)), so 3e-4 goes to -3.
int decade_of(double delta);

/// Sample quantile with linear interpolation between order statistics; `sorted` ascending, non-empty.
double quantile(std::span<const double> sorted, double q);

BoxSummary box_summary(std::vector<double> values, int decade = 0);

std::vector<BoxSummary> decade_bins(std::span<const ComparisonRecord> records);

/// Median ratio over accepted records with delta below `threshold`; nullopt if there are none.
std::optional<double> pooled_median_ratio(std::span<const ComparisonRecord> records, double threshold);

// ---------------------------------------------------------------------------
// Scaling

struct ScalingSetting {
  GraphModel model;
  std::size_t n = 0;
};

struct ScalingPoint {
  ScalingSetting setting;
  BatchStats stats;
  std::size_t accepted = 0;
  std::size_t harder = 0;  // accepted records with delta < kHarderThreshold
};

/// One batch of `instances_per_point` per setting; point k draws its
/// instances under derive_seed(master_seed, k).
std::vector<ScalingPoint> scaling_sweep(std::span<const ScalingSetting> settings, std::size_t instances_per_point,
                                        std::uint64_t master_seed, const AnnealSpec& free,
                                        const AnnealSpec& catalyzed, const SummaryOptions& summary = {},
                                        std::size_t jobs = 0, const SolverOptions& options = {});

/// Least-squares slope of y against x. Needs at least two distinct x.
double trend_slope(std::span<const double> x, std::span<const double> y);

/// Anneal time proxy 1 / delta^2; nullopt for non-positive or degenerate gaps.
std::optional<double> anneal_time_estimate(double delta);
std::optional<double> anneal_time_estimate(const GapResult& gap);

}  // namespace xxgap
