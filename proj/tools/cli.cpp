#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xxgap/errors.hpp"
#include "xxgap/experiments.hpp"
#include "xxgap/io.hpp"
#include "xxgap/plot.hpp"
#include "xxgap/spectrum.hpp"

namespace xxgap::cli {

namespace {

// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<std::istream> open_input(const std::string& path) {
  auto in = std::make_unique<std::ifstream>(path);
  if (!*in) throw DataError("cannot read " + path);
  return in;
}

// Writes to `path`, or to `fallback` when the path is empty or "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw DataError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw DataError("write failed for " + (path_.empty() ? std::string("output") : path_));
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------------------

struct GenerateFlags {
  std::string model;
  std::size_t n = 0;
  std::optional<double> p;
  std::optional<std::size_t> m;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_generate(const GenerateFlags& f, std::ostream& out) {
  GraphModel model;
  if (f.model == "er") {
    if (f.m) throw UsageError("--m is a ba option");
    if (!f.p) throw UsageError("--model er needs --p");
    model = ErdosRenyi{*f.p};
  } else {
    if (f.p) throw UsageError("--p is an er option");
    if (!f.m) throw UsageError("--model ba needs --m");
    model = BarabasiAlbert{*f.m};
  }
  std::vector<Instance> batch;
  try {
    batch = make_batch(model, f.n, f.seed, f.count);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  Output sink(f.out, out);
  write_instances(sink.stream(), batch);
  sink.close();
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct CompareFlags {
  std::string in;
  std::string out;
  double jc = -1.0;
  std::size_t grid = 501;
  double refine_tolerance = 1e-6;
  std::string catalyst = "xx";
  std::size_t jobs = 0;
};

int cmd_compare(const CompareFlags& f, std::ostream& out, std::ostream& err) {
  const AnnealSpec free{NoCatalyst{}, f.grid, f.refine_tolerance};
  const AnnealSpec catalyzed =
      f.catalyst == "none" ? free : AnnealSpec{XXCatalyst{f.jc}, f.grid, f.refine_tolerance};
  try {
    free.validate();
    catalyzed.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }

  auto in = open_input(f.in);
  const auto lines = read_instance_lines(*in);
  if (lines.empty()) throw DataError(f.in + " holds no instance records");

  std::vector<Instance> instances;
  for (const auto& line : lines) {
    if (line.instance) instances.push_back(*line.instance);
  }
  const auto arms = compare_batch(instances, free, std::span<const AnnealSpec>(&catalyzed, 1), f.jobs);

  std::vector<ComparisonRecord> rows;
  std::size_t next = 0;
  std::size_t bad_lines = 0;
  for (const auto& line : lines) {
    if (line.instance) {
      rows.push_back(arms.front()[next++]);
      continue;
    }
    ++bad_lines;
    ComparisonRecord r;
    r.instance_id = line.id.empty() ? "line" + std::to_string(line.line_number) : line.id;
    r.model = "-";
    r.status = RecordStatus::failed;
    r.error = "line " + std::to_string(line.line_number) + ": " + line.error;
    rows.push_back(std::move(r));
  }

  Output sink(f.out, out);
  write_results(sink.stream(), rows);
  sink.close();

  std::size_t failed = 0;
  std::size_t rejected = 0;
  for (const auto& r : rows) {
    failed += r.status == RecordStatus::failed;
    rejected += r.rejected();
  }
  err << "compare: " << rows.size() << " rows, " << rejected - failed << " rejected, " << failed << " failed\n";
  if (failed == rows.size()) {
    err << "xxgap: error: every record failed\n";
    return bad_lines == rows.size() ? kData : kNumerical;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct StatsFlags {
  std::string in;
  double hard_threshold = kHardThreshold;
  std::size_t bootstrap = 1000;
  std::uint64_t bootstrap_seed = 1;
  double ci_level = 0.95;
  std::string format = "text";
};

std::vector<ComparisonRecord> load_results(const std::string& path) {
  auto in = open_input(path);
  return read_results(*in);
}

nlohmann::json box_json(const BoxSummary& box) {
  return {{"decade", box.decade}, {"count", box.count},     {"median", box.median},
          {"mean", box.mean},     {"q1", box.q1},           {"q3", box.q3},
          {"whisker_lo", box.whisker_lo}, {"whisker_hi", box.whisker_hi}, {"outliers", box.outliers}};
}

int cmd_stats(const StatsFlags& f, std::ostream& out) {
  if (!(f.ci_level > 0.0 && f.ci_level < 1.0)) throw UsageError("--ci must lie in (0, 1)");
  if (!(f.hard_threshold > 0.0)) throw UsageError("--hard-threshold must be positive");
  const auto records = load_results(f.in);
  SummaryOptions options;
  options.hard_threshold = f.hard_threshold;
  options.bootstrap_resamples = f.bootstrap;
  options.bootstrap_seed = f.bootstrap_seed;
  options.ci_level = f.ci_level;
  const auto stats = summarize(records, options);

  if (f.format == "json") {
    nlohmann::json j;
    j["total"] = stats.total;
    j["rejected"] = stats.rejected;
    j["hard_threshold"] = f.hard_threshold;
    j["count"] = stats.count;
    j["fraction_improved"] = stats.fraction_improved;
    j["fraction_ci"] = {stats.fraction_ci.lo, stats.fraction_ci.hi};
    j["geo_mean_improvement"] = stats.geo_mean_improvement;
    j["geo_mean_ci"] = {stats.geo_mean_ci.lo, stats.geo_mean_ci.hi};
    j["ci_level"] = f.ci_level;
    j["bootstrap_resamples"] = f.bootstrap;
    j["harder_share"] = stats.harder_share;
    j["decade_bins"] = nlohmann::json::array();
    for (const auto& box : stats.decade_bins) j["decade_bins"].push_back(box_json(box));
    out << j.dump(2) << '\n';
    return kSuccess;
  }

  const auto g = [](double x) { return format_double(x); };
  out << "records\t" << stats.total << '\n';
  out << "rejected\t" << stats.rejected << '\n';
  out << "hard filter\tdelta < " << f.hard_threshold << "\t" << stats.count << " records\n";
  out << "fraction improved\t" << g(stats.fraction_improved) << "\tci [" << g(stats.fraction_ci.lo) << ", "
      << g(stats.fraction_ci.hi) << "]\n";
  out << "geo mean improvement\t" << g(stats.geo_mean_improvement) << "\tci [" << g(stats.geo_mean_ci.lo) << ", "
      << g(stats.geo_mean_ci.hi) << "]\n";
  out << "ci\t" << f.ci_level << " percentile, " << f.bootstrap << " resamples, seed " << f.bootstrap_seed << '\n';
  out << "harder share\tdelta < " << kHarderThreshold << '\t' << g(stats.harder_share) << '\n';
  out << "decade\tcount\tmedian\tmean\tq1\tq3\twhisker_lo\twhisker_hi\toutliers\n";
  for (const auto& box : stats.decade_bins) {
    out << "1e" << box.decade << '\t' << box.count << '\t' << g(box.median) << '\t' << g(box.mean) << '\t'
        << g(box.q1) << '\t' << g(box.q3) << '\t' << g(box.whisker_lo) << '\t' << g(box.whisker_hi) << '\t'
        << box.outliers.size() << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct PlotFlags {
  std::string in;
  std::string kind;
  std::string out;
  std::string metric = "geo";
  double hard_threshold = kHardThreshold;
  std::size_t bootstrap = 1000;
  std::uint64_t bootstrap_seed = 1;
};

std::vector<Series> scaling_series(const std::vector<ComparisonRecord>& records, const PlotFlags& f) {
  std::map<std::pair<std::string, double>, std::map<std::size_t, std::vector<ComparisonRecord>>> groups;
  for (const auto& r : records) {
    if (r.status != RecordStatus::failed) groups[{r.model, r.param}][r.n].push_back(r);
  }
  SummaryOptions options;
  options.hard_threshold = f.hard_threshold;
  options.bootstrap_resamples = f.bootstrap;
  options.bootstrap_seed = f.bootstrap_seed;

  std::vector<Series> series;
  for (const auto& [key, by_n] : groups) {
    Series s;
    std::ostringstream label;
    label << key.first << (key.first == "er" ? " p=" : " m=") << key.second;
    s.label = label.str();
    for (const auto& [n, rows] : by_n) {
      BatchStats stats;
      try {
        stats = summarize(rows, options);
      } catch (const StatisticsError&) {
        continue;  // nothing below the hard threshold at this n
      }
      const double x = static_cast<double>(n);
      if (f.metric == "fraction") {
        s.points.push_back({x, stats.fraction_improved, stats.fraction_ci.lo, stats.fraction_ci.hi});
      } else if (f.metric == "harder") {
        s.points.push_back({x, stats.harder_share, stats.harder_share, stats.harder_share});
      } else {
        s.points.push_back({x, stats.geo_mean_improvement, stats.geo_mean_ci.lo, stats.geo_mean_ci.hi});
      }
    }
    if (!s.points.empty()) series.push_back(std::move(s));
  }
  if (series.empty()) throw StatisticsError("no group has records below the hard threshold");
  return series;
}

int cmd_plot(const PlotFlags& f, std::ostream& out) {
  const auto records = load_results(f.in);
  std::string svg;
  if (f.kind == "scatter") {
    svg = scatter_svg(records);
  } else if (f.kind == "box") {
    svg = box_svg(decade_bins(records));
  } else {
    const auto series = scaling_series(records, f);
    const std::string y_label = f.metric == "fraction" ? "fraction improved"
                                : f.metric == "harder" ? "share with delta < 1e-3"
                                                       : "geometric mean of delta_c / delta";
    svg = scaling_svg(series, "n", y_label);
  }
  Output sink(f.out, out);
  sink.stream() << svg;
  sink.close();
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct CurveFlags {
  std::string in;
  std::string id;
  double jc = -1.0;
  std::size_t grid = 501;
  std::string catalyst = "xx";
  std::string out;
};

int cmd_curve(const CurveFlags& f, std::ostream& out) {
  const AnnealSpec spec = f.catalyst == "none" ? AnnealSpec::catalyst_free(f.grid) : AnnealSpec::with_xx(f.jc, f.grid);
  try {
    spec.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  auto in = open_input(f.in);
  const auto instances = read_instances(*in);
  const auto it = std::find_if(instances.begin(), instances.end(), [&](const Instance& x) { return x.id == f.id; });
  if (it == instances.end()) throw DataError("no instance with id '" + f.id + "' in " + f.in);

  const auto terms = build_terms(encode_mwis(it->graph, it->coupling), spec);
  GapCurve curve;
  GapResult gap;
  try {
    curve = sweep(terms, spec);
    gap = min_gap(curve, terms, spec);
  } catch (const NumericalError& e) {
    throw e.with_instance(it->id);
  }

  Output sink(f.out, out);
  auto& s = sink.stream();
  s << "s\te0\te1\tgap\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    s << format_double(curve.s_values[k]) << '\t' << format_double(curve.e0[k]) << '\t'
      << format_double(curve.e1[k]) << '\t' << format_double(curve.gap(k)) << '\n';
  }
  s << "# delta " << format_double(gap.delta) << " s_star " << format_double(gap.s_star)
    << (gap.degenerate ? " degenerate" : "") << '\n';
  sink.close();
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-gap experiments for XX-catalysed quantum annealing of weighted independent set problems",
               "xxgap"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Write random instances as JSON lines");
  generate->add_option("--model", gen.model, "Graph model")->required()->check(CLI::IsMember({"er", "ba"}));
  generate->add_option("--n", gen.n, "Vertices per graph")->required();
  generate->add_option("--p", gen.p, "Edge probability (er)");
  generate->add_option("--m", gen.m, "Attachment count (ba)");
  generate->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output file, stdout if omitted");

  CompareFlags cmp;
  auto* compare = app.add_subcommand("compare", "Minimum gaps with and without the catalyst");
  compare->add_option("--in", cmp.in, "Instance file")->required();
  compare->add_option("--out", cmp.out, "Results file, stdout if omitted");
  compare->add_option("--jc", cmp.jc, "Catalyst strength")->capture_default_str();
  compare->add_option("--grid", cmp.grid, "Grid points in s")->capture_default_str();
  compare->add_option("--refine-tol", cmp.refine_tolerance, "Refinement interval length")->capture_default_str();
  compare->add_option("--catalyst", cmp.catalyst, "xx, or none for a single catalyst-free arm")
      ->capture_default_str()
      ->check(CLI::IsMember({"xx", "none"}));
  compare->add_option("--jobs", cmp.jobs, "Worker threads, 0 for all cores")->capture_default_str();

  StatsFlags st;
  auto* stats = app.add_subcommand("stats", "Summary statistics of a results file");
  stats->add_option("--in", st.in, "Results file")->required();
  stats->add_option("--hard-threshold", st.hard_threshold, "Keep records with delta below this")
      ->capture_default_str();
  stats->add_option("--bootstrap", st.bootstrap, "Bootstrap resamples")->capture_default_str();
  stats->add_option("--bootstrap-seed", st.bootstrap_seed, "Bootstrap seed")->capture_default_str();
  stats->add_option("--ci", st.ci_level, "Confidence level")->capture_default_str();
  stats->add_option("--format", st.format, "text or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));

  PlotFlags pl;
  auto* plot = app.add_subcommand("plot", "SVG figures from a results file");
  plot->add_option("--in", pl.in, "Results file")->required();
  plot->add_option("--kind", pl.kind, "scatter, box or scaling")->required()->check(
      CLI::IsMember({"scatter", "box", "scaling"}));
  plot->add_option("--out", pl.out, "SVG file, stdout if omitted");
  plot->add_option("--metric", pl.metric, "Scaling series: geo, fraction or harder")
      ->capture_default_str()
      ->check(CLI::IsMember({"geo", "fraction", "harder"}));
  plot->add_option("--hard-threshold", pl.hard_threshold, "Hard filter for scaling statistics")
      ->capture_default_str();
  plot->add_option("--bootstrap", pl.bootstrap, "Bootstrap resamples for error bars")->capture_default_str();
  plot->add_option("--bootstrap-seed", pl.bootstrap_seed, "Bootstrap seed")->capture_default_str();

  CurveFlags cv;
  auto* curve = app.add_subcommand("curve", "Lowest two levels of one instance across s");
  curve->add_option("--in", cv.in, "Instance file")->required();
  curve->add_option("--id", cv.id, "Instance id")->required();
  curve->add_option("--jc", cv.jc, "Catalyst strength")->capture_default_str();
  curve->add_option("--grid", cv.grid, "Grid points in s")->capture_default_str();
  curve->add_option("--catalyst", cv.catalyst, "xx or none")
      ->capture_default_str()
      ->check(CLI::IsMember({"xx", "none"}));
  curve->add_option("--out", cv.out, "Output file, stdout if omitted");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream message;
    const int code = app.exit(e, out, message);
    if (code == 0) return kSuccess;
    err << "xxgap: usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (compare->parsed()) return cmd_compare(cmp, out, err);
    if (stats->parsed()) return cmd_stats(st, out);
    if (plot->parsed()) return cmd_plot(pl, out);
    return cmd_curve(cv, out);
  } catch (const UsageError& e) {
    err << "xxgap: usage: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "xxgap: numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "xxgap: error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace xxgap::cli
