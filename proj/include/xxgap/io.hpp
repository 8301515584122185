#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xxgap/experiments.hpp"

namespace xxgap {

// Instance files hold one JSON object per line:
//   {"id":..,"model":"er","n":..,"p":..,"seed":..,"J":..,"weights":[..],"edges":[[u,v],..]}
// with "m" in place of "p" for BA graphs.

std::string instance_to_line(const Instance& instance);
/// Throws DataError on malformed or inconsistent records.
Instance instance_from_line(const std::string& line);

void write_instances(std::ostream& out, std::span<const Instance> instances);

/// One parsed line of an instance file. `id` is filled whenever the line had
/// a readable id, even if the rest was bad.
struct InstanceLine {
  std::size_t line_number = 0;
  std::optional<Instance> instance;
  std::string id;
  std::string error;
};

/// Parses every non-blank line, keeping bad ones with their error. Duplicate ids are errors.
std::vector<InstanceLine> read_instance_lines(std::istream& in);

/// Strict variant: throws DataError on the first bad line.
std::vector<Instance> read_instances(std::istream& in);

// Results files are tab-separated with a header row. Doubles are written
// with 17 significant digits so they read back bit for bit.

inline constexpr const char* kResultsColumns[] = {"id",       "n",     "model",    "param",  "delta",
                                                  "s_star",   "delta_c", "s_star_c", "ratio", "rejected",
                                                  "status",   "seed",  "error"};

std::string format_double(double x);

void write_results_header(std::ostream& out);
void write_result_row(std::ostream& out, const ComparisonRecord& record);
void write_results(std::ostream& out, std::span<const ComparisonRecord> records);

/// Throws DataError on a bad header or row.
std::vector<ComparisonRecord> read_results(std::istream& in);

}  // namespace xxgap
