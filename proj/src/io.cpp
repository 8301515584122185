#include "xxgap/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "xxgap/errors.hpp"

namespace xxgap {

using nlohmann::json;

std::string instance_to_line(const Instance& instance) {
  json j;
  j["id"] = instance.id;
  j["model"] = model_name(instance.model);
  j["n"] = instance.graph.n;
  if (const auto* er = std::get_if<ErdosRenyi>(&instance.model)) {
    j["p"] = er->p;
  } else {
    j["m"] = std::get<BarabasiAlbert>(instance.model).m;
  }
  j["seed"] = instance.seed;
  j["J"] = instance.coupling;
  j["weights"] = instance.graph.weights;
  json edges = json::array();
  for (const auto& e : instance.graph.edges) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  return j.dump();
}

namespace {

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t count_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) throw DataError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

double number_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw DataError(std::string("field '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw DataError(std::string("field '") + key + "' must be finite");
  return x;
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw DataError("record is not a JSON object");
  Instance inst;
  const auto& id = field(j, "id");
  if (!id.is_string()) throw DataError("field 'id' must be a string");
  inst.id = id.get<std::string>();

  const auto& model = field(j, "model");
  if (!model.is_string()) throw DataError("field 'model' must be a string");
  const auto name = model.get<std::string>();
  if (name == "er") {
    if (j.contains("m")) throw DataError("er record carries 'm'");
    inst.model = ErdosRenyi{number_field(j, "p")};
  } else if (name == "ba") {
    if (j.contains("p")) throw DataError("ba record carries 'p'");
    inst.model = BarabasiAlbert{count_field(j, "m")};
  } else {
    throw DataError("unknown model '" + name + "'");
  }

  inst.graph.n = count_field(j, "n");
  inst.seed = count_field(j, "seed");
  inst.coupling = number_field(j, "J");

  const auto& weights = field(j, "weights");
  if (!weights.is_array()) throw DataError("field 'weights' must be an array");
  for (const auto& w : weights) {
    if (!w.is_number()) throw DataError("weights must be numbers");
    inst.graph.weights.push_back(w.get<double>());
  }
  const auto& edges = field(j, "edges");
  if (!edges.is_array()) throw DataError("field 'edges' must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw DataError("edges must be pairs of vertex indices");
    }
    const auto u = e[0].get<std::uint64_t>();
    const auto v = e[1].get<std::uint64_t>();
    if (u >= kMaxVertices || v >= kMaxVertices) throw DataError("edge endpoint out of range");
    inst.graph.edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
  }

  try {
    inst.graph.validate();
  } catch (const ParameterError& e) {
    throw DataError(e.what());
  }
  return inst;
}

}  // namespace

Instance instance_from_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

void write_instances(std::ostream& out, std::span<const Instance> instances) {
  for (const auto& inst : instances) out << instance_to_line(inst) << '\n';
}

std::vector<InstanceLine> read_instance_lines(std::istream& in) {
  std::vector<InstanceLine> lines;
  std::set<std::string> ids;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    InstanceLine line;
    line.line_number = number;
    json j = json::parse(text, nullptr, false);
    if (j.is_object() && j.contains("id") && j["id"].is_string()) line.id = j["id"].get<std::string>();
    try {
      if (j.is_discarded()) throw DataError("invalid JSON");
      line.instance = instance_from_json(j);
      if (!ids.insert(line.id).second) {
        line.instance.reset();
        throw DataError("duplicate id '" + line.id + "'");
      }
    } catch (const DataError& e) {
      line.error = e.what();
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<Instance> read_instances(std::istream& in) {
  std::vector<Instance> out;
  for (auto& line : read_instance_lines(in)) {
    if (!line.instance) throw DataError("line " + std::to_string(line.line_number) + ": " + line.error);
    out.push_back(std::move(*line.instance));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_results_header(std::ostream& out) {
  bool first = true;
  for (const char* column : kResultsColumns) {
    out << (first ? "" : "\t") << column;
    first = false;
  }
  out << '\n';
}

namespace {

std::string sanitize(std::string text) {
  for (char& c : text) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cells.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cells;
}

double parse_double(const std::string& cell, const char* column) {
  // strtod reads "nan" and "inf", which the writer emits for failed rows.
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (cell.empty() || end != begin + cell.size()) {
    throw DataError(std::string("bad number '") + cell + "' in column " + column);
  }
  return x;
}

std::uint64_t parse_unsigned(const std::string& cell, const char* column) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw DataError(std::string("bad integer '") + cell + "' in column " + column);
  }
  return x;
}

}  // namespace

void write_result_row(std::ostream& out, const ComparisonRecord& r) {
  out << sanitize(r.instance_id) << '\t' << r.n << '\t' << r.model << '\t' << format_double(r.param) << '\t'
      << format_double(r.free.delta) << '\t' << format_double(r.free.s_star) << '\t'
      << format_double(r.catalyzed.delta) << '\t' << format_double(r.catalyzed.s_star) << '\t'
      << format_double(r.ratio()) << '\t' << (r.rejected() ? 1 : 0) << '\t' << status_name(r.status) << '\t'
      << r.seed << '\t' << sanitize(r.error) << '\n';
}

void write_results(std::ostream& out, std::span<const ComparisonRecord> records) {
  write_results_header(out);
  for (const auto& r : records) write_result_row(out, r);
}

std::vector<ComparisonRecord> read_results(std::istream& in) {
  constexpr std::size_t columns = std::size(kResultsColumns);
  std::string line;
  if (!std::getline(in, line)) throw DataError("results file is empty");
  const auto header = split_tabs(line);
  if (header.size() != columns) throw DataError("results header has " + std::to_string(header.size()) + " columns");
  for (std::size_t c = 0; c < columns; ++c) {
    if (header[c] != kResultsColumns[c]) throw DataError("unexpected results column '" + header[c] + "'");
  }

  std::vector<ComparisonRecord> records;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto cells = split_tabs(line);
    try {
      if (cells.size() != columns) throw DataError("expected " + std::to_string(columns) + " columns");
      ComparisonRecord r;
      r.instance_id = cells[0];
      r.n = parse_unsigned(cells[1], "n");
      r.model = cells[2];
      r.status = parse_status(cells[10]);
      // Rows for unreadable instances carry no model.
      if (r.model != "er" && r.model != "ba" && r.status != RecordStatus::failed) {
        throw DataError("unknown model '" + r.model + "'");
      }
      r.param = parse_double(cells[3], "param");
      r.free.delta = parse_double(cells[4], "delta");
      r.free.s_star = parse_double(cells[5], "s_star");
      r.catalyzed.delta = parse_double(cells[6], "delta_c");
      r.catalyzed.s_star = parse_double(cells[7], "s_star_c");
      r.free.degenerate = !(r.free.delta >= kDegeneracyTolerance);
      r.catalyzed.degenerate = !(r.catalyzed.delta >= kDegeneracyTolerance);
      if (cells[9] != (r.rejected() ? "1" : "0")) throw DataError("rejected flag disagrees with status");
      if (!r.rejected() && (r.free.degenerate || r.catalyzed.degenerate)) {
        throw DataError("accepted row with a degenerate gap");
      }
      r.seed = parse_unsigned(cells[11], "seed");
      r.error = cells[12];
      records.push_back(std::move(r));
    } catch (const DataError& e) {
      throw DataError("results line " + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace xxgap
