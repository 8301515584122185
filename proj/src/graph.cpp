#include "xxgap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "xxgap/errors.hpp"
#include "xxgap/random.hpp"

namespace xxgap {

std::vector<std::size_t> WeightedGraph::degrees() const {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::vector<std::uint32_t> WeightedGraph::adjacency_masks() const {
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& e : edges) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return adj;
}

void WeightedGraph::validate() const {
  if (n == 0 || n > kMaxVertices) {
    throw ParameterError("graph vertex count " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxVertices) + "]");
  }
  if (weights.size() != n) {
    throw ParameterError("graph has " + std::to_string(weights.size()) + " weights for " + std::to_string(n) +
                         " vertices");
  }
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw ParameterError("vertex weight " + std::to_string(w) + " outside [0, 1]");
  }
  std::set<Edge> seen;
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw ParameterError("edge endpoint out of range");
    if (e.u == e.v) throw ParameterError("self-loop on vertex " + std::to_string(e.u));
    if (e.u > e.v) throw ParameterError("edge not stored with u < v");
    if (!seen.insert(e).second) {
      throw ParameterError("duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
  }
}

std::string model_name(const GraphModel& model) {
  return std::holds_alternative<ErdosRenyi>(model) ? "er" : "ba";
}

double model_parameter(const GraphModel& model) {
  if (const auto* er = std::get_if<ErdosRenyi>(&model)) return er->p;
  return static_cast<double>(std::get<BarabasiAlbert>(model).m);
}

namespace {

void check_vertex_count(std::size_t n) {
  if (n == 0 || n > kMaxVertices) {
    throw ParameterError("vertex count must be in [1, " + std::to_string(kMaxVertices) + "], got " +
                         std::to_string(n));
  }
}

void draw_weights(WeightedGraph& g, Engine& rng) {
  g.weights.resize(g.n);
  for (auto& w : g.weights) w = uniform01(rng);
}

}  // namespace

WeightedGraph generate_er(std::size_t n, double p, std::uint64_t seed) {
  check_vertex_count(n);
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must be in [0, 1]");

  Engine rng(seed);
  WeightedGraph g;
  g.n = n;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) g.edges.push_back({i, j});
    }
  }
  draw_weights(g, rng);
  return g;
}

WeightedGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  check_vertex_count(n);
  if (m < 1 || m >= n) {
    throw ParameterError("BA requires 1 <= m < n, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
  }

  Engine rng(seed);
  WeightedGraph g;
  g.n = n;

  // Every edge endpoint goes into the urn once, so a uniform draw from it is a
  // degree-proportional draw over vertices.
  std::vector<std::uint32_t> urn;
  urn.reserve(2 * m * (n - m));
  const auto first = static_cast<std::uint32_t>(m);
  for (std::uint32_t t = 0; t < first; ++t) {
    g.edges.push_back({t, first});
    urn.push_back(t);
    urn.push_back(first);
  }

  std::vector<std::uint32_t> targets;
  for (auto v = static_cast<std::uint32_t>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const std::uint32_t t = urn[uniform_index(rng, urn.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    for (std::uint32_t t : targets) {
      g.edges.push_back({t, v});
      urn.push_back(t);
      urn.push_back(v);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  draw_weights(g, rng);
  return g;
}

WeightedGraph generate(const GraphModel& model, std::size_t n, std::uint64_t seed) {
  if (const auto* er = std::get_if<ErdosRenyi>(&model)) return generate_er(n, er->p, seed);
  return generate_ba(n, std::get<BarabasiAlbert>(model).m, seed);
}

}  // namespace xxgap
