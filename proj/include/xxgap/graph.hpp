#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace xxgap {

/// Largest vertex count any module accepts. Basis states are indexed by 32-bit masks.
inline constexpr std::size_t kMaxVertices = 24;

/// Undirected edge, stored with u < v.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex-weighted simple graph; the MWIS problem instance.
struct WeightedGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;

  std::vector<std::size_t> degrees() const;
  /// Bit j of entry i is set iff (i, j) is an edge.
  std::vector<std::uint32_t> adjacency_masks() const;
  /// Throws ParameterError if any WeightedGraph invariant is violated.
  void validate() const;
};

struct ErdosRenyi {
  double p = 0.5;
};

struct BarabasiAlbert {
  std::size_t m = 3;
};

using GraphModel = std::variant<ErdosRenyi, BarabasiAlbert>;

/// "er" or "ba".
std::string model_name(const GraphModel& model);
/// Value of p (ER) or m (BA).
double model_parameter(const GraphModel& model);

/// G(n, p): every unordered pair independently with probability p, then
/// i.i.d. uniform weights in vertex order from the same stream.
WeightedGraph generate_er(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment: m isolated seed vertices, vertex m joins all of
/// them, every later vertex attaches to m distinct vertices drawn
/// proportionally to degree. Exactly m * (n - m) edges.
WeightedGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed);

WeightedGraph generate(const GraphModel& model, std::size_t n, std::uint64_t seed);

}  // namespace xxgap
