#pragma once

#include <cstdint>
#include <vector>

#include "xxgap/graph.hpp"

namespace xxgap {

/// Ising form of an MWIS instance: E(z) = J * sum_edges z_i z_j + sum_i h_i z_i,
/// z_i = +1 meaning vertex i is selected.
struct IsingProblem {
  std::size_t n = 0;
  double coupling = 0.0;
  std::vector<Edge> edges;
  std::vector<double> bias;

  /// Classical energy of basis state `state` (bit i set <=> z_i = +1).
  double energy(std::uint64_t state) const;
};

/// h_i = deg(i) * J - 2 w_i with the same uniform J on every edge.
/// Throws EncodingError when J is smaller than the weight of a vertex that
/// has at least one edge.
IsingProblem encode_mwis(const WeightedGraph& g, double coupling);

/// Per-instance coupling, uniform on [1, 2].
double draw_coupling(std::uint64_t seed);

}  // namespace xxgap
