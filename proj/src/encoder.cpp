#include "xxgap/encoder.hpp"

#include <cmath>

#include "xxgap/errors.hpp"
#include "xxgap/random.hpp"

namespace xxgap {

double IsingProblem::energy(std::uint64_t state) const {
  auto spin = [state](std::uint32_t i) { return ((state >> i) & 1u) ? 1.0 : -1.0; };
  double e = 0.0;
  for (const auto& edge : edges) e += coupling * spin(edge.u) * spin(edge.v);
  for (std::uint32_t i = 0; i < n; ++i) e += bias[i] * spin(i);
  return e;
}

IsingProblem encode_mwis(const WeightedGraph& g, double coupling) {
  g.validate();
  if (!std::isfinite(coupling)) throw EncodingError("coupling must be finite");

  const auto deg = g.degrees();
  for (std::size_t i = 0; i < g.n; ++i) {
    if (deg[i] > 0 && coupling < g.weights[i]) {
      throw EncodingError("coupling " + std::to_string(coupling) + " below weight " +
                          std::to_string(g.weights[i]) + " of vertex " + std::to_string(i));
    }
  }

  IsingProblem p;
  p.n = g.n;
  p.coupling = coupling;
  p.edges = g.edges;
  p.bias.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    p.bias[i] = static_cast<double>(deg[i]) * coupling - 2.0 * g.weights[i];
  }
  return p;
}

double draw_coupling(std::uint64_t seed) {
  Engine rng(seed);
  return uniform(rng, 1.0, 2.0);
}

}  // namespace xxgap
