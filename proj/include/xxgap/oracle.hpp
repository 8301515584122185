#pragma once

#include <cstdint>
#include <vector>

#include "xxgap/encoder.hpp"
#include "xxgap/graph.hpp"

namespace xxgap {

/// Two independent sets whose weights differ by less than this count as tied.
inline constexpr double kWeightTieTolerance = 1e-9;

struct MwisSolution {
  std::vector<std::size_t> selected;  // ascending vertex ids
  double total_weight = 0.0;
  bool unique = true;

  std::uint64_t mask() const;
};

/// Exhaustive search over every independent set. Throws CapacityError above kMaxVertices.
MwisSolution solve_mwis_exhaustive(const WeightedGraph& g);

/// All 2^n classical energies in ascending order.
std::vector<double> classical_spectrum(const IsingProblem& p);

/// Basis state with the lowest classical energy (lowest index on exact ties).
std::uint64_t classical_ground_state(const IsingProblem& p);

/// Vertices whose spin is up in `state`, ascending.
std::vector<std::size_t> decode_selection(std::uint64_t state, std::size_t n);

}  // namespace xxgap
