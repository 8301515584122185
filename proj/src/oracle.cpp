#include "xxgap/oracle.hpp"

#include <algorithm>
#include <limits>

#include "xxgap/errors.hpp"

namespace xxgap {

std::uint64_t MwisSolution::mask() const {
  std::uint64_t m = 0;
  for (std::size_t v : selected) m |= std::uint64_t{1} << v;
  return m;
}

namespace {

void check_capacity(std::size_t n) {
  if (n > kMaxVertices) {
    throw CapacityError(std::to_string(n) + " vertices exceed the enumeration cap of " +
                        std::to_string(kMaxVertices));
  }
}

struct IndependentSetSearch {
  const std::vector<std::uint32_t>& adjacency;
  const std::vector<double>& weights;
  std::size_t n;
  double best = -1.0;
  double runner_up = -std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;

  void record(std::uint32_t mask, double weight) {
    if (weight > best) {
      runner_up = best;
      best = weight;
      best_mask = mask;
    } else if (weight > runner_up) {
      runner_up = weight;
    }
  }

  // Visits every independent set exactly once: vertex v is either left out or
  // taken, and taking it removes its neighbours from the remaining choices.
  void visit(std::size_t v, std::uint32_t chosen, std::uint32_t blocked, double weight) {
    if (v == n) {
      record(chosen, weight);
      return;
    }
    visit(v + 1, chosen, blocked, weight);
    if (!(blocked & (1u << v))) {
      visit(v + 1, chosen | (1u << v), blocked | adjacency[v], weight + weights[v]);
    }
  }
};

}  // namespace

MwisSolution solve_mwis_exhaustive(const WeightedGraph& g) {
  check_capacity(g.n);
  g.validate();
  const auto adjacency = g.adjacency_masks();
  IndependentSetSearch search{adjacency, g.weights, g.n};
  search.visit(0, 0, 0, 0.0);

  MwisSolution sol;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (search.best_mask & (1u << v)) sol.selected.push_back(v);
  }
  sol.total_weight = search.best;
  sol.unique = search.best - search.runner_up >= kWeightTieTolerance;
  return sol;
}

std::vector<double> classical_spectrum(const IsingProblem& p) {
  check_capacity(p.n);
  std::vector<double> energies(std::size_t{1} << p.n);
  for (std::size_t b = 0; b < energies.size(); ++b) energies[b] = p.energy(b);
  std::sort(energies.begin(), energies.end());
  return energies;
}

std::uint64_t classical_ground_state(const IsingProblem& p) {
  check_capacity(p.n);
  std::uint64_t arg = 0;
  double lowest = p.energy(0);
  for (std::uint64_t b = 1; b < (std::uint64_t{1} << p.n); ++b) {
    const double e = p.energy(b);
    if (e < lowest) {
      lowest = e;
      arg = b;
    }
  }
  return arg;
}

std::vector<std::size_t> decode_selection(std::uint64_t state, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v) {
    if ((state >> v) & 1u) out.push_back(v);
  }
  return out;
}

}  // namespace xxgap
