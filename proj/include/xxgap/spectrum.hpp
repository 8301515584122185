#pragma once

#include <cstddef>
#include <vector>

#include "xxgap/hamiltonian.hpp"

namespace xxgap {

/// Gaps below this are treated as exact degeneracies.
inline constexpr double kDegeneracyTolerance = 1e-9;

struct LowestPair {
  double e0 = 0.0;
  double e1 = 0.0;

  double gap() const noexcept { return e1 - e0; }
};

enum class EigenMethod { automatic, dense, lanczos };

struct SolverOptions {
  EigenMethod method = EigenMethod::automatic;
  /// `automatic` uses the dense solver up to this many qubits and Lanczos above.
  std::size_t dense_max_qubits = 6;
  /// Residual bound on both Ritz pairs, relative to the largest Ritz value magnitude.
  double tolerance = 1e-10;
  std::size_t max_krylov = 400;
};

/// Two smallest eigenvalues of H(s), counted with multiplicity.
LowestPair lowest_two(const OperatorTerms& terms, double s, const SolverOptions& options = {});
LowestPair lowest_two_dense(const OperatorTerms& terms, double s);
/// Lanczos with partial reorthogonalization from a fixed pseudo-random start
/// vector. Throws NumericalError if the Krylov budget runs out.
LowestPair lowest_two_lanczos(const OperatorTerms& terms, double s, const SolverOptions& options = {});

struct GapCurve {
  std::vector<double> s_values;
  std::vector<double> e0;
  std::vector<double> e1;

  std::size_t size() const noexcept { return s_values.size(); }
  double gap(std::size_t k) const { return e1[k] - e0[k]; }
};

struct GapResult {
  double delta = 0.0;
  double s_star = 0.0;
  bool degenerate = false;
};

/// Evaluates lowest_two on spec.grid_points uniform points of [0, 1].
GapCurve sweep(const OperatorTerms& terms, const AnnealSpec& spec, const SolverOptions& options = {});

/// Minimum of e1 - e0. Every local minimum of the sampled curve (lowest
/// first, at most kMaxRefinedMinima) is refined by golden-section search on
/// the bracket formed by its grid neighbours.
GapResult min_gap(const GapCurve& curve, const OperatorTerms& terms, const AnnealSpec& spec,
                  const SolverOptions& options = {});

inline constexpr std::size_t kMaxRefinedMinima = 8;

/// sweep followed by min_gap.
GapResult minimum_gap(const OperatorTerms& terms, const AnnealSpec& spec, const SolverOptions& options = {});

}  // namespace xxgap
