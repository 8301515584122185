#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "xxgap/encoder.hpp"

namespace xxgap {

struct NoCatalyst {};

/// J_c * sum over problem edges of X_i X_j. Negative strength is stoquastic.
struct XXCatalyst {
  double strength = -1.0;
};

using Catalyst = std::variant<NoCatalyst, XXCatalyst>;

struct AnnealSpec {
  Catalyst catalyst = NoCatalyst{};
  std::size_t grid_points = 501;
  double refine_tolerance = 1e-6;

  double catalyst_strength() const;
  double grid_spacing() const { return 1.0 / static_cast<double>(grid_points - 1); }
  /// Throws ParameterError unless grid_points >= 3 and 0 < refine_tolerance < spacing.
  void validate() const;

  static AnnealSpec catalyst_free(std::size_t grid_points = 501);
  static AnnealSpec with_xx(double strength, std::size_t grid_points = 501);
};

/// Term storage cap; the dense materialization cap is lower.
inline constexpr std::size_t kMaxTermQubits = 24;
inline constexpr std::size_t kMaxDenseQubits = 12;

/// H(s) = (1 - s) H_D + s H_P + s (1 - s) H_C on the 2^n computational basis.
///
/// Basis index b has bit i set when spin i points up. The problem part is the
/// diagonal, the driver -sum X_i flips one bit, each catalyst term flips the two
/// endpoint bits of an edge. Coefficients are stored without their s-dependent
/// prefactors, so one set of terms serves every s.
class OperatorTerms {
 public:
  OperatorTerms() = default;
  OperatorTerms(std::size_t qubits, std::vector<double> diagonal, std::vector<std::uint32_t> catalyst_masks,
                double catalyst_strength);

  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return diagonal_.size(); }
  std::span<const double> diagonal() const noexcept { return diagonal_; }
  std::span<const std::uint32_t> catalyst_masks() const noexcept { return catalyst_masks_; }
  double catalyst_strength() const noexcept { return catalyst_strength_; }

  double driver_weight(double s) const noexcept { return 1.0 - s; }
  double problem_weight(double s) const noexcept { return s; }
  double catalyst_weight(double s) const noexcept { return s * (1.0 - s) * catalyst_strength_; }

  /// True when H(s) has no off-diagonal entries.
  bool is_diagonal_at(double s) const noexcept;

  /// out = H(s) in. Throws ShapeError on size mismatch, ParameterError for s outside [0, 1].
  void apply(double s, std::span<const double> in, std::span<double> out) const;

  /// Copy with every diagonal entry shifted by `offset`.
  OperatorTerms with_diagonal_offset(double offset) const;

 private:
  std::size_t qubits_ = 0;
  std::vector<double> diagonal_;
  std::vector<std::uint32_t> catalyst_masks_;
  double catalyst_strength_ = 0.0;
};

/// Throws CapacityError for more than kMaxTermQubits spins.
OperatorTerms build_terms(const IsingProblem& problem, const AnnealSpec& spec);

std::vector<double> apply(const OperatorTerms& terms, double s, std::span<const double> v);

/// Dense H(s). Throws CapacityError above kMaxDenseQubits.
Eigen::MatrixXd materialize_dense(const OperatorTerms& terms, double s);

}  // namespace xxgap
