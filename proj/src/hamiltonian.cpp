#include "xxgap/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "xxgap/errors.hpp"

namespace xxgap {

namespace {

// out[b] += coefficient * in[b ^ mask]. Indices below the lowest set bit of
// the mask are untouched by the xor, so the work splits into contiguous runs.
void add_flipped(std::uint32_t mask, double coefficient, std::span<const double> in, std::span<double> out) {
  const std::size_t dim = in.size();
  const std::size_t run = std::size_t{1} << std::countr_zero(mask);
  if (run >= 4 || dim < 4) {
    for (std::size_t block = 0; block < dim; block += run) {
      const double* src = in.data() + (block ^ mask);
      double* dst = out.data() + block;
      for (std::size_t t = 0; t < run; ++t) dst[t] += coefficient * src[t];
    }
    return;
  }
  // Low mask bits permute within aligned groups of four.
  const std::uint32_t low = mask & 3u;
  const std::uint32_t high = mask & ~3u;
  for (std::size_t block = 0; block < dim; block += 4) {
    const double* src = in.data() + (block ^ high);
    double* dst = out.data() + block;
    dst[0] += coefficient * src[0 ^ low];
    dst[1] += coefficient * src[1 ^ low];
    dst[2] += coefficient * src[2 ^ low];
    dst[3] += coefficient * src[3 ^ low];
  }
}

}  // namespace

double AnnealSpec::catalyst_strength() const {
  if (const auto* xx = std::get_if<XXCatalyst>(&catalyst)) return xx->strength;
  return 0.0;
}

void AnnealSpec::validate() const {
  if (grid_points < 3) throw ParameterError("grid needs at least 3 points");
  if (!(refine_tolerance > 0.0 && refine_tolerance < grid_spacing())) {
    throw ParameterError("refine tolerance must be positive and below the grid spacing");
  }
  if (!std::isfinite(catalyst_strength())) throw ParameterError("catalyst strength must be finite");
}

AnnealSpec AnnealSpec::catalyst_free(std::size_t grid_points) {
  AnnealSpec spec;
  spec.grid_points = grid_points;
  return spec;
}

AnnealSpec AnnealSpec::with_xx(double strength, std::size_t grid_points) {
  AnnealSpec spec;
  spec.catalyst = XXCatalyst{strength};
  spec.grid_points = grid_points;
  return spec;
}

OperatorTerms::OperatorTerms(std::size_t qubits, std::vector<double> diagonal,
                             std::vector<std::uint32_t> catalyst_masks, double catalyst_strength)
    : qubits_(qubits),
      diagonal_(std::move(diagonal)),
      catalyst_masks_(std::move(catalyst_masks)),
      catalyst_strength_(catalyst_strength) {
  if (qubits_ > kMaxTermQubits) throw CapacityError("too many qubits for term storage");
  if (diagonal_.size() != (std::size_t{1} << qubits_)) throw ShapeError("diagonal size is not 2^qubits");
}

bool OperatorTerms::is_diagonal_at(double s) const noexcept {
  const bool no_driver = driver_weight(s) == 0.0 || qubits_ == 0;
  const bool no_catalyst = catalyst_weight(s) == 0.0 || catalyst_masks_.empty();
  return no_driver && no_catalyst;
}

void OperatorTerms::apply(double s, std::span<const double> in, std::span<double> out) const {
  const std::size_t dim = dimension();
  if (in.size() != dim || out.size() != dim) {
    throw ShapeError("vector size " + std::to_string(in.size()) + "/" + std::to_string(out.size()) +
                     " does not match dimension " + std::to_string(dim));
  }
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("anneal parameter outside [0, 1]");

  const double problem = problem_weight(s);
  for (std::size_t b = 0; b < dim; ++b) out[b] = problem * diagonal_[b] * in[b];

  const double driver = -driver_weight(s);
  if (driver != 0.0) {
    for (std::size_t i = 0; i < qubits_; ++i) add_flipped(std::uint32_t{1} << i, driver, in, out);
  }

  const double catalyst = catalyst_weight(s);
  if (catalyst != 0.0) {
    for (std::uint32_t mask : catalyst_masks_) add_flipped(mask, catalyst, in, out);
  }
}

OperatorTerms OperatorTerms::with_diagonal_offset(double offset) const {
  OperatorTerms copy = *this;
  for (auto& d : copy.diagonal_) d += offset;
  return copy;
}

OperatorTerms build_terms(const IsingProblem& problem, const AnnealSpec& spec) {
  if (problem.n > kMaxTermQubits) {
    throw CapacityError(std::to_string(problem.n) + " spins exceed the term storage cap of " +
                        std::to_string(kMaxTermQubits));
  }
  if (problem.bias.size() != problem.n) throw ShapeError("bias vector does not match spin count");

  const std::size_t dim = std::size_t{1} << problem.n;
  std::vector<double> diagonal(dim);
  for (std::size_t b = 0; b < dim; ++b) diagonal[b] = problem.energy(b);

  std::vector<std::uint32_t> masks;
  if (std::holds_alternative<XXCatalyst>(spec.catalyst)) {
    masks.reserve(problem.edges.size());
    for (const auto& e : problem.edges) masks.push_back((1u << e.u) | (1u << e.v));
  }
  return OperatorTerms(problem.n, std::move(diagonal), std::move(masks), spec.catalyst_strength());
}

std::vector<double> apply(const OperatorTerms& terms, double s, std::span<const double> v) {
  std::vector<double> out(terms.dimension());
  terms.apply(s, v, out);
  return out;
}

Eigen::MatrixXd materialize_dense(const OperatorTerms& terms, double s) {
  if (terms.qubits() > kMaxDenseQubits) {
    throw CapacityError(std::to_string(terms.qubits()) + " qubits exceed the dense cap of " +
                        std::to_string(kMaxDenseQubits));
  }
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("anneal parameter outside [0, 1]");

  const auto dim = static_cast<Eigen::Index>(terms.dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const auto diag = terms.diagonal();
  for (Eigen::Index b = 0; b < dim; ++b) h(b, b) = terms.problem_weight(s) * diag[b];

  const double driver = -terms.driver_weight(s);
  for (std::size_t i = 0; i < terms.qubits(); ++i) {
    const Eigen::Index mask = Eigen::Index{1} << i;
    for (Eigen::Index b = 0; b < dim; ++b) h(b, b ^ mask) += driver;
  }
  const double catalyst = terms.catalyst_weight(s);
  for (std::uint32_t mask : terms.catalyst_masks()) {
    for (Eigen::Index b = 0; b < dim; ++b) h(b, b ^ static_cast<Eigen::Index>(mask)) += catalyst;
  }
  return h;
}

}  // namespace xxgap
