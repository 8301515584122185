#include "xxgap/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "xxgap/errors.hpp"
#include "xxgap/golden.hpp"
#include "xxgap/random.hpp"

namespace xxgap {

namespace {

LowestPair from_diagonal(const OperatorTerms& terms, double s) {
  const auto diag = terms.diagonal();
  std::vector<double> values(diag.begin(), diag.end());
  std::partial_sort(values.begin(), values.begin() + 2, values.end());
  return {terms.problem_weight(s) * values[0], terms.problem_weight(s) * values[1]};
}

// Solves (T - shift I) x = rhs for symmetric tridiagonal T (diagonal d,
// off-diagonal e) by Gaussian elimination with partial pivoting. rhs is
// overwritten with the solution. Zero pivots are replaced by `tiny`.
void solve_shifted_tridiagonal(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double shift, double tiny,
                               Eigen::VectorXd& rhs) {
  const Eigen::Index n = d.size();
  Eigen::VectorXd diag = d.array() - shift;
  Eigen::VectorXd lower = e;
  Eigen::VectorXd upper = e;
  Eigen::VectorXd upper2 = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 2, 0));
  std::vector<bool> swapped(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)), false);

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(diag(i)) >= std::abs(lower(i))) {
      if (diag(i) == 0.0) diag(i) = tiny;
      const double factor = lower(i) / diag(i);
      lower(i) = factor;
      diag(i + 1) -= factor * upper(i);
    } else {
      const double factor = diag(i) / lower(i);
      diag(i) = lower(i);
      lower(i) = factor;
      const double carried = upper(i);
      upper(i) = diag(i + 1);
      diag(i + 1) = carried - factor * diag(i + 1);
      if (i + 2 < n) {
        upper2(i) = upper(i + 1);
        upper(i + 1) = -factor * upper(i + 1);
      }
      swapped[static_cast<std::size_t>(i)] = true;
    }
  }
  if (diag(n - 1) == 0.0) diag(n - 1) = tiny;

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (swapped[static_cast<std::size_t>(i)]) {
      const double carried = rhs(i);
      rhs(i) = rhs(i + 1);
      rhs(i + 1) = carried - lower(i) * rhs(i);
    } else {
      rhs(i + 1) -= lower(i) * rhs(i);
    }
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double acc = rhs(i);
    if (i + 1 < n) acc -= upper(i) * rhs(i + 1);
    if (i + 2 < n) acc -= upper2(i) * rhs(i + 2);
    rhs(i) = acc / diag(i);
  }
}

// |last component| of the unit eigenvector of T for eigenvalue theta, by two
// steps of inverse iteration.
double last_component(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double theta, double scale) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double shift = theta - 4.0 * eps * scale;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(d.size());
  for (int it = 0; it < 2; ++it) {
    solve_shifted_tridiagonal(d, e, shift, eps * scale, x);
    x /= x.norm();
  }
  return std::abs(x(d.size() - 1));
}

// Eigenvalues of the symmetric tridiagonal (d, off-diagonal squares e2) at
// the given ascending positions, by Sturm-count bisection. The four searches
// share one pass over the matrix per halving.
std::array<double, 4> tridiagonal_eigenvalues(std::span<const double> d, std::span<const double> e2,
                                              const std::array<std::size_t, 4>& index) {
  const std::size_t n = d.size();
  double lo_bound = d[0];
  double hi_bound = d[0];
  double e2_max = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::sqrt(e2[i - 1]) : 0.0) + (i + 1 < n ? std::sqrt(e2[i]) : 0.0);
    lo_bound = std::min(lo_bound, d[i] - radius);
    hi_bound = std::max(hi_bound, d[i] + radius);
    if (i + 1 < n) e2_max = std::max(e2_max, e2[i]);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivmin = std::numeric_limits<double>::min() * e2_max;
  const double span_eps = eps * std::max(std::abs(lo_bound), std::abs(hi_bound));
  lo_bound -= 2.0 * span_eps;
  hi_bound += 2.0 * span_eps;

  std::array<double, 4> lo;
  std::array<double, 4> hi;
  lo.fill(lo_bound);
  hi.fill(hi_bound);
  for (int iteration = 0; iteration < 200; ++iteration) {
    std::array<double, 4> mid;
    bool done = true;
    for (std::size_t l = 0; l < 4; ++l) {
      mid[l] = 0.5 * (lo[l] + hi[l]);
      const double width = hi[l] - lo[l];
      done = done && width <= 2.0 * eps * std::max(std::abs(lo[l]), std::abs(hi[l])) + pivmin;
    }
    if (done) break;

    std::array<double, 4> q;
    std::array<std::size_t, 4> below{};
    for (std::size_t l = 0; l < 4; ++l) {
      q[l] = d[0] - mid[l];
      if (std::abs(q[l]) < pivmin) q[l] = -pivmin;
      below[l] += q[l] < 0.0;
    }
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t l = 0; l < 4; ++l) {
        q[l] = (d[i] - mid[l]) - e2[i - 1] / q[l];
        if (std::abs(q[l]) < pivmin) q[l] = -pivmin;
        below[l] += q[l] < 0.0;
      }
    }
    for (std::size_t l = 0; l < 4; ++l) {
      if (below[l] > index[l]) {
        hi[l] = mid[l];
      } else {
        lo[l] = mid[l];
      }
    }
  }
  std::array<double, 4> out;
  for (std::size_t l = 0; l < 4; ++l) out[l] = 0.5 * (lo[l] + hi[l]);
  return out;
}

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("anneal parameter outside [0, 1]");
}

}  // namespace

LowestPair lowest_two_dense(const OperatorTerms& terms, double s) {
  check_s(s);
  const Eigen::MatrixXd h = materialize_dense(terms, s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge", s);
  return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

LowestPair lowest_two_lanczos(const OperatorTerms& terms, double s, const SolverOptions& options) {
  check_s(s);
  const auto dim = static_cast<Eigen::Index>(terms.dimension());
  if (terms.is_diagonal_at(s)) return from_diagonal(terms, s);
  if (dim <= 4) return lowest_two_dense(terms, s);

  const double eps = std::numeric_limits<double>::epsilon();
  const double sqrt_eps = std::sqrt(eps);
  const double eps_n = eps * std::sqrt(static_cast<double>(dim));

  const Eigen::Index max_steps = std::min<Eigen::Index>(dim, static_cast<Eigen::Index>(options.max_krylov));
  Eigen::MatrixXd basis(dim, max_steps);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis vectors j and j + 1
  std::vector<double> beta2;
  alpha.reserve(static_cast<std::size_t>(max_steps));
  beta.reserve(static_cast<std::size_t>(max_steps));
  beta2.reserve(static_cast<std::size_t>(max_steps));

  Engine rng(0x1a2c05ULL ^ static_cast<std::uint64_t>(dim));
  auto orthogonalize = [&](Eigen::VectorXd& v, Eigen::Index filled) {
    if (filled == 0) return;
    const auto q = basis.leftCols(filled);
    double before = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      v.noalias() -= q * (q.transpose() * v);
      const double after = v.norm();
      if (after > 0.7 * before) break;
      before = after;
    }
  };
  auto random_unit = [&](Eigen::Index filled) {
    Eigen::VectorXd v(dim);
    for (Eigen::Index b = 0; b < dim; ++b) v(b) = uniform(rng, -1.0, 1.0);
    orthogonalize(v, filled);
    return Eigen::VectorXd(v / v.norm());
  };

  // Partial reorthogonalization: omega estimates |<v_{j+1}, v_i>| through
  // Simon's recurrence. Once an estimate passes sqrt(eps) the next two
  // vectors are orthogonalized against the whole basis, which keeps the basis
  // semi-orthogonal and the Ritz values free of spurious copies.
  std::vector<double> omega_prev;
  std::vector<double> omega_cur{1.0};
  std::vector<double> omega_next;
  bool reorthogonalize_next = false;

  basis.col(0) = random_unit(0);
  Eigen::VectorXd w(dim);
  double norm_estimate = 1.0;
  Eigen::Index last_check = 0;

  for (Eigen::Index j = 0; j < max_steps; ++j) {
    const auto vj = basis.col(j);
    terms.apply(s, std::span<const double>(vj.data(), static_cast<std::size_t>(dim)),
                std::span<double>(w.data(), static_cast<std::size_t>(dim)));
    double a = vj.dot(w);
    w -= a * vj;
    if (j > 0) w -= beta.back() * basis.col(j - 1);
    const double local = vj.dot(w);
    w -= local * vj;
    a += local;
    alpha.push_back(a);
    double b = w.norm();
    norm_estimate = std::max(norm_estimate, std::abs(a) + b + (j > 0 ? beta.back() : 0.0));

    const auto k = static_cast<std::size_t>(j);
    omega_next.assign(k + 2, 0.0);
    bool lost = false;
    if (b > 0.0) {
      for (std::size_t i = 0; i < k; ++i) {
        double t = beta[i] * omega_cur[i + 1] + (alpha[i] - a) * omega_cur[i] - beta[k - 1] * omega_prev[i];
        if (i > 0) t += beta[i - 1] * omega_cur[i - 1];
        omega_next[i] = (t + std::copysign(eps_n * norm_estimate, t)) / b;
        lost = lost || std::abs(omega_next[i]) > sqrt_eps;
      }
      omega_next[k] = eps_n * norm_estimate / b;
      lost = lost || std::abs(omega_next[k]) > sqrt_eps;
    }
    if (lost || reorthogonalize_next) {
      orthogonalize(w, j + 1);
      b = w.norm();
      std::fill(omega_next.begin(), omega_next.end() - 1, eps_n);
      reorthogonalize_next = !reorthogonalize_next;
    }
    omega_next[k + 1] = 1.0;

    const bool exhausted = b <= 1e-13 * norm_estimate;
    const Eigen::Index steps = j + 1;
    const bool last = steps == max_steps;

    // Ritz checks cost O(steps^2); space them out geometrically.
    const bool check_due = steps >= 10 && steps - last_check >= std::max<Eigen::Index>(4, steps / 8);
    if (steps >= 3 && (exhausted || last || check_due)) {
      last_check = steps;
      const auto k_steps = static_cast<std::size_t>(steps);
      const auto theta = tridiagonal_eigenvalues(std::span<const double>(alpha.data(), k_steps),
                                                 std::span<const double>(beta2.data(), k_steps - 1),
                                                 {0, 1, 2, k_steps - 1});
      const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), steps);
      const Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(beta.data(), steps - 1);
      const double scale = std::max({1.0, std::abs(theta[0]), std::abs(theta[3])});

      // Residual norms of the Ritz pairs. Each Ritz value is within its
      // residual of an eigenvalue, and within residual^2 / separation once the
      // neighbouring Ritz values are resolved. For a near-degenerate pair the
      // pair's combined residual over its distance to the third value applies.
      const double r0 = b * last_component(d, e, theta[0], scale);
      const double r1 = b * last_component(d, e, theta[1], scale);
      const double low_gap = theta[1] - theta[0];
      const double high_gap = theta[2] - theta[1];
      auto quadratic = [](double r, double sep) {
        return sep > 0.0 ? r * r / sep : std::numeric_limits<double>::infinity();
      };
      const double pair = quadratic(std::hypot(r0, r1), high_gap);
      const double err0 = std::min({r0, quadratic(r0, low_gap - r1), pair});
      const double err1 = std::min({r1, quadratic(r1, std::min(low_gap - r0, high_gap)), pair});
      const double bound = options.tolerance * scale;
      if ((err0 <= bound && err1 <= bound) || (exhausted && steps == dim)) return {theta[0], theta[1]};
    }
    if (last) break;

    if (exhausted) {
      // Invariant subspace found; continue in its orthogonal complement.
      beta.push_back(0.0);
      beta2.push_back(0.0);
      basis.col(j + 1) = random_unit(j + 1);
      std::fill(omega_next.begin(), omega_next.end() - 1, eps_n);
    } else {
      beta.push_back(b);
      beta2.push_back(b * b);
      basis.col(j + 1) = w / b;
    }
    omega_prev.swap(omega_cur);
    omega_cur.swap(omega_next);
  }
  throw NumericalError("Lanczos did not converge within " + std::to_string(max_steps) + " steps", s);
}

LowestPair lowest_two(const OperatorTerms& terms, double s, const SolverOptions& options) {
  switch (options.method) {
    case EigenMethod::dense:
      return lowest_two_dense(terms, s);
    case EigenMethod::lanczos:
      return lowest_two_lanczos(terms, s, options);
    case EigenMethod::automatic:
      break;
  }
  if (terms.qubits() <= options.dense_max_qubits && terms.qubits() <= kMaxDenseQubits) {
    return lowest_two_dense(terms, s);
  }
  return lowest_two_lanczos(terms, s, options);
}

GapCurve sweep(const OperatorTerms& terms, const AnnealSpec& spec, const SolverOptions& options) {
  spec.validate();
  GapCurve curve;
  const std::size_t points = spec.grid_points;
  curve.s_values.resize(points);
  curve.e0.resize(points);
  curve.e1.resize(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double s = k + 1 == points ? 1.0 : static_cast<double>(k) / static_cast<double>(points - 1);
    const auto pair = lowest_two(terms, s, options);
    curve.s_values[k] = s;
    curve.e0[k] = pair.e0;
    curve.e1[k] = pair.e1;
  }
  return curve;
}

GapResult min_gap(const GapCurve& curve, const OperatorTerms& terms, const AnnealSpec& spec,
                  const SolverOptions& options) {
  const std::size_t points = curve.size();
  if (points < 3) throw ParameterError("gap curve needs at least 3 points");

  std::vector<std::size_t> minima;
  for (std::size_t k = 0; k < points; ++k) {
    const bool left_ok = k == 0 || curve.gap(k) < curve.gap(k - 1);
    const bool right_ok = k + 1 == points || curve.gap(k) <= curve.gap(k + 1);
    if (left_ok && right_ok) minima.push_back(k);
  }
  // A curve that is flat everywhere has no strict minimum; fall back to its argmin.
  if (minima.empty()) {
    std::size_t arg = 0;
    for (std::size_t k = 1; k < points; ++k) {
      if (curve.gap(k) < curve.gap(arg)) arg = k;
    }
    minima.push_back(arg);
  }
  std::stable_sort(minima.begin(), minima.end(),
                   [&](std::size_t a, std::size_t b) { return curve.gap(a) < curve.gap(b); });
  if (minima.size() > kMaxRefinedMinima) minima.resize(kMaxRefinedMinima);

  ScalarMinimum best{curve.s_values[minima.front()], curve.gap(minima.front())};
  auto gap_at = [&](double s) { return lowest_two(terms, s, options).gap(); };
  for (std::size_t k : minima) {
    const double lo = curve.s_values[k == 0 ? 0 : k - 1];
    const double hi = curve.s_values[k + 1 == points ? k : k + 1];
    const auto refined = golden_section_minimize(gap_at, lo, hi, spec.refine_tolerance);
    if (refined.value < best.value) best = refined;
  }

  GapResult result;
  result.delta = std::max(best.value, 0.0);
  result.s_star = best.x;
  result.degenerate = result.delta < kDegeneracyTolerance;
  return result;
}

GapResult minimum_gap(const OperatorTerms& terms, const AnnealSpec& spec, const SolverOptions& options) {
  return min_gap(sweep(terms, spec, options), terms, spec, options);
}

}  // namespace xxgap
