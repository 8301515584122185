#include <doctest.h>

#include <algorithm>

#include "xxgap/encoder.hpp"
#include "xxgap/errors.hpp"
#include "xxgap/graph.hpp"
#include "xxgap/hamiltonian.hpp"
#include "xxgap/oracle.hpp"
#include "xxgap/random.hpp"
#include "xxgap/spectrum.hpp"

using namespace xxgap;

namespace {

// Plain subset scan, no pruning.
struct Brute {
  double best = -1.0;
  std::uint64_t arg = 0;
  int ties = 0;
};

Brute brute_mwis(const WeightedGraph& g) {
  Brute r;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << g.n); ++b) {
    bool ok = true;
    for (const auto& e : g.edges) ok = ok && !(((b >> e.u) & 1u) && ((b >> e.v) & 1u));
    if (!ok) continue;
    double w = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) w += ((b >> i) & 1u) ? g.weights[i] : 0.0;
    if (w > r.best + 1e-9) {
      r = {w, b, 1};
    } else if (w > r.best - 1e-9) {
      ++r.ties;
    }
  }
  return r;
}

}  // namespace

TEST_CASE("small MWIS examples") {
  {
    const auto s = solve_mwis_exhaustive({3, {{0, 1}, {0, 2}, {1, 2}}, {0.5, 0.7, 0.9}});
    CHECK(s.selected == std::vector<std::size_t>{2});
    CHECK(s.total_weight == doctest::Approx(0.9));
    CHECK(s.unique);
  }
  {
    // Path 0-1-2: the two ends beat the middle.
    const auto s = solve_mwis_exhaustive({3, {{0, 1}, {1, 2}}, {0.4, 0.7, 0.5}});
    CHECK(s.selected == std::vector<std::size_t>{0, 2});
    CHECK(s.mask() == 0b101);
  }
  {
    const auto s = solve_mwis_exhaustive({4, {}, {0.1, 0.2, 0.3, 0.4}});
    CHECK(s.selected.size() == 4);
    CHECK(s.total_weight == doctest::Approx(1.0));
  }
}

TEST_CASE("ties are flagged") {
  CHECK_FALSE(solve_mwis_exhaustive({2, {{0, 1}}, {0.5, 0.5}}).unique);
  // A zero-weight isolated vertex can be added or left out.
  CHECK_FALSE(solve_mwis_exhaustive({2, {}, {0.0, 0.5}}).unique);
  CHECK(solve_mwis_exhaustive({2, {{0, 1}}, {0.5, 0.5 + 1e-6}}).unique);
}

TEST_CASE("exhaustive search agrees with a plain scan") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Engine rng(seed);
    const std::size_t n = 1 + uniform_index(rng, 14);
    const auto g = n >= 2 && seed % 2 ? generate_ba(n, 1 + uniform_index(rng, n - 1), seed)
                                      : generate_er(n, uniform01(rng), seed);
    const auto s = solve_mwis_exhaustive(g);
    const auto b = brute_mwis(g);
    REQUIRE(s.total_weight == doctest::Approx(b.best).epsilon(1e-12));
    REQUIRE(s.unique == (b.ties == 1));
    if (s.unique) REQUIRE(s.mask() == b.arg);
  }
}

TEST_CASE("classical spectrum is sorted and complete") {
  const auto p = encode_mwis(generate_er(8, 0.5, 3), 1.4);
  const auto e = classical_spectrum(p);
  REQUIRE(e.size() == 256);
  CHECK(std::is_sorted(e.begin(), e.end()));
  std::vector<double> direct;
  for (std::uint64_t b = 0; b < 256; ++b) direct.push_back(p.energy(b));
  std::sort(direct.begin(), direct.end());
  CHECK(direct == e);
  CHECK(p.energy(classical_ground_state(p)) == e.front());
}

TEST_CASE("s = 1 spectrum matches the classical one") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = encode_mwis(generate_ba(9, 2, seed), draw_coupling(seed));
    const auto e = classical_spectrum(p);
    const auto pair = lowest_two(build_terms(p, AnnealSpec::with_xx(-1.0)), 1.0);
    CHECK(std::abs(pair.e0 - e[0]) <= 1e-10);
    CHECK(std::abs(pair.e1 - e[1]) <= 1e-10);
  }
}

TEST_CASE("ground state on exact ties takes the lowest index") {
  IsingProblem p;
  p.n = 2;
  p.bias = {0.0, 0.0};
  CHECK(classical_ground_state(p) == 0);
}

TEST_CASE("decode") {
  CHECK(decode_selection(0, 5).empty());
  CHECK(decode_selection(0b10110, 5) == std::vector<std::size_t>{1, 2, 4});
  CHECK(decode_selection(0b10110, 3) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("capacity") {
  WeightedGraph g{25, {}, std::vector<double>(25, 0.5)};
  CHECK_THROWS_AS(solve_mwis_exhaustive(g), CapacityError);
  IsingProblem p;
  p.n = 25;
  p.bias.assign(25, 0.0);
  CHECK_THROWS_AS(classical_spectrum(p), CapacityError);
}
