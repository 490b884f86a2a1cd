#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "loopyspectra/eigen_oracle.hpp"
#include "loopyspectra/errors.hpp"
#include "loopyspectra/generators.hpp"
#include "loopyspectra/json_io.hpp"
#include "support/oracles.hpp"

using namespace loopyspectra;
namespace ts = loopyspectra::testsupport;

namespace {

constexpr const char* kFixture = LS_TEST_DATA_DIR "/mixed_motif_tree.json";

FactorGraph k3() { return FactorGraph(3, {Motif::triangle(0, 1, 2)}); }
FactorGraph single_edge() { return FactorGraph(2, {Motif::edge(0, 1)}); }
FactorGraph path3() {
  return FactorGraph(3, {Motif::edge(0, 1), Motif::edge(1, 2)});
}

void check_close(const std::vector<double>& got,
                 const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got[i] - want[i]) < tol);
  }
}

}  // namespace

TEST_CASE("small spectra come out exactly") {
  check_close(diagonalize(k3()).eigenvalues, {-1.0, -1.0, 2.0}, 1e-10);
  check_close(diagonalize(single_edge()).eigenvalues, {-1.0, 1.0}, 1e-10);
  const double s2 = std::numbers::sqrt2;
  check_close(diagonalize(path3()).eigenvalues, {-s2, 0.0, s2}, 1e-10);
  check_close(diagonalize(FactorGraph(3, {})).eigenvalues, {0.0, 0.0, 0.0},
              1e-12);
}

TEST_CASE("eigen report invariants on larger networks") {
  for (const auto& fg :
       {gen_regular_edge_triangle(60, 11), gen_poisson_edge_triangle(60, 2, 2, 12),
        load_network(kFixture)}) {
    const EigenReport rep = diagonalize(fg);
    REQUIRE(rep.eigenvalues.size() ==
            static_cast<std::size_t>(fg.node_count()));
    double sum = 0.0;
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
      sum += rep.eigenvalues[i];
      if (i > 0) CHECK(rep.eigenvalues[i] >= rep.eigenvalues[i - 1]);
    }
    CHECK(std::abs(sum) < 1e-8);

    const std::size_t bins = rep.histogram_density.size();
    REQUIRE(rep.histogram_edges.size() == bins + 1);
    CHECK(rep.histogram_edges.front() ==
          doctest::Approx(rep.eigenvalues.front() - 0.5));
    CHECK(rep.histogram_edges.back() >= rep.eigenvalues.back() + 0.5 - 1e-12);
    double mass = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      CHECK(rep.histogram_edges[b + 1] - rep.histogram_edges[b] ==
            doctest::Approx(0.1));
      mass += rep.histogram_density[b] *
              (rep.histogram_edges[b + 1] - rep.histogram_edges[b]);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("diagonalize validates its inputs") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc{};
  };
  FactorGraph fg = gen_poisson_edge_triangle(60, 2, 2, 13);
  CHECK(code_of([&] { (void)diagonalize(fg, 50); }) == Errc::too_large);
  CHECK(code_of([&] { (void)diagonalize(fg, 5000, 0.0); }) ==
        Errc::invalid_argument);
}

TEST_CASE("trace moments match eigenvalue power sums") {
  for (const auto& fg :
       {k3(), single_edge(), path3(), load_network(kFixture),
        gen_regular_edge_triangle(60, 14), gen_poisson_edge_triangle(60, 2, 2, 15)}) {
    const EigenReport rep = diagonalize(fg);
    const std::vector<double> moments = trace_moments(fg, 12);
    REQUIRE(moments.size() == 13);
    for (int r = 0; r <= 12; ++r) {
      double power_sum = 0.0;
      for (const double lambda : rep.eigenvalues) {
        power_sum += std::pow(lambda, r);
      }
      power_sum /= static_cast<double>(rep.eigenvalues.size());
      CHECK(std::abs(moments[r] - power_sum) <=
            1e-6 * std::max({1.0, std::abs(moments[r]), std::abs(power_sum)}));
    }
  }
}

TEST_CASE("trace moment values on known networks") {
  const std::vector<double> m_k3 = trace_moments(k3(), 12);
  CHECK(m_k3[0] == doctest::Approx(1.0));
  CHECK(m_k3[1] == doctest::Approx(0.0));
  CHECK(m_k3[2] == doctest::Approx(2.0));
  CHECK(m_k3[3] == doctest::Approx(2.0));  // 6 closed triangle walks / 3
  CHECK(m_k3[12] == doctest::Approx((4096.0 + 2.0) / 3.0));

  const std::vector<double> m_edge = trace_moments(single_edge(), 4);
  CHECK(m_edge[1] == doctest::Approx(0.0));
  CHECK(m_edge[2] == doctest::Approx(1.0));
  CHECK(m_edge[3] == doctest::Approx(0.0));
  CHECK(m_edge[4] == doctest::Approx(1.0));

  // Mean degree of the mixed fixture is 24/10.
  CHECK(trace_moments(load_network(kFixture), 2)[2] == doctest::Approx(2.4));

  CHECK_THROWS_AS((void)trace_moments(k3(), 13), Error);
  CHECK_THROWS_AS((void)trace_moments(k3(), -1), Error);
}

TEST_CASE("smoothed density behaves like a Lorentzian mixture") {
  // Isolated nodes put all eigenvalues at zero.
  const EigenReport rep = diagonalize(FactorGraph(3, {}));
  const double peak = smoothed_density(rep, {0.0}, 0.01)[0];
  CHECK(peak == doctest::Approx(1.0 / (0.01 * std::numbers::pi)));

  // Mass over a wide window is 1 - O(eta/X).
  const EigenReport edge_rep = diagonalize(single_edge());
  std::vector<double> grid;
  for (int i = 0; i <= 6000; ++i) grid.push_back(0.01 * (i - 3000));
  const std::vector<double> dens = smoothed_density(edge_rep, grid, 0.1);
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    mass += 0.5 * (dens[i] + dens[i + 1]) * (grid[i + 1] - grid[i]);
  }
  CHECK(mass > 0.995);
  CHECK(mass < 1.0005);

  // A symmetric spectrum gives a symmetric density.
  const std::size_t last = grid.size() - 1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(dens[i] - dens[last - i]) < 1e-12);
  }

  CHECK_THROWS_AS((void)smoothed_density(edge_rep, grid, 0.0), Error);
}

TEST_CASE("smoothed density agrees with the dense resolvent") {
  const FactorGraph fg = load_network(kFixture);
  const EigenReport rep = diagonalize(fg);
  const AdjacencyView av = adjacency(fg);
  for (const double x : {-2.1, -0.7, 0.3, 1.9}) {
    const double via_eigs = smoothed_density(rep, {x}, 0.3)[0];
    const double via_lu =
        ts::resolvent_density(av, std::complex<double>(x, 0.3)).imag();
    CHECK(std::abs(via_eigs - via_lu) < 1e-8);
  }
}

TEST_CASE("excursion counts on isolated motifs") {
  const FactorGraph edge = single_edge();
  CHECK(count_excursions(edge, 0, 0, 2) == 1);
  CHECK(count_excursions(edge, 0, 0, 3) == 0);
  CHECK(count_excursions(edge, 0, 0, 4) == 0);
  CHECK(count_excursions(edge, 0, 0, 1) == 0);
  CHECK(count_excursions(edge, 0, 0, 0) == 0);

  // In an isolated triangle the interior alternates between the two other
  // corners, so every length has exactly two excursions.
  const FactorGraph tri = k3();
  for (int r = 2; r <= 5; ++r) {
    CHECK(count_excursions(tri, 0, 0, r) == 2);
  }
}

TEST_CASE("excursions may wander outside the motif") {
  // Edge {0,1} plus triangle {1,2,3}: from node 0 the walk leaves over the
  // edge motif and can loop around the triangle before coming back.
  const FactorGraph fg(4, {Motif::edge(0, 1), Motif::triangle(1, 2, 3)});
  CHECK(count_excursions(fg, 0, 0, 2) == 1);
  CHECK(count_excursions(fg, 0, 0, 3) == 0);
  CHECK(count_excursions(fg, 0, 0, 4) == 2);  // 0-1-2-1-0 and 0-1-3-1-0
  CHECK(count_excursions(fg, 1, 1, 4) == 2);  // 1-2-3-2-1 and 1-3-2-3-1
  // 0-1, four-step closed walk at 1 inside the triangle, 1-0: (A^4)_{11} = 6.
  CHECK(count_excursions(fg, 0, 0, 6) == 6);
}

TEST_CASE("second-order excursions sum to the degree") {
  const FactorGraph fg = load_network(kFixture);
  const AdjacencyView av = adjacency(fg);
  for (NodeId u = 0; u < fg.node_count(); ++u) {
    std::int64_t total = 0;
    for (const Incidence& inc : fg.incident(u)) {
      total += count_excursions(fg, u, inc.motif, 2);
    }
    CHECK(total == av.degrees[u]);
  }
}

TEST_CASE("excursion counting validates its inputs") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc{};
  };
  const FactorGraph tri = k3();
  CHECK(code_of([&] { (void)count_excursions(tri, 0, 0, 13); }) ==
        Errc::too_deep);
  CHECK(code_of([&] { (void)count_excursions(tri, 0, 5, 2); }) ==
        Errc::invalid_argument);
  const FactorGraph big = gen_poisson_edge_triangle(60, 2, 2, 16);
  CHECK(code_of([&] { (void)count_excursions(big, 0, 0, 2); }) ==
        Errc::too_large);

  // Node 3 is not a member of the edge motif {0,1}.
  const FactorGraph fg(4, {Motif::edge(0, 1), Motif::triangle(1, 2, 3)});
  CHECK(code_of([&] { (void)count_excursions(fg, 3, 0, 2); }) ==
        Errc::invalid_argument);
}

TEST_CASE("converged messages match the excursion series") {
  // Single edge at z = 10: mu = 1/10 exactly and the series terminates.
  CHECK(series_check(single_edge(), 0, 0, 10.0, 5) < 1e-8);

  // Isolated triangle: N_r = 2 for every r, so truncating at r_max = 8
  // leaves a geometric tail of 2e-8/0.9; the bound (2/10)^8/(1 - 2/10) is
  // far looser.
  const double resid = series_check(k3(), 0, 0, 10.0, 8);
  CHECK(resid < std::pow(0.2, 8) / 0.8);
  CHECK(resid == doctest::Approx(2e-8 / 0.9).epsilon(1e-3));

  // Mixed fixture, cycle motif from node 3; max degree 4, z = 12.
  const FactorGraph fg = load_network(kFixture);
  const double ratio = 4.0 / 12.0;
  for (const Incidence& inc : fg.incident(3)) {
    CHECK(series_check(fg, 3, inc.motif, 12.0, 6) <
          std::pow(ratio, 6) / (1.0 - ratio));
  }
}

TEST_CASE("series check validates its inputs") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc{};
  };
  CHECK(code_of([&] { (void)series_check(k3(), 0, 0, 3.0, 8); }) ==
        Errc::invalid_argument);
  CHECK(code_of([&] { (void)series_check(k3(), 0, 0, 10.0, 1); }) ==
        Errc::invalid_argument);
  CHECK(code_of([&] { (void)series_check(k3(), 0, 0, 10.0, 13); }) ==
        Errc::invalid_argument);
  CHECK(code_of([&] { (void)series_check(k3(), 2, 1, 10.0, 8); }) ==
        Errc::invalid_argument);
}
