#include "loopyspectra/generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "doctest.h"
#include "loopyspectra/json_io.hpp"
#include "loopyspectra/rng.hpp"

using namespace loopyspectra;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error to be thrown");
  return Errc::invalid_argument;
}

// True when every node belongs to exactly one edge motif and one triangle
// motif.
bool one_edge_one_triangle_each(const FactorGraph& fg) {
  for (NodeId u = 0; u < fg.node_count(); ++u) {
    const auto& inc = fg.incident(u);
    if (inc.size() != 2) return false;
    std::set<MotifKind> kinds;
    for (const Incidence& i : inc) kinds.insert(fg.motif(i.motif).kind());
    if (kinds != std::set<MotifKind>{MotifKind::edge, MotifKind::triangle}) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rng derived draws stay within contract bounds") {
  Rng rng(12345);
  for (int i = 0; i < 2000; ++i) {
    CHECK(rng.uniform_below(7) < 7);
    double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(rng.poisson(0.0) == 0);
  CHECK_THROWS_AS(rng.poisson(-1.0), Error);
  CHECK_THROWS_AS(rng.uniform_below(0), Error);
}

TEST_CASE("rng streams are reproducible per seed") {
  Rng a(99), b(99), c(100);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.next();
    all_equal = all_equal && (x == b.next());
    any_diff = any_diff || (x != c.next());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("rng poisson empirical mean is close to the requested mean") {
  Rng rng(7);
  const int trials = 20000;
  std::int64_t total = 0;
  for (int i = 0; i < trials; ++i) total += rng.poisson(2.0);
  double mean = static_cast<double>(total) / trials;
  // Standard error is sqrt(2/20000) = 0.01; allow five sigma.
  CHECK(mean == doctest::Approx(2.0).epsilon(0.026));
}

TEST_CASE("rng shuffle permutes without loss") {
  Rng rng(3);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> want(50);
  std::iota(want.begin(), want.end(), 0);
  CHECK(sorted == want);
}

TEST_CASE("regular edge-triangle n=6 has forced motif counts") {
  FactorGraph fg = gen_regular_edge_triangle(6, 1);
  std::int64_t edges = 0, triangles = 0;
  for (const Motif& mo : fg.motifs()) {
    if (mo.kind() == MotifKind::edge) ++edges;
    if (mo.kind() == MotifKind::triangle) ++triangles;
  }
  CHECK(edges == 3);
  CHECK(triangles == 2);
  CHECK(one_edge_one_triangle_each(fg));
  AdjacencyView av = adjacency(fg);
  for (std::int64_t d : av.degrees) CHECK(d == 3);
  CHECK_FALSE(av.has_duplicate_edges);
}

TEST_CASE("regular edge-triangle rejects node counts off the lattice") {
  CHECK(code_of([] { gen_regular_edge_triangle(7, 1); }) ==
        Errc::not_multiple_of_six);
  CHECK(code_of([] { gen_regular_edge_triangle(0, 1); }) ==
        Errc::not_multiple_of_six);
  CHECK(code_of([] { gen_regular_edge_triangle(-6, 1); }) ==
        Errc::not_multiple_of_six);
}

TEST_CASE("regular edge-triangle realizations are simple and 3-regular") {
  for (std::uint64_t seed : {2u, 3u, 4u, 5u}) {
    FactorGraph fg = gen_regular_edge_triangle(60, seed);
    CHECK(one_edge_one_triangle_each(fg));
    AdjacencyView av = adjacency(fg);
    CHECK_FALSE(av.has_duplicate_edges);
    for (std::int64_t d : av.degrees) CHECK(d == 3);
  }
}

TEST_CASE("generators reproduce byte-identical files per seed") {
  auto text = [](const FactorGraph& fg) { return network_to_json(fg); };
  CHECK(text(gen_regular_edge_triangle(60, 17)) ==
        text(gen_regular_edge_triangle(60, 17)));
  CHECK(text(gen_regular_edge_triangle(60, 17)) !=
        text(gen_regular_edge_triangle(60, 18)));
  CHECK(text(gen_poisson_edge_triangle(200, 2, 2, 5)) ==
        text(gen_poisson_edge_triangle(200, 2, 2, 5)));
  CHECK(text(gen_poisson_edge_triangle(200, 2, 2, 5)) !=
        text(gen_poisson_edge_triangle(200, 2, 2, 6)));
  std::vector<std::int64_t> degs(100, 3);
  CHECK(text(gen_configuration_model(degs, 9)) ==
        text(gen_configuration_model(degs, 9)));
  CHECK(text(gen_configuration_model(degs, 9)) !=
        text(gen_configuration_model(degs, 10)));
}

TEST_CASE("poisson edge-triangle with zero means is an empty network") {
  FactorGraph fg = gen_poisson_edge_triangle(50, 0, 0, 1);
  CHECK(fg.node_count() == 50);
  CHECK(fg.motif_count() == 0);
}

TEST_CASE("poisson edge-triangle realization matches its ensemble statistics") {
  const NodeId n = 3000;
  FactorGraph fg = gen_poisson_edge_triangle(n, 2, 2, 42);
  std::int64_t corner_memberships = 0, stub_memberships = 0, triangles = 0;
  for (const Motif& mo : fg.motifs()) {
    if (mo.kind() == MotifKind::triangle) {
      ++triangles;
      corner_memberships += 3;
    } else {
      stub_memberships += 2;
    }
  }
  double corner_mean = static_cast<double>(corner_memberships) / n;
  double stub_mean = static_cast<double>(stub_memberships) / n;
  double bound = 2.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(corner_mean - 2.0) < bound);
  CHECK(std::abs(stub_mean - 2.0) < bound);
  // Mean degree 6: two per triangle membership, one per edge membership.
  AdjacencyView av = adjacency(fg);
  double mean_degree =
      2.0 * static_cast<double>(av.edge_count()) / static_cast<double>(n);
  CHECK(mean_degree == doctest::Approx(6.0).epsilon(0.05));
  CHECK(triangles > n / 2);
  CHECK_FALSE(av.has_duplicate_edges);
}

TEST_CASE("configuration model honors the degree sequence exactly") {
  SUBCASE("single edge") {
    FactorGraph fg = gen_configuration_model({1, 1}, 1);
    CHECK(fg.motif_count() == 1);
    CHECK(fg.motif(0).kind() == MotifKind::edge);
    CHECK(degrees_of(fg) == std::vector<std::int64_t>{1, 1});
  }
  SUBCASE("odd sum rejected") {
    CHECK(code_of([] { gen_configuration_model({2, 1}, 1); }) ==
          Errc::odd_degree_sum);
    CHECK(code_of([] { gen_configuration_model({1, 1, 1}, 1); }) ==
          Errc::odd_degree_sum);
  }
  SUBCASE("degrees copied from a poisson realization") {
    FactorGraph src = gen_poisson_edge_triangle(500, 2, 2, 11);
    std::vector<std::int64_t> degs = degrees_of(src);
    FactorGraph fg = gen_configuration_model(degs, 12);
    CHECK(degrees_of(fg) == degs);
    CHECK_FALSE(adjacency(fg).has_duplicate_edges);
    for (const Motif& mo : fg.motifs()) CHECK(mo.kind() == MotifKind::edge);
  }
  SUBCASE("zero degrees leave isolated nodes") {
    FactorGraph fg = gen_configuration_model({0, 0, 0, 0}, 1);
    CHECK(fg.node_count() == 4);
    CHECK(fg.motif_count() == 0);
  }
}

TEST_CASE("unrealizable inputs fail with a generation error") {
  // Three nodes cannot host 100 distinct edges.
  CHECK(code_of([] {
          gen_poisson_edge_triangle(3, 100, 0, 1);
        }) == Errc::generation_failed);
  CHECK(code_of([] {
          gen_configuration_model({5, 5}, 1);
        }) == Errc::generation_failed);
}
