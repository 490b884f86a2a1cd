#include "loopyspectra/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "loopyspectra/rng.hpp"

namespace loopyspectra {

namespace {

using EdgeKey = std::pair<NodeId, NodeId>;

EdgeKey key(NodeId u, NodeId v) {
  return u < v ? EdgeKey{u, v} : EdgeKey{v, u};
}

constexpr int kMaxChunkAttempts = 200;
constexpr int kMaxRestarts = 50;

// Shuffles `items` and splits the result into consecutive chunks of size k.
// An invalid chunk is repaired by swapping one of its entries with a
// uniformly random entry from the unconsumed tail and re-checking; when no
// repair is possible (tail exhausted or attempt cap hit) the whole matching
// restarts with a fresh shuffle.  On success `used` holds `fixed` plus every
// committed chunk edge.
template <typename Valid, typename Commit>
std::vector<std::vector<NodeId>> chunk_matching(std::vector<NodeId> items,
                                                std::size_t k,
                                                const std::set<EdgeKey>& fixed,
                                                std::set<EdgeKey>& used,
                                                Rng& rng, Valid valid,
                                                Commit commit,
                                                const char* what) {
  if (items.size() % k != 0) {
    fail(Errc::generation_failed,
         std::string(what) + ": item count not divisible by chunk size");
  }
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    rng.shuffle(items);
    used = fixed;
    std::vector<std::vector<NodeId>> out;
    out.reserve(items.size() / k);
    bool ok = true;
    for (std::size_t base = 0; base < items.size(); base += k) {
      int attempts = 0;
      while (!valid(&items[base], used)) {
        const std::size_t tail = items.size() - base - k;
        if (tail == 0 || ++attempts > kMaxChunkAttempts) {
          ok = false;
          break;
        }
        std::size_t at = base + static_cast<std::size_t>(attempts) % k;
        std::size_t j = base + k + static_cast<std::size_t>(
                                       rng.uniform_below(tail));
        std::swap(items[at], items[j]);
      }
      if (!ok) break;
      commit(&items[base], used);
      out.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(base),
                       items.begin() + static_cast<std::ptrdiff_t>(base + k));
    }
    if (ok) return out;
  }
  fail(Errc::generation_failed,
       std::string(what) + ": no collision-free matching found after " +
           std::to_string(kMaxRestarts) + " restarts");
}

bool pair_valid(const NodeId* c, const std::set<EdgeKey>& used) {
  return c[0] != c[1] && used.find(key(c[0], c[1])) == used.end();
}

void pair_commit(const NodeId* c, std::set<EdgeKey>& used) {
  used.insert(key(c[0], c[1]));
}

bool triple_valid(const NodeId* c, const std::set<EdgeKey>& used) {
  if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) return false;
  return used.find(key(c[0], c[1])) == used.end() &&
         used.find(key(c[0], c[2])) == used.end() &&
         used.find(key(c[1], c[2])) == used.end();
}

void triple_commit(const NodeId* c, std::set<EdgeKey>& used) {
  used.insert(key(c[0], c[1]));
  used.insert(key(c[0], c[2]));
  used.insert(key(c[1], c[2]));
}

std::vector<Motif> motifs_from(
    const std::vector<std::vector<NodeId>>& pairs,
    const std::vector<std::vector<NodeId>>& triples) {
  std::vector<Motif> motifs;
  motifs.reserve(pairs.size() + triples.size());
  for (const auto& p : pairs) motifs.push_back(Motif::edge(p[0], p[1]));
  for (const auto& t : triples) {
    motifs.push_back(Motif::triangle(t[0], t[1], t[2]));
  }
  return motifs;
}

}  // namespace

FactorGraph gen_regular_edge_triangle(NodeId n, std::uint64_t seed) {
  if (n < 6 || n % 6 != 0) {
    fail(Errc::not_multiple_of_six,
         "node count must be a positive multiple of six, got " +
             std::to_string(n));
  }
  Rng rng(seed);
  std::vector<NodeId> nodes(static_cast<std::size_t>(n));
  std::iota(nodes.begin(), nodes.end(), NodeId{0});

  // Triangles: a uniform partition of the nodes into triples.  Triples are
  // disjoint, so they cannot collide with one another.
  std::set<EdgeKey> no_edges;
  std::set<EdgeKey> tri_edges;
  auto triples = chunk_matching(
      nodes, 3, no_edges, tri_edges, rng,
      [](const NodeId*, const std::set<EdgeKey>&) { return true; },
      triple_commit, "triangle partition");

  // Edges: a uniform perfect matching avoiding the triangle edges.
  std::set<EdgeKey> all_edges;
  auto pairs = chunk_matching(nodes, 2, tri_edges, all_edges, rng, pair_valid,
                              pair_commit, "edge matching");

  return FactorGraph(n, motifs_from(pairs, triples));
}

FactorGraph gen_poisson_edge_triangle(NodeId n, double mean_edges,
                                      double mean_triangles,
                                      std::uint64_t seed) {
  if (n < 3) {
    fail(Errc::invalid_argument,
         "poisson edge-triangle generator needs n >= 3, got " +
             std::to_string(n));
  }
  if (!(mean_edges >= 0) || !std::isfinite(mean_edges) ||
      !(mean_triangles >= 0) || !std::isfinite(mean_triangles)) {
    fail(Errc::invalid_argument, "motif means must be finite and >= 0");
  }
  Rng rng(seed);
  std::vector<std::int64_t> corners(static_cast<std::size_t>(n));
  std::vector<std::int64_t> stubs(static_cast<std::size_t>(n));
  for (auto& c : corners) c = rng.poisson(mean_triangles);
  for (auto& s : stubs) s = rng.poisson(mean_edges);

  // Divisibility repair: bump uniformly random nodes until the corner total
  // is a multiple of three and the stub total is even.
  std::int64_t corner_sum =
      std::accumulate(corners.begin(), corners.end(), std::int64_t{0});
  while (corner_sum % 3 != 0) {
    ++corners[rng.uniform_below(static_cast<std::uint64_t>(n))];
    ++corner_sum;
  }
  std::int64_t stub_sum =
      std::accumulate(stubs.begin(), stubs.end(), std::int64_t{0});
  while (stub_sum % 2 != 0) {
    ++stubs[rng.uniform_below(static_cast<std::uint64_t>(n))];
    ++stub_sum;
  }

  std::vector<NodeId> corner_items;
  corner_items.reserve(static_cast<std::size_t>(corner_sum));
  for (NodeId u = 0; u < n; ++u) {
    for (std::int64_t i = 0; i < corners[static_cast<std::size_t>(u)]; ++i) {
      corner_items.push_back(u);
    }
  }
  std::vector<NodeId> stub_items;
  stub_items.reserve(static_cast<std::size_t>(stub_sum));
  for (NodeId u = 0; u < n; ++u) {
    for (std::int64_t i = 0; i < stubs[static_cast<std::size_t>(u)]; ++i) {
      stub_items.push_back(u);
    }
  }

  std::set<EdgeKey> no_edges;
  std::set<EdgeKey> tri_edges;
  auto triples = chunk_matching(corner_items, 3, no_edges, tri_edges, rng,
                                triple_valid, triple_commit,
                                "triangle matching");
  std::set<EdgeKey> all_edges;
  auto pairs = chunk_matching(stub_items, 2, tri_edges, all_edges, rng,
                              pair_valid, pair_commit, "edge matching");

  return FactorGraph(n, motifs_from(pairs, triples));
}

FactorGraph gen_configuration_model(const std::vector<std::int64_t>& degrees,
                                    std::uint64_t seed) {
  std::int64_t sum = 0;
  for (std::int64_t d : degrees) {
    if (d < 0) fail(Errc::invalid_argument, "negative degree in sequence");
    sum += d;
  }
  if (sum % 2 != 0) {
    fail(Errc::odd_degree_sum,
         "degree sum must be even, got " + std::to_string(sum));
  }
  Rng rng(seed);
  const NodeId n = static_cast<NodeId>(degrees.size());
  std::vector<NodeId> stub_items;
  stub_items.reserve(static_cast<std::size_t>(sum));
  for (NodeId u = 0; u < n; ++u) {
    for (std::int64_t i = 0; i < degrees[static_cast<std::size_t>(u)]; ++i) {
      stub_items.push_back(u);
    }
  }
  std::set<EdgeKey> no_edges;
  std::set<EdgeKey> used;
  auto pairs = chunk_matching(stub_items, 2, no_edges, used, rng, pair_valid,
                              pair_commit, "stub matching");
  return FactorGraph(n, motifs_from(pairs, {}));
}

std::vector<std::int64_t> degrees_of(const FactorGraph& fg) {
  return adjacency(fg).degrees;
}

}  // namespace loopyspectra
