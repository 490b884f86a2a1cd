#pragma once

#include <cstdint>
#include <vector>

#include "loopyspectra/graph.hpp"

namespace loopyspectra {

// Random network with exactly one edge motif and one triangle motif per node
// (every degree is 3).  Requires n to be a positive multiple of six so that
// both the n/2 edges and the n/3 triangles partition the node set; the
// realized graph is kept simple by redrawing colliding placements.
FactorGraph gen_regular_edge_triangle(NodeId n, std::uint64_t seed);

// Random network where each node's edge-stub count and triangle-corner count
// are independent Poisson draws.  Totals are repaired to divisibility (stub
// sum even, corner sum divisible by three) by incrementing uniformly random
// nodes; stubs and corners are then matched uniformly, redrawing collisions
// so the result is a simple graph.
FactorGraph gen_poisson_edge_triangle(NodeId n, double mean_edges,
                                      double mean_triangles,
                                      std::uint64_t seed);

// Standard configuration model: edge motifs only, uniform stub matching for
// the prescribed degree sequence, self-loops and multi-edges redrawn.
FactorGraph gen_configuration_model(const std::vector<std::int64_t>& degrees,
                                    std::uint64_t seed);

// Adjacency degree of every node.
std::vector<std::int64_t> degrees_of(const FactorGraph& fg);

}  // namespace loopyspectra
