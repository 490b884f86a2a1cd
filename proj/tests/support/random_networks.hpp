#pragma once

#include <cstdint>

#include "loopyspectra/graph.hpp"

// Seeded builders for networks whose factor graph is a tree, used by the
// exactness test suites.
namespace loopyspectra::testsupport {

// Random recursive tree of edge motifs on n nodes (node u >= 1 attaches to a
// uniform earlier node).
FactorGraph random_edge_tree(NodeId n, std::uint64_t seed);

// Random motif tree mixing edges, triangles, and 4/5-cycles.  Each new motif
// shares exactly one node with the already-built component, so the factor
// graph is a tree.  Growth stops once at least n_target nodes exist.
FactorGraph random_motif_tree(NodeId n_target, std::uint64_t seed);

}  // namespace loopyspectra::testsupport
