#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "loopyspectra/errors.hpp"

namespace loopyspectra {

// Dense zero-based node index within one network.
using NodeId = std::int64_t;

enum class MotifKind { edge, triangle, cycle, general };

const char* motif_kind_name(MotifKind k);

// A motif is a small connected subgraph on a specific set of member nodes.
// Members are stored sorted; internal edges are unordered pairs of member
// positions with a < b, kept sorted lexicographically.  A cycle additionally
// remembers its ring through the internal edges (the member order itself is
// canonical, not the ring order).
class Motif {
 public:
  static Motif edge(NodeId u, NodeId v);
  static Motif triangle(NodeId u, NodeId v, NodeId w);
  // `ring` lists the nodes in traversal order; length >= 3.
  static Motif cycle(std::vector<NodeId> ring);
  // `edges` are unordered pairs of member node ids.
  static Motif general(std::vector<NodeId> members,
                       std::vector<std::pair<NodeId, NodeId>> edges);

  MotifKind kind() const { return kind_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<NodeId>& members() const { return members_; }
  const std::vector<std::pair<int, int>>& internal_edges() const {
    return internal_edges_;
  }
  int member_position(NodeId u) const;  // -1 if u is not a member

  // Ring traversal for cycle-shaped motifs, canonicalized: starts at the
  // smallest node id and proceeds toward its smaller ring neighbor.
  std::vector<NodeId> ring_order() const;

 private:
  Motif(MotifKind kind, std::vector<NodeId> members,
        std::vector<std::pair<int, int>> internal_edges);
  void validate() const;

  MotifKind kind_;
  std::vector<NodeId> members_;
  std::vector<std::pair<int, int>> internal_edges_;
};

// One (node, motif) incidence: the motif id plus the node's position in the
// motif's member list.
struct Incidence {
  std::int64_t motif;
  int member_pos;
};

// Bipartite structure of a motif network: n nodes, the motif list, and for
// each node u the list S_u of motifs it belongs to.  Immutable once built.
class FactorGraph {
 public:
  FactorGraph(NodeId n, std::vector<Motif> motifs);

  NodeId node_count() const { return n_; }
  std::int64_t motif_count() const {
    return static_cast<std::int64_t>(motifs_.size());
  }
  const std::vector<Motif>& motifs() const { return motifs_; }
  const Motif& motif(std::int64_t id) const { return motifs_[id]; }
  const std::vector<Incidence>& incident(NodeId u) const {
    return incidence_[u];
  }
  std::int64_t incidence_count() const { return incidence_count_; }

 private:
  NodeId n_;
  std::vector<Motif> motifs_;
  std::vector<std::vector<Incidence>> incidence_;
  std::int64_t incidence_count_ = 0;
};

// Plain adjacency derived from a factor graph.  Parallel edges arising from
// motifs that share an edge are retained with multiplicity and flagged.
struct AdjacencyView {
  NodeId n = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;  // u < v, sorted, multiset
  std::vector<std::int64_t> degrees;
  bool has_duplicate_edges = false;

  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(edges.size());
  }
  // Neighbor lists with multiplicity, built on demand by adjacency().
  std::vector<std::vector<NodeId>> neighbors;
};

AdjacencyView adjacency(const FactorGraph& fg);

// Shortest cycle length in the bipartite factor graph (counted in
// node<->motif hops, so always even), searching breadth-first to depth
// `max_depth` from every vertex.  Detects cycles of length <= 2*max_depth.
// nullopt means none found within the search horizon.
std::optional<int> factor_graph_girth(const FactorGraph& fg, int max_depth);

}  // namespace loopyspectra
