#include "loopyspectra/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

namespace loopyspectra {

namespace {

std::string pair_str(NodeId a, NodeId b) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

const char* motif_kind_name(MotifKind k) {
  switch (k) {
    case MotifKind::edge: return "edge";
    case MotifKind::triangle: return "triangle";
    case MotifKind::cycle: return "cycle";
    case MotifKind::general: return "general";
  }
  return "?";
}

Motif::Motif(MotifKind kind, std::vector<NodeId> members,
             std::vector<std::pair<int, int>> internal_edges)
    : kind_(kind),
      members_(std::move(members)),
      internal_edges_(std::move(internal_edges)) {
  validate();
}

// Sorts members, remaps edge endpoints from node ids to member positions,
// normalizes each pair to a < b and sorts the pair list.
static std::vector<std::pair<int, int>> index_edges(
    const std::vector<NodeId>& sorted_members,
    const std::vector<std::pair<NodeId, NodeId>>& node_edges) {
  std::vector<std::pair<int, int>> out;
  out.reserve(node_edges.size());
  for (const auto& [a, b] : node_edges) {
    auto ia = std::lower_bound(sorted_members.begin(), sorted_members.end(), a);
    auto ib = std::lower_bound(sorted_members.begin(), sorted_members.end(), b);
    if (ia == sorted_members.end() || *ia != a || ib == sorted_members.end() ||
        *ib != b) {
      fail(Errc::malformed_motif,
           "motif edge " + pair_str(a, b) + " references a non-member node");
    }
    int pa = static_cast<int>(ia - sorted_members.begin());
    int pb = static_cast<int>(ib - sorted_members.begin());
    if (pa > pb) std::swap(pa, pb);
    out.emplace_back(pa, pb);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Motif Motif::edge(NodeId u, NodeId v) {
  std::vector<NodeId> m{u, v};
  std::sort(m.begin(), m.end());
  return Motif(MotifKind::edge, std::move(m), {{0, 1}});
}

Motif Motif::triangle(NodeId u, NodeId v, NodeId w) {
  std::vector<NodeId> m{u, v, w};
  std::sort(m.begin(), m.end());
  return Motif(MotifKind::triangle, std::move(m), {{0, 1}, {0, 2}, {1, 2}});
}

Motif Motif::cycle(std::vector<NodeId> ring) {
  if (ring.size() < 3) {
    fail(Errc::malformed_motif, "cycle motif needs at least 3 nodes, got " +
                                    std::to_string(ring.size()));
  }
  std::vector<std::pair<NodeId, NodeId>> node_edges;
  node_edges.reserve(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    node_edges.emplace_back(ring[i], ring[(i + 1) % ring.size()]);
  }
  std::vector<NodeId> m = ring;
  std::sort(m.begin(), m.end());
  auto edges = index_edges(m, node_edges);
  return Motif(MotifKind::cycle, std::move(m), std::move(edges));
}

Motif Motif::general(std::vector<NodeId> members,
                     std::vector<std::pair<NodeId, NodeId>> edges) {
  std::sort(members.begin(), members.end());
  auto idx = index_edges(members, edges);
  return Motif(MotifKind::general, std::move(members), std::move(idx));
}

void Motif::validate() const {
  const int m = size();
  if (m < 2) {
    fail(Errc::malformed_motif, "motif needs at least 2 members");
  }
  for (int i = 0; i + 1 < m; ++i) {
    if (members_[i] == members_[i + 1]) {
      fail(Errc::malformed_motif,
           "motif members are not distinct: node " +
               std::to_string(members_[i]) + " repeated");
    }
    if (members_[i] > members_[i + 1]) {
      fail(Errc::malformed_motif, "motif members not canonicalized");
    }
  }
  if (internal_edges_.empty()) {
    fail(Errc::malformed_motif, "motif has no internal edges");
  }
  for (std::size_t i = 0; i < internal_edges_.size(); ++i) {
    auto [a, b] = internal_edges_[i];
    if (a < 0 || b >= m || a >= b) {
      if (a == b) {
        fail(Errc::malformed_motif, "motif has an internal self-loop at node " +
                                        std::to_string(members_[a]));
      }
      fail(Errc::malformed_motif, "motif internal edge indices out of range");
    }
    if (i > 0 && internal_edges_[i] == internal_edges_[i - 1]) {
      fail(Errc::malformed_motif,
           "motif internal edge " + pair_str(members_[a], members_[b]) +
               " duplicated");
    }
  }

  // Kind-specific shape checks.
  switch (kind_) {
    case MotifKind::edge:
      if (m != 2 || internal_edges_.size() != 1) {
        fail(Errc::malformed_motif, "edge motif must have 2 members, 1 edge");
      }
      break;
    case MotifKind::triangle:
      if (m != 3 || internal_edges_.size() != 3) {
        fail(Errc::malformed_motif,
             "triangle motif must have 3 members, 3 edges");
      }
      break;
    case MotifKind::cycle: {
      if (m < 3 || internal_edges_.size() != static_cast<std::size_t>(m)) {
        fail(Errc::malformed_motif,
             "cycle motif must have as many edges as members");
      }
      std::vector<int> deg(m, 0);
      for (auto [a, b] : internal_edges_) {
        ++deg[a];
        ++deg[b];
      }
      for (int d : deg) {
        if (d != 2) {
          fail(Errc::malformed_motif, "cycle motif edges do not form a ring");
        }
      }
      // Degree-2 everywhere plus connectivity (below) implies a single ring.
      break;
    }
    case MotifKind::general:
      break;
  }

  // Connectivity of the internal graph.
  std::vector<std::vector<int>> adj(m);
  for (auto [a, b] : internal_edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(m, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != m) {
    fail(Errc::disconnected_motif,
         "motif internal graph is disconnected (" + std::to_string(reached) +
             " of " + std::to_string(m) + " members reachable)");
  }
}

int Motif::member_position(NodeId u) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), u);
  if (it == members_.end() || *it != u) return -1;
  return static_cast<int>(it - members_.begin());
}

std::vector<NodeId> Motif::ring_order() const {
  const int m = size();
  std::vector<std::vector<int>> adj(m);
  for (auto [a, b] : internal_edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& nb : adj) {
    if (nb.size() != 2) {
      fail(Errc::invalid_argument, "motif is not a ring");
    }
  }
  // Members are sorted, so position 0 holds the smallest node id; walk toward
  // the smaller of its two neighbors for a canonical direction.
  std::vector<NodeId> out;
  out.reserve(m);
  int prev = 0;
  int cur = members_[adj[0][0]] < members_[adj[0][1]] ? adj[0][0] : adj[0][1];
  out.push_back(members_[0]);
  while (cur != 0) {
    out.push_back(members_[cur]);
    int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
  }
  return out;
}

FactorGraph::FactorGraph(NodeId n, std::vector<Motif> motifs)
    : n_(n), motifs_(std::move(motifs)) {
  if (n_ < 0) fail(Errc::invalid_argument, "negative node count");
  incidence_.resize(n_);
  for (std::size_t id = 0; id < motifs_.size(); ++id) {
    const Motif& mo = motifs_[id];
    for (int pos = 0; pos < mo.size(); ++pos) {
      NodeId u = mo.members()[pos];
      if (u < 0 || u >= n_) {
        fail(Errc::out_of_range_node,
             "motif " + std::to_string(id) + " references node " +
                 std::to_string(u) + " outside [0," + std::to_string(n_) + ")");
      }
      incidence_[u].push_back({static_cast<std::int64_t>(id), pos});
      ++incidence_count_;
    }
  }
}

AdjacencyView adjacency(const FactorGraph& fg) {
  AdjacencyView view;
  view.n = fg.node_count();
  view.degrees.assign(view.n, 0);
  for (const Motif& mo : fg.motifs()) {
    for (auto [a, b] : mo.internal_edges()) {
      NodeId u = mo.members()[a];
      NodeId v = mo.members()[b];
      if (u > v) std::swap(u, v);
      view.edges.emplace_back(u, v);
    }
  }
  std::sort(view.edges.begin(), view.edges.end());
  for (std::size_t i = 0; i < view.edges.size(); ++i) {
    auto [u, v] = view.edges[i];
    ++view.degrees[u];
    ++view.degrees[v];
    if (i > 0 && view.edges[i] == view.edges[i - 1]) {
      view.has_duplicate_edges = true;
    }
  }
  view.neighbors.resize(view.n);
  for (auto [u, v] : view.edges) {
    view.neighbors[u].push_back(v);
    view.neighbors[v].push_back(u);
  }
  return view;
}

std::optional<int> factor_graph_girth(const FactorGraph& fg, int max_depth) {
  // Vertices 0..n-1 are network nodes, n..n+M-1 are motifs.
  const std::int64_t n = fg.node_count();
  const std::int64_t total = n + fg.motif_count();
  std::vector<std::vector<std::int64_t>> adj(total);
  for (std::int64_t u = 0; u < n; ++u) {
    for (const Incidence& inc : fg.incident(u)) {
      adj[u].push_back(n + inc.motif);
      adj[n + inc.motif].push_back(u);
    }
  }

  int best = -1;
  std::vector<int> dist(total);
  std::vector<std::int64_t> parent(total);
  for (std::int64_t start = 0; start < total; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<std::int64_t> queue{start};
    dist[start] = 0;
    parent[start] = -1;
    while (!queue.empty()) {
      std::int64_t v = queue.front();
      queue.pop_front();
      if (dist[v] >= max_depth) continue;
      for (std::int64_t w : adj[v]) {
        if (w == parent[v]) continue;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else {
          // Non-tree edge: closes a cycle through start of length
          // dist[v] + dist[w] + 1 (an upper bound equal to the girth when
          // minimized over all starts).
          int len = dist[v] + dist[w] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  if (best < 0 || best > 2 * max_depth) return std::nullopt;
  return best;
}

}  // namespace loopyspectra
