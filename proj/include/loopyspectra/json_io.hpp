#pragma once

#include <string>
#include <string_view>

#include "loopyspectra/graph.hpp"

namespace loopyspectra {

// Network file schema:
//   {"n": <int>,
//    "motifs": [{"kind": "edge"|"triangle"|"cycle"|"general",
//                "nodes": [<ints>],
//                "edges": [[u,v],...]   // general only, node ids
//               }, ...]}
// For "cycle" the node list is the ring order.  "edges" is required for
// "general" motifs and rejected for every other kind.
FactorGraph parse_network(std::string_view json_text);
FactorGraph load_network(const std::string& path);

std::string network_to_json(const FactorGraph& fg);
void save_network(const FactorGraph& fg, const std::string& path);

}  // namespace loopyspectra
