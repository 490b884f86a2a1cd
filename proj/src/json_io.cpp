#include "loopyspectra/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace loopyspectra {

namespace {

using nlohmann::json;

// Parses one motif object; on failure rethrows with "motif <i>: " prefixed so
// the caller can point at the offending element.
Motif parse_motif(const json& jm, std::size_t index) {
  try {
    if (!jm.is_object()) {
      fail(Errc::parse_error, "expected an object");
    }
    if (!jm.contains("kind") || !jm["kind"].is_string()) {
      fail(Errc::parse_error, "missing string field \"kind\"");
    }
    if (!jm.contains("nodes") || !jm["nodes"].is_array()) {
      fail(Errc::parse_error, "missing array field \"nodes\"");
    }
    const std::string kind = jm["kind"].get<std::string>();
    std::vector<NodeId> nodes;
    for (const auto& jn : jm["nodes"]) {
      if (!jn.is_number_integer()) {
        fail(Errc::parse_error, "\"nodes\" must hold integers");
      }
      nodes.push_back(jn.get<NodeId>());
    }
    const bool has_edges = jm.contains("edges");
    if (kind != "general" && has_edges) {
      fail(Errc::parse_error, "\"edges\" is only allowed for kind \"general\"");
    }

    if (kind == "edge") {
      if (nodes.size() != 2) {
        fail(Errc::malformed_motif, "edge motif needs exactly 2 nodes, got " +
                                        std::to_string(nodes.size()));
      }
      return Motif::edge(nodes[0], nodes[1]);
    }
    if (kind == "triangle") {
      if (nodes.size() != 3) {
        fail(Errc::malformed_motif,
             "triangle motif needs exactly 3 nodes, got " +
                 std::to_string(nodes.size()));
      }
      return Motif::triangle(nodes[0], nodes[1], nodes[2]);
    }
    if (kind == "cycle") {
      return Motif::cycle(std::move(nodes));
    }
    if (kind == "general") {
      if (!has_edges || !jm["edges"].is_array()) {
        fail(Errc::parse_error, "general motif needs an \"edges\" array");
      }
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (const auto& je : jm["edges"]) {
        if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
            !je[1].is_number_integer()) {
          fail(Errc::parse_error,
               "\"edges\" entries must be [u,v] integer pairs");
        }
        edges.emplace_back(je[0].get<NodeId>(), je[1].get<NodeId>());
      }
      return Motif::general(std::move(nodes), std::move(edges));
    }
    fail(Errc::parse_error, "unknown kind \"" + kind + "\"");
  } catch (const Error& e) {
    throw Error(e.code(),
                "motif " + std::to_string(index) + ": " + e.what());
  }
}

}  // namespace

FactorGraph parse_network(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, std::string("network JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    fail(Errc::parse_error, "network JSON: missing integer field \"n\"");
  }
  if (!j.contains("motifs") || !j["motifs"].is_array()) {
    fail(Errc::parse_error, "network JSON: missing array field \"motifs\"");
  }
  const NodeId n = j["n"].get<NodeId>();
  std::vector<Motif> motifs;
  motifs.reserve(j["motifs"].size());
  for (std::size_t i = 0; i < j["motifs"].size(); ++i) {
    motifs.push_back(parse_motif(j["motifs"][i], i));
  }
  return FactorGraph(n, std::move(motifs));
}

FactorGraph load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Errc::io_error, "cannot open network file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string network_to_json(const FactorGraph& fg) {
  json j;
  j["n"] = fg.node_count();
  json jmotifs = json::array();
  for (const Motif& mo : fg.motifs()) {
    json jm;
    jm["kind"] = motif_kind_name(mo.kind());
    switch (mo.kind()) {
      case MotifKind::edge:
      case MotifKind::triangle:
        jm["nodes"] = mo.members();
        break;
      case MotifKind::cycle:
        jm["nodes"] = mo.ring_order();
        break;
      case MotifKind::general: {
        jm["nodes"] = mo.members();
        json jedges = json::array();
        for (auto [a, b] : mo.internal_edges()) {
          jedges.push_back({mo.members()[a], mo.members()[b]});
        }
        jm["edges"] = jedges;
        break;
      }
    }
    jmotifs.push_back(jm);
  }
  j["motifs"] = jmotifs;
  return j.dump(2) + "\n";
}

void save_network(const FactorGraph& fg, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    fail(Errc::io_error, "cannot write network file: " + path);
  }
  out << network_to_json(fg);
  if (!out) {
    fail(Errc::io_error, "write failed: " + path);
  }
}

}  // namespace loopyspectra
