#pragma once

// Matching of view elements against a model: view ports against model
// ports, abstract connectors against chains of concrete connectors.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccview/model.hpp"

namespace ccview {

inline bool port_matches(const ViewPort& vp, const Port& p) {
  return vp.direction == p.direction && (!vp.name || *vp.name == p.name) && (!vp.type || *vp.type == p.type);
}

/// Pre-built indices over one model, shared by all checks of a verification run.
struct ModelIndex {
  explicit ModelIndex(const CncModel& m) : model(m), hierarchy(m), graph(m, hierarchy) {}
  ModelIndex(const ModelIndex&) = delete;
  ModelIndex& operator=(const ModelIndex&) = delete;

  const CncModel& model;
  Hierarchy<CncModel> hierarchy;
  ConnectorGraph graph;
};

/// Name and type constraints on one end of an abstract connector. The type
/// comes from a port of the same name declared with a known type on the
/// view component; endpoint names never declare ports by themselves.
struct EndpointConstraint {
  std::string component;
  std::optional<std::string> port;
  std::optional<std::string> type;

  bool accepts(const Port& p) const { return (!port || *port == p.name) && (!type || *type == p.type); }
};

inline EndpointConstraint endpoint_constraint(const CncView& v, const std::string& component,
                                              const std::optional<std::string>& port) {
  EndpointConstraint e{component, port, std::nullopt};
  if (!port) return e;
  if (const auto* c = v.find(component)) {
    for (const auto& vp : c->ports) {
      if (vp.name && *vp.name == *port && vp.type) {
        e.type = vp.type;
        break;
      }
    }
  }
  return e;
}

/// Ports of `e.component` that a chain realizing `e` may start from.
inline std::vector<std::size_t> start_ports(const ModelIndex& idx, const EndpointConstraint& e) {
  std::vector<std::size_t> out;
  std::size_t c = idx.hierarchy.index_of(e.component);
  if (c == npos) return out;
  for (std::size_t p = idx.graph.first_port(c); p < idx.graph.end_port(c); ++p) {
    if (e.accepts(idx.graph.port(p))) out.push_back(p);
  }
  return out;
}

/// Shortest chain realizing `ac` (connector indices in chain order), or
/// nullopt. With a non-empty `allowed` mask only those connectors are used.
inline std::optional<std::vector<std::size_t>> find_chain(const ModelIndex& idx, const CncView& v,
                                                          const AbstractConnector& ac,
                                                          std::span<const char> allowed = {}) {
  auto src = endpoint_constraint(v, ac.src_component, ac.src_port);
  auto tgt = endpoint_constraint(v, ac.tgt_component, ac.tgt_port);
  std::size_t tgt_cmp = idx.hierarchy.index_of(tgt.component);
  if (tgt_cmp == npos) return std::nullopt;
  auto starts = start_ports(idx, src);
  if (starts.empty()) return std::nullopt;
  auto search = idx.graph.search(std::move(starts), allowed);
  for (std::size_t p : search.reached) {
    if (idx.graph.owner(p) == tgt_cmp && tgt.accepts(idx.graph.port(p))) return idx.graph.chain_to(search, p);
  }
  return std::nullopt;
}

}  // namespace ccview
