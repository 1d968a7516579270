#pragma once

// Witnesses: well-formed fragments of a model that justify a verdict.
//
// A satisfaction witness contains the view's components with their
// ancestors up to a common root, one matching model port per view port and
// one chain of concrete connectors per abstract connector. Elements already
// in the fragment are reused before new ones are added, which keeps the
// fragment small but not necessarily minimal.
//
// A non-satisfaction witness explains exactly one reason and is uniquely
// determined by it.

#include <string>
#include <vector>

#include "ccview/checks.hpp"

namespace ccview {

enum class WitnessKind { Satisfaction, MissingComponent, HierarchyMismatch, InterfaceMismatch, MissingConnection };

inline std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Satisfaction: return "satisfaction";
    case WitnessKind::MissingComponent: return "missing_component";
    case WitnessKind::HierarchyMismatch: return "hierarchy_mismatch";
    case WitnessKind::InterfaceMismatch: return "interface_mismatch";
    case WitnessKind::MissingConnection: return "missing_connection";
  }
  return "?";
}

inline WitnessKind witness_kind(const NonSatReason& r) { return static_cast<WitnessKind>(r.index() + 1); }

struct Annotation {
  std::string text;
  std::vector<std::string> refers_to;  // component names, `Cmp.port` for ports

  bool operator==(const Annotation&) const = default;
};

struct Witness {
  WitnessKind kind = WitnessKind::Satisfaction;
  CncModel fragment;  // empty for a missing component
  std::vector<Annotation> annotations;

  const std::string& name() const { return fragment.name; }
  std::string explanation() const { return annotations.empty() ? std::string() : annotations.front().text; }
};

namespace detail {

// Collects model elements by index and emits them as a canonical fragment.
class FragmentBuilder {
 public:
  explicit FragmentBuilder(const ModelIndex& idx)
      : idx_(idx),
        components_(idx.hierarchy.size(), 0),
        ports_(idx.graph.port_count(), 0),
        connectors_(idx.model.connectors.size(), 0) {}

  void add_component(std::size_t c) { components_[c] = 1; }
  void add_port(std::size_t pid) {
    ports_[pid] = 1;
    add_component(idx_.graph.owner(pid));
  }
  void add_connector(std::size_t ci) {
    connectors_[ci] = 1;
    add_port(idx_.graph.source(ci));
    add_port(idx_.graph.target(ci));
  }
  bool has_port(std::size_t pid) const { return ports_[pid] != 0; }
  const std::vector<char>& connector_mask() const { return connectors_; }

  /// Adds every ancestor of an included component up to the lowest common
  /// ancestor of all included components.
  void close_upwards() {
    const auto& h = idx_.hierarchy;
    std::size_t root = npos;
    for (std::size_t c = 0; c < components_.size(); ++c) {
      if (components_[c]) root = root == npos ? c : h.lca(root, c);
    }
    if (root == npos) return;
    for (std::size_t c = 0; c < components_.size(); ++c) {
      if (!components_[c]) continue;
      for (std::size_t a : h.path_up(c, root)) components_[a] = 1;
    }
  }

  CncModel build(std::string name) const {
    const auto& h = idx_.hierarchy;
    const auto& m = idx_.model;
    CncModel out;
    out.name = std::move(name);
    for (std::size_t c = 0; c < components_.size(); ++c) {
      if (!components_[c]) continue;
      Component fc;
      fc.name = m.components[c].name;
      std::size_t p = h.parent(c);
      if (p != npos && components_[p]) fc.parent = m.components[p].name;
      for (std::size_t pid = idx_.graph.first_port(c); pid < idx_.graph.end_port(c); ++pid) {
        if (ports_[pid]) fc.ports.push_back(idx_.graph.port(pid));
      }
      out.components.push_back(std::move(fc));
    }
    for (std::size_t ci = 0; ci < connectors_.size(); ++ci) {
      if (connectors_[ci]) out.connectors.push_back(m.connectors[ci]);
    }
    return canonicalize(out);
  }

 private:
  const ModelIndex& idx_;
  std::vector<char> components_;
  std::vector<char> ports_;
  std::vector<char> connectors_;
};

inline std::size_t require_component(const ModelIndex& idx, const std::string& name) {
  std::size_t c = idx.hierarchy.index_of(name);
  if (c == npos) throw Error("no such component: " + name);
  return c;
}

// Assumes the pair is satisfied; throws if some view element has no match.
inline Witness satisfaction_witness(const ModelIndex& idx, const CncView& v) {
  FragmentBuilder b(idx);
  Annotation note{"C&C model " + idx.model.name + " satisfies view " + v.name + ".", {}};
  for (const auto& vc : v.components) {
    b.add_component(require_component(idx, vc.name));
    note.refers_to.push_back(vc.name);
  }
  for (const auto& ac : v.connectors) {
    if (find_chain(idx, v, ac, b.connector_mask())) continue;
    auto chain = find_chain(idx, v, ac);
    if (!chain) throw Error("not satisfied: no chain for abstract connector");
    for (std::size_t ci : *chain) b.add_connector(ci);
  }
  for (const auto& vc : v.components) {
    std::size_t c = idx.hierarchy.index_of(vc.name);
    for (const auto& vp : vc.ports) {
      std::size_t chosen = npos;
      for (std::size_t pid = idx.graph.first_port(c); pid < idx.graph.end_port(c); ++pid) {
        if (!port_matches(vp, idx.graph.port(pid))) continue;
        if (b.has_port(pid)) {
          chosen = pid;
          break;
        }
        if (chosen == npos) chosen = pid;
      }
      if (chosen == npos) throw Error("not satisfied: no port for " + vc.name + " " + describe(vp));
      b.add_port(chosen);
    }
  }
  b.close_upwards();
  return {WitnessKind::Satisfaction, b.build("W_satisfaction_" + v.name), {std::move(note)}};
}

}  // namespace detail

inline Witness build_satisfaction_witness(const ModelIndex& idx, const CncView& v) {
  if (!find_reasons(idx, v).empty()) throw Error("not satisfied: model " + idx.model.name + ", view " + v.name);
  return detail::satisfaction_witness(idx, v);
}

inline Witness build_missing_component_witness(const MissingComponent& r, const std::string& model,
                                               const std::string& view) {
  CncModel empty;
  empty.name = "W_missing_" + r.component;
  return {WitnessKind::MissingComponent, std::move(empty), {{render_text(r, model, view), {r.component}}}};
}

inline Witness build_hierarchy_witness(const ModelIndex& idx, const HierarchyMismatch& r, const std::string& view) {
  detail::FragmentBuilder b(idx);
  b.add_component(detail::require_component(idx, r.component));
  b.add_component(detail::require_component(idx, r.subcomponent));
  b.close_upwards();
  return {WitnessKind::HierarchyMismatch, b.build("W_hierarchy_" + r.component + "_" + r.subcomponent),
          {{render_text(r, idx.model.name, view), {r.component, r.subcomponent}}}};
}

inline Witness build_interface_witness(const ModelIndex& idx, const InterfaceMismatch& r, const std::string& view) {
  detail::FragmentBuilder b(idx);
  std::size_t c = detail::require_component(idx, r.component);
  b.add_component(c);
  const bool no_match = std::holds_alternative<NoMatchingPort>(r.failure);
  for (std::size_t pid = idx.graph.first_port(c); pid < idx.graph.end_port(c); ++pid) {
    if (no_match || idx.graph.port(pid).name == r.view_port.name) b.add_port(pid);
  }
  std::string suffix = r.view_port.name.value_or("anonymous");
  return {WitnessKind::InterfaceMismatch, b.build("W_interface_" + r.component + "_" + suffix),
          {{render_text(r, idx.model.name, view), {r.component + "." + r.view_port.name.value_or("*")}}}};
}

inline Witness build_missing_connection_witness(const ModelIndex& idx, const MissingConnection& r,
                                                const std::string& view) {
  const auto& ac = r.connector;
  detail::FragmentBuilder b(idx);
  std::size_t src = detail::require_component(idx, ac.src_component);
  b.add_component(src);
  b.add_component(detail::require_component(idx, ac.tgt_component));
  std::vector<std::size_t> starts;
  for (std::size_t pid = idx.graph.first_port(src); pid < idx.graph.end_port(src); ++pid) {
    if (!ac.src_port || idx.graph.port(pid).name == *ac.src_port) starts.push_back(pid);
  }
  for (std::size_t ci : idx.graph.search(std::move(starts)).traversed) b.add_connector(ci);
  b.close_upwards();
  return {WitnessKind::MissingConnection, b.build("W_connection_" + ac.src_component + "_" + ac.tgt_component),
          {{render_text(r, idx.model.name, view), {ac.src_component, ac.tgt_component}}}};
}

/// The witness for one reason of non-satisfaction.
inline Witness build_witness(const ModelIndex& idx, const CncView& v, const NonSatReason& reason) {
  return std::visit(
      [&](const auto& r) -> Witness {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, MissingComponent>) {
          return build_missing_component_witness(r, idx.model.name, v.name);
        } else if constexpr (std::is_same_v<R, HierarchyMismatch>) {
          return build_hierarchy_witness(idx, r, v.name);
        } else if constexpr (std::is_same_v<R, InterfaceMismatch>) {
          return build_interface_witness(idx, r, v.name);
        } else {
          return build_missing_connection_witness(idx, r, v.name);
        }
      },
      reason);
}

inline Witness build_satisfaction_witness(const CncModel& m, const CncView& v) {
  return build_satisfaction_witness(ModelIndex(m), v);
}
inline Witness build_witness(const CncModel& m, const CncView& v, const NonSatReason& reason) {
  return build_witness(ModelIndex(m), v, reason);
}

/// A witness presented as a view: concrete containment, fully specified
/// ports and one abstract connector per concrete connector.
inline CncView witness_as_view(const Witness& w) {
  CncView v;
  v.name = w.fragment.name;
  for (const auto& c : w.fragment.components) {
    ViewComponent vc{c.name, c.parent, {}};
    for (const auto& p : c.ports) vc.ports.push_back({p.name, p.direction, p.type});
    v.components.push_back(std::move(vc));
  }
  for (const auto& c : w.fragment.connectors) {
    v.connectors.push_back({c.src_component, c.src_port, c.tgt_component, c.tgt_port});
  }
  return v;
}

}  // namespace ccview
