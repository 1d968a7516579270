#pragma once

// Component-and-connector models and views.
//
// A model is complete: every port has a name and a type, connectors are
// concrete and the containment relation is a tree with a single top
// component. A view is partial: it is a containment forest whose ports may
// lack names or types and whose connectors are abstract (they stand for a
// chain of concrete connectors).
//
// Both are stored in the same raw form (Architecture) so that parsers and
// generators can build them freely; validate_model / validate_view report
// every broken rule. All queries below assume a validated input.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ccview {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Direction { In, Out };

inline std::string_view to_string(Direction d) { return d == Direction::In ? "in" : "out"; }

struct Port {
  std::string name;
  Direction direction = Direction::In;
  std::string type;

  bool operator==(const Port&) const = default;
};

struct Connector {
  std::string src_component;
  std::string src_port;
  std::string tgt_component;
  std::string tgt_port;

  bool operator==(const Connector&) const = default;
};

/// A port of a view component. The direction is always known; an absent
/// name or type means "any".
struct ViewPort {
  std::optional<std::string> name;
  Direction direction = Direction::In;
  std::optional<std::string> type;

  bool operator==(const ViewPort&) const = default;
};

/// Asserts that some chain of concrete connectors leads from the source
/// component to the target component. Port names, when present, constrain
/// the first and last port of the chain.
struct AbstractConnector {
  std::string src_component;
  std::optional<std::string> src_port;
  std::string tgt_component;
  std::optional<std::string> tgt_port;

  bool operator==(const AbstractConnector&) const = default;
};

template <class PortT>
struct ComponentDecl {
  std::string name;
  std::string parent;  // empty for top-level components
  std::vector<PortT> ports;

  bool is_top() const { return parent.empty(); }
  bool operator==(const ComponentDecl&) const = default;
};

template <class PortT, class EdgeT>
struct Architecture {
  using port_type = PortT;
  using edge_type = EdgeT;
  using component_type = ComponentDecl<PortT>;

  std::string name;
  std::vector<component_type> components;  // declaration (pre-)order
  std::vector<EdgeT> connectors;

  const component_type* find(std::string_view component) const {
    auto it = std::find_if(components.begin(), components.end(),
                           [&](const component_type& c) { return c.name == component; });
    return it == components.end() ? nullptr : &*it;
  }
  component_type* find(std::string_view component) {
    return const_cast<component_type*>(std::as_const(*this).find(component));
  }
  bool contains(std::string_view component) const { return find(component) != nullptr; }

  std::size_t port_count() const {
    std::size_t n = 0;
    for (const auto& c : components) n += c.ports.size();
    return n;
  }

  /// Type names used by the ports.
  std::set<std::string> types() const {
    std::set<std::string> out;
    for (const auto& c : components) {
      for (const auto& p : c.ports) {
        if constexpr (std::is_same_v<PortT, Port>) {
          out.insert(p.type);
        } else if (p.type) {
          out.insert(*p.type);
        }
      }
    }
    return out;
  }

  bool operator==(const Architecture&) const = default;
};

using CncModel = Architecture<Port, Connector>;
using CncView = Architecture<ViewPort, AbstractConnector>;
using Component = CncModel::component_type;
using ViewComponent = CncView::component_type;

// ---------------------------------------------------------------------------
// Containment index

/// Index over the containment relation of a well-formed model or view.
/// Holds views into `arch`, which must outlive it.
template <class Arch>
class Hierarchy {
 public:
  explicit Hierarchy(const Arch& arch) : arch_(&arch) {
    const std::size_t n = arch.components.size();
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index_.emplace(arch.components[i].name, i);
    parent_.assign(n, npos);
    children_.assign(n, {});
    depth_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = arch.components[i];
      if (c.is_top()) {
        roots_.push_back(i);
        continue;
      }
      std::size_t p = index_of(c.parent);
      if (p == npos) throw Error("unknown parent component '" + c.parent + "'");
      parent_[i] = p;
      children_[p].push_back(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t d = 1;
      for (std::size_t a = parent_[i]; a != npos; a = parent_[a]) {
        if (++d > n) throw Error("containment cycle at component '" + arch.components[i].name + "'");
      }
      depth_[i] = d;
    }
  }

  const Arch& arch() const { return *arch_; }
  std::size_t size() const { return parent_.size(); }
  const std::string& name(std::size_t i) const { return arch_->components[i].name; }

  std::size_t index_of(std::string_view component) const {
    auto it = index_.find(component);
    return it == index_.end() ? npos : it->second;
  }

  std::size_t parent(std::size_t i) const { return parent_[i]; }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
  const std::vector<std::size_t>& roots() const { return roots_; }
  std::size_t depth(std::size_t i) const { return depth_[i]; }

  /// True iff `anc` is a strict ancestor of `desc`.
  bool is_ancestor(std::size_t anc, std::size_t desc) const {
    if (depth_[anc] >= depth_[desc]) return false;
    std::size_t a = desc;
    while (depth_[a] > depth_[anc]) a = parent_[a];
    return a == anc;
  }

  /// Lowest common ancestor-or-self, npos when in different trees.
  std::size_t lca(std::size_t a, std::size_t b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
      if (a == npos || b == npos) return npos;
    }
    return a;
  }

  /// Strict descendants in pre-order.
  std::vector<std::size_t> descendants(std::size_t i) const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack(children_[i].rbegin(), children_[i].rend());
    while (!stack.empty()) {
      std::size_t c = stack.back();
      stack.pop_back();
      out.push_back(c);
      stack.insert(stack.end(), children_[c].rbegin(), children_[c].rend());
    }
    return out;
  }

  /// Components on the path from `from` up to and including `ancestor`.
  std::vector<std::size_t> path_up(std::size_t from, std::size_t ancestor) const {
    std::vector<std::size_t> out;
    for (std::size_t a = from; a != npos; a = parent_[a]) {
      out.push_back(a);
      if (a == ancestor) return out;
    }
    throw Error("'" + name(ancestor) + "' is not an ancestor of '" + name(from) + "'");
  }

  std::size_t max_depth() const {
    std::size_t d = 0;
    for (std::size_t x : depth_) d = std::max(d, x);
    return d;
  }

 private:
  const Arch* arch_;
  std::unordered_map<std::string_view, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> roots_;
};

// ---------------------------------------------------------------------------
// Connector graph

struct PortRef {
  std::string component;
  std::string port;

  auto operator<=>(const PortRef&) const = default;
};

/// Model ports flattened to dense ids, with connectors indexed by their
/// source port. Consecutive connectors of a chain share a port: the target
/// port of one is the source port of the next.
class ConnectorGraph {
 public:
  struct Search {
    std::vector<std::size_t> via;       // connector that first reached a port, npos if unreached
    std::vector<char> is_start;
    std::vector<std::size_t> reached;   // ports in BFS discovery order
    std::vector<std::size_t> traversed; // connectors in BFS order
  };

  ConnectorGraph(const CncModel& m, const Hierarchy<CncModel>& h) : model_(&m), hierarchy_(&h) {
    base_.resize(m.components.size() + 1, 0);
    for (std::size_t i = 0; i < m.components.size(); ++i) {
      base_[i + 1] = base_[i] + m.components[i].ports.size();
      for (std::size_t p = 0; p < m.components[i].ports.size(); ++p) owner_.push_back(i);
    }
    src_.resize(m.connectors.size());
    tgt_.resize(m.connectors.size());
    outgoing_.resize(base_.back());
    for (std::size_t ci = 0; ci < m.connectors.size(); ++ci) {
      const auto& c = m.connectors[ci];
      src_[ci] = port_id(h.index_of(c.src_component), c.src_port);
      tgt_[ci] = port_id(h.index_of(c.tgt_component), c.tgt_port);
      if (src_[ci] == npos || tgt_[ci] == npos) throw Error("connector with unknown endpoint");
      outgoing_[src_[ci]].push_back(ci);
    }
    for (auto& out : outgoing_) {
      std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        return key(tgt_[a]) < key(tgt_[b]);
      });
    }
  }

  const CncModel& model() const { return *model_; }
  const Hierarchy<CncModel>& hierarchy() const { return *hierarchy_; }
  std::size_t port_count() const { return owner_.size(); }

  std::size_t port_id(std::size_t component, std::string_view port) const {
    if (component == npos) return npos;
    const auto& ports = model_->components[component].ports;
    for (std::size_t p = 0; p < ports.size(); ++p) {
      if (ports[p].name == port) return base_[component] + p;
    }
    return npos;
  }
  std::size_t first_port(std::size_t component) const { return base_[component]; }
  std::size_t end_port(std::size_t component) const { return base_[component + 1]; }
  std::size_t owner(std::size_t pid) const { return owner_[pid]; }
  const Port& port(std::size_t pid) const {
    return model_->components[owner_[pid]].ports[pid - base_[owner_[pid]]];
  }
  PortRef ref(std::size_t pid) const {
    return {model_->components[owner_[pid]].name, port(pid).name};
  }

  std::size_t source(std::size_t ci) const { return src_[ci]; }
  std::size_t target(std::size_t ci) const { return tgt_[ci]; }
  const std::vector<std::size_t>& outgoing(std::size_t pid) const { return outgoing_[pid]; }

  /// Breadth-first search along chains from the given start ports. When
  /// `allowed` is non-empty only connectors flagged there are followed.
  /// Start ports are expanded in (component, port) name order and each
  /// port's connectors in target name order, so results are deterministic.
  Search search(std::vector<std::size_t> starts, std::span<const char> allowed = {}) const {
    Search s;
    s.via.assign(port_count(), npos);
    s.is_start.assign(port_count(), 0);
    std::vector<char> expanded(port_count(), 0);
    std::sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    std::deque<std::size_t> queue;
    for (std::size_t p : starts) {
      if (s.is_start[p]) continue;
      s.is_start[p] = 1;
      expanded[p] = 1;
      queue.push_back(p);
    }
    while (!queue.empty()) {
      std::size_t p = queue.front();
      queue.pop_front();
      for (std::size_t ci : outgoing_[p]) {
        if (!allowed.empty() && !allowed[ci]) continue;
        std::size_t t = tgt_[ci];
        if (s.via[t] != npos) continue;
        s.via[t] = ci;
        s.reached.push_back(t);
        s.traversed.push_back(ci);
        if (!expanded[t]) {
          expanded[t] = 1;
          queue.push_back(t);
        }
      }
    }
    return s;
  }

  /// Connectors of the chain that reached `pid`, in chain order.
  std::vector<std::size_t> chain_to(const Search& s, std::size_t pid) const {
    std::vector<std::size_t> chain;
    std::size_t p = pid;
    do {
      std::size_t ci = s.via[p];
      if (ci == npos) throw Error("port not reached by search");
      chain.push_back(ci);
      p = src_[ci];
    } while (!s.is_start[p]);
    std::reverse(chain.begin(), chain.end());
    return chain;
  }

 private:
  std::pair<std::string_view, std::string_view> key(std::size_t pid) const {
    return {model_->components[owner_[pid]].name, port(pid).name};
  }

  const CncModel* model_;
  const Hierarchy<CncModel>* hierarchy_;
  std::vector<std::size_t> base_;
  std::vector<std::size_t> owner_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> tgt_;
  std::vector<std::vector<std::size_t>> outgoing_;
};

// ---------------------------------------------------------------------------
// Well-formedness

enum class ElementKind { Document, Component, Port, Connector };

/// One broken well-formedness rule. `index` addresses the component or
/// connector; `port` the port within the component for ElementKind::Port.
struct Violation {
  std::string rule;
  std::string message;
  ElementKind element = ElementKind::Document;
  std::size_t index = 0;
  std::size_t port = 0;
};

namespace rules {
inline constexpr std::string_view kDuplicateComponent = "duplicate component name";
inline constexpr std::string_view kUnknownParent = "unknown parent component";
inline constexpr std::string_view kCycle = "containment cycle";
inline constexpr std::string_view kOneTop = "exactly one top component";
inline constexpr std::string_view kDuplicatePort = "duplicate port name";
inline constexpr std::string_view kUnknownComponent = "unknown component";
inline constexpr std::string_view kUnknownPort = "unknown port";
inline constexpr std::string_view kTypeMismatch = "connected ports differ in type";
inline constexpr std::string_view kPlacement = "illegal connector placement";
inline constexpr std::string_view kOneIncoming = "at most one incoming connector";
}  // namespace rules

namespace detail {

// Shared by models and views: names, parents, cycles, port names.
template <class Arch, class PortName>
void validate_containment(const Arch& a, PortName port_name, std::vector<Violation>& out) {
  std::unordered_map<std::string_view, std::size_t> first;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const auto& c = a.components[i];
    if (!first.emplace(c.name, i).second) {
      out.push_back({std::string(rules::kDuplicateComponent), "component '" + c.name + "' is declared more than once",
                     ElementKind::Component, i});
    }
  }
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const auto& c = a.components[i];
    if (!c.is_top() && !first.contains(c.parent)) {
      out.push_back({std::string(rules::kUnknownParent), "parent '" + c.parent + "' of '" + c.name + "' does not exist",
                     ElementKind::Component, i});
      continue;
    }
    // Walk up the parent chain; revisiting the start or exceeding n steps means a cycle.
    std::size_t steps = 0;
    std::string_view p = c.parent;
    bool cycle = false;
    while (!p.empty()) {
      if (p == c.name || ++steps > a.components.size()) {
        cycle = true;
        break;
      }
      auto it = first.find(p);
      if (it == first.end()) break;
      p = a.components[it->second].parent;
    }
    if (cycle) {
      out.push_back({std::string(rules::kCycle), "component '" + c.name + "' is contained in itself",
                     ElementKind::Component, i});
    }
  }
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const auto& ports = a.components[i].ports;
    std::set<std::string_view> seen;
    for (std::size_t p = 0; p < ports.size(); ++p) {
      auto n = port_name(ports[p]);
      if (!n) continue;
      if (!seen.insert(*n).second) {
        out.push_back({std::string(rules::kDuplicatePort),
                       "component '" + a.components[i].name + "' has more than one port named '" + std::string(*n) + "'",
                       ElementKind::Port, i, p});
      }
    }
  }
}

}  // namespace detail

inline std::vector<Violation> validate_model(const CncModel& m) {
  std::vector<Violation> out;
  detail::validate_containment(
      m, [](const Port& p) { return std::optional<std::string_view>(p.name); }, out);

  std::size_t tops = std::count_if(m.components.begin(), m.components.end(),
                                   [](const Component& c) { return c.is_top(); });
  if (tops != 1) {
    out.push_back({std::string(rules::kOneTop),
                   "model '" + m.name + "' has " + std::to_string(tops) + " top components", ElementKind::Document});
  }

  const auto find_port = [&](const Component* c, std::string_view name) -> const Port* {
    if (!c) return nullptr;
    for (const auto& p : c->ports) {
      if (p.name == name) return &p;
    }
    return nullptr;
  };

  std::set<std::pair<std::string_view, std::string_view>> targets;
  for (std::size_t ci = 0; ci < m.connectors.size(); ++ci) {
    const auto& c = m.connectors[ci];
    const Component* src = m.find(c.src_component);
    const Component* tgt = m.find(c.tgt_component);
    bool endpoints_ok = true;
    for (auto [cmp, name] : {std::pair{src, &c.src_component}, std::pair{tgt, &c.tgt_component}}) {
      if (!cmp) {
        out.push_back({std::string(rules::kUnknownComponent), "connector refers to unknown component '" + *name + "'",
                       ElementKind::Connector, ci});
        endpoints_ok = false;
      }
    }
    if (!endpoints_ok) continue;
    const Port* sp = find_port(src, c.src_port);
    const Port* tp = find_port(tgt, c.tgt_port);
    if (!sp) {
      out.push_back({std::string(rules::kUnknownPort), "component '" + src->name + "' has no port '" + c.src_port + "'",
                     ElementKind::Connector, ci});
    }
    if (!tp) {
      out.push_back({std::string(rules::kUnknownPort), "component '" + tgt->name + "' has no port '" + c.tgt_port + "'",
                     ElementKind::Connector, ci});
    }
    if (!sp || !tp) continue;
    if (sp->type != tp->type) {
      out.push_back({std::string(rules::kTypeMismatch),
                     "connector " + c.src_component + "." + c.src_port + " -> " + c.tgt_component + "." + c.tgt_port +
                         " joins types " + sp->type + " and " + tp->type,
                     ElementKind::Connector, ci});
    }
    bool siblings = src != tgt && src->parent == tgt->parent && !src->is_top();
    bool down = tgt->parent == src->name;
    bool up = src->parent == tgt->name;
    bool legal = (siblings && sp->direction == Direction::Out && tp->direction == Direction::In) ||
                 (down && sp->direction == Direction::In && tp->direction == Direction::In) ||
                 (up && sp->direction == Direction::Out && tp->direction == Direction::Out);
    if (!legal) {
      out.push_back({std::string(rules::kPlacement),
                     "connector " + c.src_component + "." + c.src_port + " -> " + c.tgt_component + "." + c.tgt_port +
                         " must join sibling out->in, parent in->child in, or child out->parent out",
                     ElementKind::Connector, ci});
    }
    if (!targets.emplace(c.tgt_component, c.tgt_port).second) {
      out.push_back({std::string(rules::kOneIncoming),
                     "port " + c.tgt_component + "." + c.tgt_port + " has more than one incoming connector",
                     ElementKind::Connector, ci});
    }
  }
  return out;
}

inline std::vector<Violation> validate_view(const CncView& v) {
  std::vector<Violation> out;
  detail::validate_containment(
      v,
      [](const ViewPort& p) {
        return p.name ? std::optional<std::string_view>(*p.name) : std::nullopt;
      },
      out);
  for (std::size_t ci = 0; ci < v.connectors.size(); ++ci) {
    const auto& c = v.connectors[ci];
    for (const std::string* name : {&c.src_component, &c.tgt_component}) {
      if (!v.contains(*name)) {
        out.push_back({std::string(rules::kUnknownComponent),
                       "abstract connector refers to unknown component '" + *name + "'", ElementKind::Connector, ci});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Queries

/// Strict descendants of `component`.
inline std::set<std::string> subs_transitive(const CncModel& m, std::string_view component) {
  Hierarchy h(m);
  std::size_t i = h.index_of(component);
  if (i == npos) throw Error("no such component: " + std::string(component));
  std::set<std::string> out;
  for (std::size_t d : h.descendants(i)) out.insert(h.name(d));
  return out;
}

/// Lowest component whose subtree (itself included) contains all of `components`.
inline std::string least_common_parent(const CncModel& m, std::span<const std::string> components) {
  if (components.empty()) throw Error("empty component set");
  Hierarchy h(m);
  std::size_t acc = npos;
  for (const auto& c : components) {
    std::size_t i = h.index_of(c);
    if (i == npos) throw Error("no such component: " + c);
    acc = acc == npos ? i : h.lca(acc, i);
  }
  return h.name(acc);
}

/// All (component, port) pairs reachable by a chain of one or more
/// connectors starting at `start` (restricted to `start_port` if given).
inline std::set<PortRef> reachable_from(const CncModel& m, std::string_view start,
                                        const std::optional<std::string>& start_port = std::nullopt) {
  Hierarchy h(m);
  ConnectorGraph g(m, h);
  std::size_t s = h.index_of(start);
  if (s == npos) throw Error("no such component: " + std::string(start));
  std::vector<std::size_t> starts;
  if (start_port) {
    std::size_t p = g.port_id(s, *start_port);
    if (p == npos) throw Error("no such port: " + std::string(start) + "." + *start_port);
    starts.push_back(p);
  } else {
    for (std::size_t p = g.first_port(s); p < g.end_port(s); ++p) starts.push_back(p);
  }
  std::set<PortRef> out;
  for (std::size_t p : g.search(starts).reached) out.insert(g.ref(p));
  return out;
}

// ---------------------------------------------------------------------------
// Canonical order

namespace detail {

// Component whose body holds a model connector: the shared parent of two
// siblings, otherwise the parent end of a parent/child connector.
inline std::size_t connector_owner(const Hierarchy<CncModel>& h, const Connector& c) {
  std::size_t s = h.index_of(c.src_component);
  std::size_t t = h.index_of(c.tgt_component);
  if (s == npos || t == npos) return npos;
  if (h.parent(t) == s) return s;
  if (h.parent(s) == t) return t;
  return h.parent(s);
}

template <class Arch>
std::vector<std::size_t> preorder(const Hierarchy<Arch>& h) {
  std::vector<std::size_t> out;
  for (std::size_t r : h.roots()) {
    out.push_back(r);
    auto d = h.descendants(r);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

}  // namespace detail

/// Reorders components into containment pre-order and (for models) groups
/// connectors by the component that owns them, preserving relative order.
/// This is the order in which the printers emit elements.
template <class Arch>
Arch canonicalize(const Arch& a) {
  Hierarchy h(a);
  auto order = detail::preorder(h);
  Arch out;
  out.name = a.name;
  out.components.reserve(a.components.size());
  for (std::size_t i : order) out.components.push_back(a.components[i]);
  if constexpr (std::is_same_v<Arch, CncModel>) {
    std::vector<std::size_t> rank(h.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    std::vector<std::size_t> idx(a.connectors.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<std::size_t> owner_rank(a.connectors.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      std::size_t o = detail::connector_owner(h, a.connectors[i]);
      owner_rank[i] = o == npos ? 0 : rank[o];
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return owner_rank[x] < owner_rank[y]; });
    for (std::size_t i : idx) out.connectors.push_back(a.connectors[i]);
  } else {
    out.connectors = a.connectors;
  }
  return out;
}

}  // namespace ccview
