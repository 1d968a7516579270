#pragma once

// Random models, views derived from them, and view mutations.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the standard. Range reduction is done here (rejection sampling) rather
// than through <random> distributions, whose results differ between
// standard library implementations, so a seed yields the same model on
// every platform.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ccview/match.hpp"

namespace ccview {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n > 0.
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  /// Uniform in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo) + 1)); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Models

struct ModelGenParams {
  int num_components = 1;
  int max_subs_per_component = 1;
  int num_port_types = 1;
  int max_ports = 0;
  int max_connectors = 0;
  std::uint64_t seed = 0;
};

/// Random well-formed model: a random tree of `num_components` components
/// with bounded branching, `max_ports` ports spread over the components, and
/// up to `max_connectors` connectors placed at legal positions. Placement
/// has a bounded number of attempts, so fewer connectors may result.
inline CncModel gen_model(const ModelGenParams& p) {
  if (p.num_components <= 0) throw Error("number of components must be positive");
  if (p.max_subs_per_component <= 0) throw Error("maximal number of subcomponents must be positive");
  if (p.num_port_types <= 0) throw Error("number of port types must be positive");
  if (p.max_ports < 0 || p.max_connectors < 0) throw Error("port and connector bounds must not be negative");

  Rng rng(p.seed);
  const std::size_t n = static_cast<std::size_t>(p.num_components);
  CncModel m;
  m.name = "Random" + std::to_string(p.seed);
  std::vector<std::size_t> parent(n, npos);
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<std::size_t> open{0};  // components that may take another child
  for (std::size_t i = 0; i < n; ++i) {
    m.components.push_back({"C" + std::to_string(i + 1), "", {}});
    if (i == 0) continue;
    std::size_t slot = rng.below(open.size());
    std::size_t par = open[slot];
    parent[i] = par;
    children[par].push_back(i);
    m.components[i].parent = m.components[par].name;
    if (children[par].size() >= static_cast<std::size_t>(p.max_subs_per_component)) {
      open[slot] = open.back();
      open.pop_back();
    }
    open.push_back(i);
  }

  struct PortLoc {
    std::size_t cmp;
    std::size_t idx;
  };
  std::vector<PortLoc> free_targets;
  for (int k = 0; k < p.max_ports; ++k) {
    std::size_t c = rng.below(n);
    Direction d = rng.below(2) == 0 ? Direction::In : Direction::Out;
    std::string type = "T" + std::to_string(rng.below(static_cast<std::size_t>(p.num_port_types)) + 1);
    auto& ports = m.components[c].ports;
    ports.push_back({"p" + std::to_string(ports.size() + 1), d, type});
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < m.components[c].ports.size(); ++i) free_targets.push_back({c, i});
  }

  // Legal sources for a target: sibling out ports and parent in ports for an
  // in port; child out ports for an out port. Types must agree.
  std::vector<PortLoc> candidates;
  auto collect = [&](std::size_t cmp, Direction d, const std::string& type) {
    const auto& ports = m.components[cmp].ports;
    for (std::size_t i = 0; i < ports.size(); ++i) {
      if (ports[i].direction == d && ports[i].type == type) candidates.push_back({cmp, i});
    }
  };
  const int budget = 4 * p.max_connectors + 16;
  for (int attempt = 0; attempt < budget && static_cast<int>(m.connectors.size()) < p.max_connectors &&
                        !free_targets.empty();
       ++attempt) {
    std::size_t slot = rng.below(free_targets.size());
    PortLoc t = free_targets[slot];
    const Port& tp = m.components[t.cmp].ports[t.idx];
    candidates.clear();
    if (tp.direction == Direction::In) {
      if (parent[t.cmp] == npos) continue;
      for (std::size_t s : children[parent[t.cmp]]) {
        if (s != t.cmp) collect(s, Direction::Out, tp.type);
      }
      collect(parent[t.cmp], Direction::In, tp.type);
    } else {
      for (std::size_t s : children[t.cmp]) collect(s, Direction::Out, tp.type);
    }
    if (candidates.empty()) continue;
    PortLoc s = rng.pick(candidates);
    m.connectors.push_back({m.components[s.cmp].name, m.components[s.cmp].ports[s.idx].name,
                            m.components[t.cmp].name, tp.name});
    free_targets[slot] = free_targets.back();
    free_targets.pop_back();
  }
  return canonicalize(m);
}

// ---------------------------------------------------------------------------
// Views

enum class MutationKind {
  ChangePortType,
  RenameComponent,
  RenamePort,
  SwapComponentNames,
  ErasePortName,
  ErasePortType,
  EraseConnectorEndpointPorts,
};

inline constexpr MutationKind kAllMutations[] = {
    MutationKind::ChangePortType, MutationKind::RenameComponent, MutationKind::RenamePort,
    MutationKind::SwapComponentNames, MutationKind::ErasePortName, MutationKind::ErasePortType,
    MutationKind::EraseConnectorEndpointPorts,
};
inline constexpr MutationKind kBenignMutations[] = {
    MutationKind::ErasePortName, MutationKind::ErasePortType, MutationKind::EraseConnectorEndpointPorts};

inline bool is_benign(MutationKind k) {
  return k == MutationKind::ErasePortName || k == MutationKind::ErasePortType ||
         k == MutationKind::EraseConnectorEndpointPorts;
}

inline std::string_view to_string(MutationKind k) {
  switch (k) {
    case MutationKind::ChangePortType: return "change-port-type";
    case MutationKind::RenameComponent: return "rename-component";
    case MutationKind::RenamePort: return "rename-port";
    case MutationKind::SwapComponentNames: return "swap-component-names";
    case MutationKind::ErasePortName: return "erase-port-name";
    case MutationKind::ErasePortType: return "erase-port-type";
    case MutationKind::EraseConnectorEndpointPorts: return "erase-connector-ports";
  }
  return "?";
}

inline std::optional<MutationKind> parse_mutation(std::string_view s) {
  for (MutationKind k : kAllMutations) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct ViewDeriveParams {
  int keep_components = 0;
  int max_keep_ports = 0;
  int max_keep_connectors = 0;
  std::vector<MutationKind> mutations;
  std::uint64_t seed = 0;
};

struct MutationRecord {
  MutationKind kind;
  bool applied = false;
  std::string description;
};

struct DerivedView {
  CncView view;
  std::vector<MutationRecord> log;
};

namespace detail {

inline void rename_component(CncView& v, const std::string& from, const std::string& to) {
  for (auto& c : v.components) {
    if (c.name == from) c.name = to;
    if (c.parent == from) c.parent = to;
  }
  for (auto& ac : v.connectors) {
    if (ac.src_component == from) ac.src_component = to;
    if (ac.tgt_component == from) ac.tgt_component = to;
  }
}

class Mutator {
 public:
  Mutator(const CncModel& m, CncView& v, Rng& rng) : model_(m), view_(v), rng_(rng) {
    for (const auto& c : m.components) taken_.insert(c.name);
    for (const auto& c : v.components) taken_.insert(c.name);
  }

  MutationRecord apply(MutationKind k) {
    MutationRecord r{k, false, "no eligible element"};
    switch (k) {
      case MutationKind::ChangePortType: change_port_type(r); break;
      case MutationKind::RenameComponent: rename_component(r); break;
      case MutationKind::RenamePort: rename_port(r); break;
      case MutationKind::SwapComponentNames: swap_names(r); break;
      case MutationKind::ErasePortName: erase_port_name(r); break;
      case MutationKind::ErasePortType: erase_port_type(r); break;
      case MutationKind::EraseConnectorEndpointPorts: erase_connector_ports(r); break;
    }
    return r;
  }

 private:
  // Names in the reserved `mut_<n>` namespace, never produced by gen_model.
  std::string fresh() {
    std::string s;
    do {
      s = "mut_" + std::to_string(++counter_);
    } while (taken_.contains(s));
    taken_.insert(s);
    return s;
  }

  template <class Pred>
  std::vector<std::pair<std::size_t, std::size_t>> ports_where(Pred pred) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t c = 0; c < view_.components.size(); ++c) {
      for (std::size_t p = 0; p < view_.components[c].ports.size(); ++p) {
        if (pred(view_.components[c].ports[p])) out.emplace_back(c, p);
      }
    }
    return out;
  }

  std::string port_label(std::size_t c, std::size_t p) const {
    return view_.components[c].name + "." + view_.components[c].ports[p].name.value_or("*");
  }

  void change_port_type(MutationRecord& r) {
    auto eligible = ports_where([](const ViewPort& p) { return p.type.has_value(); });
    if (eligible.empty()) return;
    auto [c, p] = rng_.pick(eligible);
    auto& port = view_.components[c].ports[p];
    std::vector<std::string> others;
    for (const auto& t : model_.types()) {
      if (t != *port.type) others.push_back(t);
    }
    std::string to = others.empty() ? fresh() : rng_.pick(others);
    r = {r.kind, true, "change type of " + port_label(c, p) + " from " + *port.type + " to " + to};
    port.type = to;
  }

  void rename_component(MutationRecord& r) {
    if (view_.components.empty()) return;
    std::string from = view_.components[rng_.below(view_.components.size())].name;
    std::string to = fresh();
    detail::rename_component(view_, from, to);
    r = {r.kind, true, "rename component " + from + " to " + to};
  }

  void rename_port(MutationRecord& r) {
    auto eligible = ports_where([](const ViewPort& p) { return p.name.has_value(); });
    if (eligible.empty()) return;
    auto [c, p] = rng_.pick(eligible);
    auto& port = view_.components[c].ports[p];
    const std::string& cmp = view_.components[c].name;
    std::string from = *port.name;
    std::string to = fresh();
    port.name = to;
    for (auto& ac : view_.connectors) {
      if (ac.src_component == cmp && ac.src_port == from) ac.src_port = to;
      if (ac.tgt_component == cmp && ac.tgt_port == from) ac.tgt_port = to;
    }
    r = {r.kind, true, "rename port " + cmp + "." + from + " to " + to};
  }

  void swap_names(MutationRecord& r) {
    const std::size_t n = view_.components.size();
    if (n < 2) return;
    std::size_t a = rng_.below(n);
    std::size_t b = rng_.below(n - 1);
    if (b >= a) ++b;
    std::string na = view_.components[a].name;
    std::string nb = view_.components[b].name;
    std::string tmp = fresh();
    detail::rename_component(view_, na, tmp);
    detail::rename_component(view_, nb, na);
    detail::rename_component(view_, tmp, nb);
    r = {r.kind, true, "swap names of " + na + " and " + nb};
  }

  void erase_port_name(MutationRecord& r) {
    auto eligible = ports_where([](const ViewPort& p) { return p.name.has_value(); });
    if (eligible.empty()) return;
    auto [c, p] = rng_.pick(eligible);
    r = {r.kind, true, "erase name of " + port_label(c, p)};
    view_.components[c].ports[p].name.reset();
  }

  void erase_port_type(MutationRecord& r) {
    auto eligible = ports_where([](const ViewPort& p) { return p.type.has_value(); });
    if (eligible.empty()) return;
    auto [c, p] = rng_.pick(eligible);
    r = {r.kind, true, "erase type of " + port_label(c, p)};
    view_.components[c].ports[p].type.reset();
  }

  void erase_connector_ports(MutationRecord& r) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < view_.connectors.size(); ++i) {
      if (view_.connectors[i].src_port || view_.connectors[i].tgt_port) eligible.push_back(i);
    }
    if (eligible.empty()) return;
    auto& ac = view_.connectors[rng_.pick(eligible)];
    r = {r.kind, true, "erase endpoint ports of " + ac.src_component + " -> " + ac.tgt_component};
    ac.src_port.reset();
    ac.tgt_port.reset();
  }

  const CncModel& model_;
  CncView& view_;
  Rng& rng_;
  std::set<std::string> taken_;
  int counter_ = 0;
};

}  // namespace detail

/// Applies mutations in order to `v`, returning one record per mutation.
inline std::vector<MutationRecord> mutate_view(const CncModel& m, CncView& v, std::span<const MutationKind> kinds,
                                               Rng& rng) {
  detail::Mutator mut(m, v, rng);
  std::vector<MutationRecord> log;
  for (MutationKind k : kinds) log.push_back(mut.apply(k));
  return log;
}

/// Derives a view from `m` in two steps: first it keeps a random subset of
/// components (containment projected onto kept ancestors), of their ports
/// (fully specified) and of the chains between kept components (as abstract
/// connectors naming both end ports); the result is satisfied by `m`. Then
/// it applies the requested mutations.
inline DerivedView derive_view(const CncModel& m, const ViewDeriveParams& p) {
  const int total = static_cast<int>(m.components.size());
  if (p.keep_components < 0 || p.keep_components > total) {
    throw Error("cannot keep " + std::to_string(p.keep_components) + " of " + std::to_string(total) + " components");
  }
  if (p.max_keep_ports < 0 || p.max_keep_connectors < 0) throw Error("keep bounds must not be negative");

  Rng rng(p.seed);
  ModelIndex idx(m);
  const auto& h = idx.hierarchy;
  std::vector<std::size_t> order(m.components.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<char> kept(m.components.size(), 0);
  for (int i = 0; i < p.keep_components; ++i) kept[order[i]] = 1;

  DerivedView out;
  out.view.name = m.name + "View" + std::to_string(p.seed);

  std::vector<std::size_t> pool;
  for (std::size_t c = 0; c < kept.size(); ++c) {
    if (!kept[c]) continue;
    for (std::size_t pid = idx.graph.first_port(c); pid < idx.graph.end_port(c); ++pid) pool.push_back(pid);
  }
  rng.shuffle(pool);
  pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(p.max_keep_ports)));
  std::vector<char> port_kept(idx.graph.port_count(), 0);
  for (std::size_t pid : pool) port_kept[pid] = 1;

  for (std::size_t c = 0; c < kept.size(); ++c) {
    if (!kept[c]) continue;
    ViewComponent vc{m.components[c].name, "", {}};
    for (std::size_t a = h.parent(c); a != npos; a = h.parent(a)) {
      if (kept[a]) {
        vc.parent = m.components[a].name;
        break;
      }
    }
    for (std::size_t pid = idx.graph.first_port(c); pid < idx.graph.end_port(c); ++pid) {
      if (!port_kept[pid]) continue;
      const Port& port = idx.graph.port(pid);
      vc.ports.push_back({port.name, port.direction, port.type});
    }
    out.view.components.push_back(std::move(vc));
  }

  std::vector<AbstractConnector> chains;
  for (std::size_t c = 0; c < kept.size(); ++c) {
    if (!kept[c]) continue;
    for (std::size_t pid = idx.graph.first_port(c); pid < idx.graph.end_port(c); ++pid) {
      for (std::size_t r : idx.graph.search({pid}).reached) {
        std::size_t owner = idx.graph.owner(r);
        if (!kept[owner] || owner == c) continue;
        chains.push_back({m.components[c].name, idx.graph.port(pid).name, m.components[owner].name,
                          idx.graph.port(r).name});
      }
    }
  }
  std::vector<std::size_t> pick(chains.size());
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  rng.shuffle(pick);
  pick.resize(std::min<std::size_t>(pick.size(), static_cast<std::size_t>(p.max_keep_connectors)));
  std::sort(pick.begin(), pick.end());
  for (std::size_t i : pick) out.view.connectors.push_back(chains[i]);

  out.log = mutate_view(m, out.view, p.mutations, rng);
  return out;
}

}  // namespace ccview
