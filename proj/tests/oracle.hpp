#pragma once

// Brute-force satisfaction check, written against the raw documents only:
// containment by Floyd-Warshall closure, connections by enumerating every
// chain of connectors, ports by scanning every model port.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ccview/model.hpp"

namespace oracle {

using namespace ccview;

struct Verdict {
  bool satisfied = true;
  // missing component, hierarchy, interface, connection
  std::array<int, 4> counts{};
};

template <class Arch>
std::vector<std::vector<char>> closure(const Arch& a, std::map<std::string, std::size_t>& index) {
  const std::size_t n = a.components.size();
  for (std::size_t i = 0; i < n; ++i) index[a.components[i].name] = i;
  std::vector<std::vector<char>> anc(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.components[i].parent.empty()) anc[index.at(a.components[i].parent)][i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (anc[i][k] && anc[k][j]) anc[i][j] = 1;
  return anc;
}

inline const Port* model_port(const CncModel& m, const std::string& cmp, const std::string& name) {
  for (const auto& c : m.components) {
    if (c.name != cmp) continue;
    for (const auto& p : c.ports) {
      if (p.name == name) return &p;
    }
  }
  return nullptr;
}

// Does model port `cmp.port` satisfy an abstract connector end?
inline bool end_ok(const CncModel& m, const CncView& v, const std::string& cmp, const std::string& port,
                   const std::optional<std::string>& want) {
  if (!want) return true;
  if (port != *want) return false;
  const Port* p = model_port(m, cmp, port);
  for (const auto& vc : v.components) {
    if (vc.name != cmp) continue;
    for (const auto& vp : vc.ports) {
      if (vp.name == want && vp.type && p && *vp.type != p->type) return false;
    }
  }
  return true;
}

inline bool extend(const CncModel& m, const CncView& v, const AbstractConnector& ac, std::size_t last,
                   std::vector<char>& used) {
  const Connector& c = m.connectors[last];
  if (c.tgt_component == ac.tgt_component && end_ok(m, v, c.tgt_component, c.tgt_port, ac.tgt_port)) return true;
  for (std::size_t d = 0; d < m.connectors.size(); ++d) {
    if (used[d]) continue;
    if (m.connectors[d].src_component != c.tgt_component || m.connectors[d].src_port != c.tgt_port) continue;
    used[d] = 1;
    bool ok = extend(m, v, ac, d, used);
    used[d] = 0;
    if (ok) return true;
  }
  return false;
}

inline bool has_chain(const CncModel& m, const CncView& v, const AbstractConnector& ac) {
  std::vector<char> used(m.connectors.size(), 0);
  for (std::size_t c = 0; c < m.connectors.size(); ++c) {
    const Connector& first = m.connectors[c];
    if (first.src_component != ac.src_component) continue;
    if (!end_ok(m, v, first.src_component, first.src_port, ac.src_port)) continue;
    used[c] = 1;
    bool ok = extend(m, v, ac, c, used);
    used[c] = 0;
    if (ok) return true;
  }
  return false;
}

inline Verdict check(const CncModel& m, const CncView& v) {
  Verdict out;
  std::map<std::string, std::size_t> mi, vi;
  auto ma = closure(m, mi);
  auto va = closure(v, vi);
  auto present = [&](const std::string& name) { return mi.count(name) != 0; };

  for (const auto& c : v.components) {
    if (!present(c.name)) ++out.counts[0];
  }

  for (std::size_t i = 0; i < v.components.size(); ++i) {
    for (std::size_t j = i + 1; j < v.components.size(); ++j) {
      const auto& a = v.components[i].name;
      const auto& b = v.components[j].name;
      if (!present(a) || !present(b)) continue;
      int view_rel = va[vi[a]][vi[b]] ? 1 : va[vi[b]][vi[a]] ? 2 : 0;
      int model_rel = ma[mi[a]][mi[b]] ? 1 : ma[mi[b]][mi[a]] ? 2 : 0;
      if (view_rel != model_rel) ++out.counts[1];
    }
  }

  for (const auto& vc : v.components) {
    if (!present(vc.name)) continue;
    const auto& mc = m.components[mi[vc.name]];
    for (const auto& vp : vc.ports) {
      bool found = false;
      for (const auto& p : mc.ports) {
        if (p.direction != vp.direction) continue;
        if (vp.name && *vp.name != p.name) continue;
        if (vp.type && *vp.type != p.type) continue;
        found = true;
      }
      if (!found) ++out.counts[2];
    }
  }

  for (const auto& ac : v.connectors) {
    if (!present(ac.src_component) || !present(ac.tgt_component)) continue;
    if (!has_chain(m, v, ac)) ++out.counts[3];
  }

  for (int k : out.counts) out.satisfied = out.satisfied && k == 0;
  return out;
}

}  // namespace oracle
