#pragma once

// The four independent checks for reasons of non-satisfaction. Every check
// after the missing-component check ignores view components that do not
// occur in the model.

#include <vector>

#include "ccview/match.hpp"
#include "ccview/reason.hpp"

namespace ccview {

inline std::vector<NonSatReason> check_missing_components(const ModelIndex& idx, const CncView& v) {
  std::vector<NonSatReason> out;
  for (const auto& c : v.components) {
    if (idx.hierarchy.index_of(c.name) == npos) out.emplace_back(MissingComponent{c.name});
  }
  return out;
}

/// Compares, for every pair of view components present in the model,
/// whether and how they are related by transitive containment.
inline std::vector<NonSatReason> check_hierarchy(const ModelIndex& idx, const CncView& v) {
  std::vector<NonSatReason> out;
  Hierarchy<CncView> hv(v);
  const auto& hm = idx.hierarchy;
  const std::size_t n = v.components.size();
  std::vector<std::size_t> in_model(n);
  for (std::size_t i = 0; i < n; ++i) in_model[i] = hm.index_of(v.components[i].name);

  for (std::size_t i = 0; i < n; ++i) {
    if (in_model[i] == npos) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (in_model[j] == npos) continue;
      const std::string& a = v.components[i].name;
      const std::string& b = v.components[j].name;
      const bool view_ab = hv.is_ancestor(i, j);
      const bool view_ba = hv.is_ancestor(j, i);
      const bool model_ab = hm.is_ancestor(in_model[i], in_model[j]);
      const bool model_ba = hm.is_ancestor(in_model[j], in_model[i]);
      if (view_ab || view_ba) {
        const std::string& up = view_ab ? a : b;
        const std::string& down = view_ab ? b : a;
        if ((view_ab && model_ab) || (view_ba && model_ba)) continue;
        if (model_ab || model_ba) {
          out.emplace_back(HierarchyMismatch{HierarchyKind::ReverseContainment, up, down});
        } else {
          out.emplace_back(HierarchyMismatch{HierarchyKind::IndependentInModelOnly, up, down});
        }
      } else if (model_ab || model_ba) {
        out.emplace_back(HierarchyMismatch{HierarchyKind::ContainedInModelOnly, model_ab ? a : b, model_ab ? b : a});
      }
    }
  }
  return out;
}

inline std::vector<NonSatReason> check_interfaces(const ModelIndex& idx, const CncView& v) {
  std::vector<NonSatReason> out;
  for (const auto& vc : v.components) {
    const Component* mc = idx.model.find(vc.name);
    if (!mc) continue;
    for (const auto& vp : vc.ports) {
      bool matched = false;
      const Port* same_name = nullptr;
      for (const auto& p : mc->ports) {
        if (port_matches(vp, p)) {
          matched = true;
          break;
        }
        if (vp.name && p.name == *vp.name) same_name = &p;
      }
      if (matched) continue;
      InterfaceMismatch m{vc.name, vp, NoMatchingPort{}};
      if (same_name) {
        if (same_name->direction != vp.direction) {
          m.failure = DirectionMismatch{same_name->direction};
        } else {
          m.failure = TypeMismatch{same_name->type};
        }
      }
      out.emplace_back(std::move(m));
    }
  }
  return out;
}

inline std::vector<NonSatReason> check_connections(const ModelIndex& idx, const CncView& v) {
  std::vector<NonSatReason> out;
  for (const auto& ac : v.connectors) {
    if (idx.hierarchy.index_of(ac.src_component) == npos || idx.hierarchy.index_of(ac.tgt_component) == npos) continue;
    if (!find_chain(idx, v, ac)) out.emplace_back(MissingConnection{ac});
  }
  return out;
}

/// All reasons, in check order: missing components, hierarchy, interfaces,
/// connections.
inline std::vector<NonSatReason> find_reasons(const ModelIndex& idx, const CncView& v) {
  auto out = check_missing_components(idx, v);
  auto append = [&out](std::vector<NonSatReason> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  append(check_hierarchy(idx, v));
  append(check_interfaces(idx, v));
  append(check_connections(idx, v));
  return out;
}

inline std::vector<NonSatReason> check_missing_components(const CncModel& m, const CncView& v) {
  return check_missing_components(ModelIndex(m), v);
}
inline std::vector<NonSatReason> check_hierarchy(const CncModel& m, const CncView& v) {
  return check_hierarchy(ModelIndex(m), v);
}
inline std::vector<NonSatReason> check_interfaces(const CncModel& m, const CncView& v) {
  return check_interfaces(ModelIndex(m), v);
}
inline std::vector<NonSatReason> check_connections(const CncModel& m, const CncView& v) {
  return check_connections(ModelIndex(m), v);
}

}  // namespace ccview
