#pragma once

// The four classes of non-satisfaction and their explanation templates.

#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "ccview/model.hpp"

namespace ccview {

struct MissingComponent {
  std::string component;
  bool operator==(const MissingComponent&) const = default;
};

enum class HierarchyKind {
  ContainedInModelOnly,    // independent in the view, related in the model
  IndependentInModelOnly,  // related in the view, independent in the model
  ReverseContainment,
};

/// `component` and `subcomponent` are the ancestor and descendant as seen
/// by the side that relates them: the view for IndependentInModelOnly and
/// ReverseContainment, the model for ContainedInModelOnly.
struct HierarchyMismatch {
  HierarchyKind kind;
  std::string component;
  std::string subcomponent;
  bool operator==(const HierarchyMismatch&) const = default;
};

struct NoMatchingPort {
  bool operator==(const NoMatchingPort&) const = default;
};
struct TypeMismatch {
  std::string found;
  bool operator==(const TypeMismatch&) const = default;
};
struct DirectionMismatch {
  Direction found;
  bool operator==(const DirectionMismatch&) const = default;
};

struct InterfaceMismatch {
  std::string component;
  ViewPort view_port;
  std::variant<NoMatchingPort, TypeMismatch, DirectionMismatch> failure;
  bool operator==(const InterfaceMismatch&) const = default;
};

struct MissingConnection {
  AbstractConnector connector;
  bool operator==(const MissingConnection&) const = default;
};

using NonSatReason = std::variant<MissingComponent, HierarchyMismatch, InterfaceMismatch, MissingConnection>;

enum class ReasonKind { MissingComponent, HierarchyMismatch, InterfaceMismatch, MissingConnection };

inline ReasonKind kind_of(const NonSatReason& r) { return static_cast<ReasonKind>(r.index()); }

inline std::string_view to_string(ReasonKind k) {
  switch (k) {
    case ReasonKind::MissingComponent: return "missing_component";
    case ReasonKind::HierarchyMismatch: return "hierarchy_mismatch";
    case ReasonKind::InterfaceMismatch: return "interface_mismatch";
    case ReasonKind::MissingConnection: return "missing_connection";
  }
  return "?";
}

inline std::string_view heading(ReasonKind k) {
  switch (k) {
    case ReasonKind::MissingComponent: return "Missing Component";
    case ReasonKind::HierarchyMismatch: return "Hierarchy Mismatch";
    case ReasonKind::InterfaceMismatch: return "Interface Mismatch";
    case ReasonKind::MissingConnection: return "Missing Connection";
  }
  return "?";
}

/// `in Integer userPumpState`, with `*` for unknown parts.
inline std::string describe(const ViewPort& p) {
  return std::string(to_string(p.direction)) + " " + p.type.value_or("*") + " " + p.name.value_or("*");
}

inline std::string describe_endpoint(const std::string& component, const std::optional<std::string>& port) {
  return port ? component + "." + *port : component;
}

/// Natural-language explanation of one reason.
inline std::string render_text(const NonSatReason& reason, const std::string& model, const std::string& view) {
  return std::visit(
      [&](const auto& r) -> std::string {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, MissingComponent>) {
          return "Component " + r.component + " from view " + view + " does not exist in C&C model " + model + ".";
        } else if constexpr (std::is_same_v<R, HierarchyMismatch>) {
          switch (r.kind) {
            case HierarchyKind::ContainedInModelOnly:
              return "Components " + r.component + " and " + r.subcomponent + " are independent in view " + view +
                     " but not independent in C&C model " + model + ".";
            case HierarchyKind::IndependentInModelOnly:
              return "Components " + r.component + " and " + r.subcomponent + " are independent in C&C model " +
                     model + " but not independent in view " + view;
            case HierarchyKind::ReverseContainment:
              return "Component " + r.subcomponent + " contains " + r.component + " in C&C model " + model + " but " +
                     r.component + " contains " + r.subcomponent + " in view " + view + ".";
          }
          return {};
        } else if constexpr (std::is_same_v<R, InterfaceMismatch>) {
          std::string text = "Component " + r.component + " in C&C model " + model + " has no port matching port " +
                             describe(r.view_port) + " of view " + view;
          if (const auto* t = std::get_if<TypeMismatch>(&r.failure)) {
            text += "; its port " + *r.view_port.name + " has type " + t->found;
          } else if (const auto* d = std::get_if<DirectionMismatch>(&r.failure)) {
            text += "; its port " + *r.view_port.name + " has direction " + std::string(to_string(d->found));
          }
          return text + ".";
        } else {
          const auto& c = r.connector;
          return "There is no chain of connectors from " + describe_endpoint(c.src_component, c.src_port) + " to " +
                 describe_endpoint(c.tgt_component, c.tgt_port) + " in C&C model " + model + " as required by view " +
                 view + ".";
        }
      },
      reason);
}

}  // namespace ccview
