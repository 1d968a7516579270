#pragma once

// Satisfaction of a view by a model, and batch checking of specifications
// made of several views.

#include <map>
#include <string>
#include <vector>

#include "ccview/witness.hpp"

namespace ccview {

struct VerificationResult {
  std::string model_name;
  std::string view_name;
  bool satisfied = false;
  std::vector<NonSatReason> reasons;
  std::vector<Witness> witnesses;  // one per reason, or a single satisfaction witness
};

/// Runs the four checks in order and builds the witnesses. The model is
/// satisfied iff no check reports a reason.
inline VerificationResult verify(const ModelIndex& idx, const CncView& v) {
  VerificationResult r{idx.model.name, v.name, false, find_reasons(idx, v), {}};
  r.satisfied = r.reasons.empty();
  if (r.satisfied) {
    r.witnesses.push_back(detail::satisfaction_witness(idx, v));
  } else {
    r.witnesses.reserve(r.reasons.size());
    for (const auto& reason : r.reasons) r.witnesses.push_back(build_witness(idx, v, reason));
  }
  return r;
}

inline VerificationResult verify(const CncModel& m, const CncView& v) { return verify(ModelIndex(m), v); }

// ---------------------------------------------------------------------------
// Specifications

enum class Mode { Mandatory, Negative, Alternative };

struct SpecEntry {
  CncView view;
  Mode mode = Mode::Mandatory;
  std::string group;  // alternative group id, non-empty iff mode == Alternative
};

struct Specification {
  std::vector<SpecEntry> entries;
};

struct EntryResult {
  std::size_t entry = 0;
  VerificationResult result;
  bool pass = false;  // for alternatives: whether the entry's group passes
};

struct SpecificationResult {
  std::vector<EntryResult> entries;
  std::map<std::string, bool> groups;
  bool pass = true;
};

/// Mandatory entries pass iff satisfied, negative entries iff not satisfied,
/// and an alternative group iff at least one of its views is satisfied.
/// Each distinct view is verified once.
inline SpecificationResult verify_specification(const CncModel& m, const Specification& spec) {
  ModelIndex idx(m);
  SpecificationResult out;
  std::vector<std::size_t> first_of(spec.entries.size());
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const auto& e = spec.entries[i];
    if (e.mode == Mode::Alternative && e.group.empty()) throw Error("alternative entry without a group id");
    first_of[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.entries[j].view == e.view) {
        first_of[i] = j;
        break;
      }
    }
    VerificationResult r = first_of[i] == i ? verify(idx, e.view) : out.entries[first_of[i]].result;
    out.entries.push_back({i, std::move(r), false});
  }
  for (auto& er : out.entries) {
    const auto& e = spec.entries[er.entry];
    if (e.mode == Mode::Alternative) {
      auto [it, fresh] = out.groups.emplace(e.group, er.result.satisfied);
      if (!fresh) it->second = it->second || er.result.satisfied;
    }
  }
  for (auto& er : out.entries) {
    const auto& e = spec.entries[er.entry];
    switch (e.mode) {
      case Mode::Mandatory: er.pass = er.result.satisfied; break;
      case Mode::Negative: er.pass = !er.result.satisfied; break;
      case Mode::Alternative: er.pass = out.groups.at(e.group); break;
    }
    out.pass = out.pass && er.pass;
  }
  return out;
}

}  // namespace ccview
