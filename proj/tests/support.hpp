#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ccview/ccview.hpp"

namespace testing_support {

using namespace ccview;

inline std::string data_path(const std::string& rel) { return std::string(CCVIEW_DATA_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T unwrap(Parsed<T> p, const std::string& what) {
  if (!p.ok()) {
    std::string msg = what + ":";
    for (const auto& d : p.diagnostics) msg += "\n" + format(d);
    throw std::runtime_error(msg);
  }
  return std::move(*p.value);
}

inline CncModel pump_station() {
  static const CncModel m =
      unwrap(parse_model(slurp(data_path("pumpstation/pumpstation.ccm")), "pumpstation.ccm"), "pumpstation");
  return m;
}

inline CncView pump_view(const std::string& file) {
  return unwrap(parse_view(slurp(data_path("pumpstation/" + file)), file), file);
}

struct Pair {
  CncModel model;
  CncView view;
};

// A random model of at most `max_components` components.
inline CncModel small_model(Rng& rng, int max_components, std::uint64_t seed) {
  int n = rng.between(1, max_components);
  int ports = rng.between(0, 4 * n);
  ModelGenParams p{n, rng.between(1, 4), rng.between(1, 3), ports, rng.between(0, ports), seed};
  return gen_model(p);
}

// A view drawn independently of the model's structure: random forest over
// model components plus some unknown names, ports with optional name and
// type, abstract connectors with optional port names.
inline CncView free_view(const CncModel& m, Rng& rng) {
  CncView v;
  v.name = "Free";
  std::vector<std::string> names;
  for (const auto& c : m.components) names.push_back(c.name);
  names.push_back("Ghost");
  rng.shuffle(names);
  names.resize(rng.between(1, static_cast<int>(std::min<std::size_t>(names.size(), 6))));
  auto type_set = m.types();
  std::vector<std::string> types(type_set.begin(), type_set.end());
  types.push_back("Other");
  for (std::size_t i = 0; i < names.size(); ++i) {
    ViewComponent vc{names[i], "", {}};
    if (i > 0 && rng.below(2)) vc.parent = names[rng.below(i)];
    const Component* mc = m.find(names[i]);
    int np = static_cast<int>(rng.below(3));
    for (int k = 0; k < np; ++k) {
      ViewPort vp{std::nullopt, rng.below(2) ? Direction::In : Direction::Out, std::nullopt};
      if (mc && !mc->ports.empty() && rng.below(4) != 0) {
        const Port& src = mc->ports[rng.below(mc->ports.size())];
        vp.direction = rng.below(5) ? src.direction : vp.direction;
        if (rng.below(3)) vp.name = src.name;
        if (rng.below(3)) vp.type = rng.below(4) ? src.type : types[rng.below(types.size())];
      } else if (rng.below(2)) {
        vp.name = "q" + std::to_string(k);
      }
      bool clash = false;
      for (const auto& other : vc.ports) clash |= vp.name && other.name == vp.name;
      if (!clash) vc.ports.push_back(vp);
    }
    v.components.push_back(std::move(vc));
  }
  int nc = static_cast<int>(rng.below(4));
  for (int k = 0; k < nc; ++k) {
    const auto& a = v.components[rng.below(v.components.size())];
    const auto& b = v.components[rng.below(v.components.size())];
    AbstractConnector ac{a.name, std::nullopt, b.name, std::nullopt};
    auto port_of = [&](const std::string& cmp) -> std::optional<std::string> {
      const Component* mc = m.find(cmp);
      if (!mc || mc->ports.empty() || rng.below(2)) return std::nullopt;
      return mc->ports[rng.below(mc->ports.size())].name;
    };
    ac.src_port = port_of(a.name);
    ac.tgt_port = port_of(b.name);
    v.connectors.push_back(ac);
  }
  return canonicalize(v);
}

// Random (model, view) pair with at most `max_components` model components.
// Views are either derived (then mutated) or drawn freely.
inline Pair random_pair(std::uint64_t seed, int max_components = 12, bool allow_free = true) {
  Rng rng(mix_seed(seed, 99));
  Pair out{small_model(rng, max_components, seed), {}};
  if (allow_free && rng.below(3) == 0) {
    out.view = free_view(out.model, rng);
    return out;
  }
  int n = static_cast<int>(out.model.components.size());
  int keep = rng.between(1, n);
  ViewDeriveParams vp{keep, rng.between(0, 2 * keep), rng.between(0, 2 * keep), {}, mix_seed(seed, 7)};
  int muts = static_cast<int>(rng.below(4));
  for (int i = 0; i < muts; ++i) vp.mutations.push_back(kAllMutations[rng.below(std::size(kAllMutations))]);
  out.view = derive_view(out.model, vp).view;
  return out;
}

// A derived view without mutations; satisfied by construction.
inline Pair satisfied_pair(std::uint64_t seed, int max_components = 12) {
  Rng rng(mix_seed(seed, 5));
  Pair out{small_model(rng, max_components, seed), {}};
  int n = static_cast<int>(out.model.components.size());
  int keep = rng.between(1, n);
  out.view = derive_view(out.model, {keep, 2 * keep, 2 * keep, {}, mix_seed(seed, 11)}).view;
  return out;
}

}  // namespace testing_support
