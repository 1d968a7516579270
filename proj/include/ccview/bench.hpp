#pragma once

// Scalability benchmark over generated models and mutated derived views.
//
// Two setups share the model shape (branching 8, 8 port types, 8 ports per
// component, connectors up to half the ports) and differ in view size:
//   variable: size/5 view components and a third as many mutations
//   fixed:    12 view components and 6 mutations
// Both keep up to twice as many ports and abstract connectors as view
// components.

#include <array>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccview/generate.hpp"
#include "ccview/verify.hpp"

namespace ccview {

enum class Setup { Variable, Fixed };

inline std::string_view to_string(Setup s) { return s == Setup::Variable ? "variable" : "fixed"; }

inline std::optional<Setup> parse_setup(std::string_view s) {
  if (s == "variable") return Setup::Variable;
  if (s == "fixed") return Setup::Fixed;
  return std::nullopt;
}

struct BenchConfig {
  std::vector<Setup> setups{Setup::Variable, Setup::Fixed};
  std::vector<int> sizes{20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
  int repeats = 12;
  std::uint64_t seed = 2014;
};

struct BenchRow {
  Setup setup;
  int size = 0;
  int repeat = 0;
  double verify_ms = 0;       // verdict, reasons and witnesses
  double max_witness_ms = 0;  // slowest single witness construction
  double sum_witness_ms = 0;
  std::size_t n_witnesses = 0;
  std::size_t n_reasons = 0;
  std::array<std::size_t, 4> reasons_by_kind{};
  bool satisfied = false;
};

struct BenchCell {
  Setup setup;
  int size = 0;
  int repeats = 0;
  double mean_verify_ms = 0;
  double max_verify_ms = 0;
  double mean_witness_ms = 0;
  double max_witness_ms = 0;
  std::size_t satisfied = 0;
  std::array<std::size_t, 4> reasons_by_kind{};
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
  std::vector<BenchCell> cells;

  const BenchCell* cell(Setup s, int size) const {
    for (const auto& c : cells) {
      if (c.setup == s && c.size == size) return &c;
    }
    return nullptr;
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "setup,size,repeat,verify_ms,max_witness_ms,n_reasons\n";
    for (const auto& r : rows) {
      os << to_string(r.setup) << "," << r.size << "," << r.repeat << "," << r.verify_ms << "," << r.max_witness_ms
         << "," << r.n_reasons << "\n";
    }
    return os.str();
  }

  std::string to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = config.seed;
    j["repeats"] = config.repeats;
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
      nlohmann::ordered_json e;
      e["setup"] = to_string(c.setup);
      e["size"] = c.size;
      e["repeats"] = c.repeats;
      e["mean_verify_ms"] = c.mean_verify_ms;
      e["max_verify_ms"] = c.max_verify_ms;
      e["mean_witness_ms"] = c.mean_witness_ms;
      e["max_witness_ms"] = c.max_witness_ms;
      e["satisfied"] = c.satisfied;
      nlohmann::ordered_json reasons;
      for (std::size_t k = 0; k < 4; ++k) reasons[std::string(to_string(static_cast<ReasonKind>(k)))] = c.reasons_by_kind[k];
      e["reasons"] = std::move(reasons);
      j["cells"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
  }
};

struct BenchInstance {
  CncModel model;
  CncView view;
};

/// The model and view measured for one (setup, size, repeat) cell.
inline BenchInstance bench_instance(Setup setup, int size, int repeat, std::uint64_t seed) {
  std::uint64_t s = mix_seed(seed, (static_cast<std::uint64_t>(setup) << 40) ^ (static_cast<std::uint64_t>(size) << 16) ^
                                       static_cast<std::uint64_t>(repeat));
  ModelGenParams mp{size, 8, 8, 8 * size, 4 * size, s};
  BenchInstance inst{gen_model(mp), {}};
  const int keep = std::min(size, setup == Setup::Variable ? size / 5 : 12);
  const int mutations = setup == Setup::Variable ? keep / 3 : 6;
  Rng rng(mix_seed(s, 1));
  ViewDeriveParams vp{keep, 2 * keep, 2 * keep, {}, mix_seed(s, 2)};
  for (int i = 0; i < mutations; ++i) vp.mutations.push_back(kAllMutations[rng.below(std::size(kAllMutations))]);
  inst.view = derive_view(inst.model, vp).view;
  return inst;
}

/// Runs every (setup, size, repeat) cell sequentially.
inline BenchReport run_bench(const BenchConfig& cfg) {
  if (cfg.sizes.empty()) throw Error("no model sizes given");
  if (cfg.repeats <= 0) throw Error("repeats must be positive");
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };

  BenchReport report;
  report.config = cfg;
  for (Setup setup : cfg.setups) {
    for (int size : cfg.sizes) {
      BenchCell cell{setup, size, cfg.repeats};
      double sum_verify = 0;
      double sum_witness = 0;
      std::size_t n_witness = 0;
      for (int rep = 0; rep < cfg.repeats; ++rep) {
        auto inst = bench_instance(setup, size, rep, cfg.seed);
        BenchRow row{setup, size, rep};

        auto t0 = clock::now();
        VerificationResult result = verify(inst.model, inst.view);
        row.verify_ms = ms(clock::now() - t0);

        ModelIndex idx(inst.model);
        auto time_one = [&](auto&& build) {
          auto w0 = clock::now();
          Witness w = build();
          double t = ms(clock::now() - w0);
          row.max_witness_ms = std::max(row.max_witness_ms, t);
          row.sum_witness_ms += t;
          ++row.n_witnesses;
        };
        if (result.satisfied) {
          time_one([&] { return detail::satisfaction_witness(idx, inst.view); });
        } else {
          for (const auto& r : result.reasons) time_one([&] { return build_witness(idx, inst.view, r); });
        }
        row.satisfied = result.satisfied;
        row.n_reasons = result.reasons.size();
        for (const auto& r : result.reasons) ++row.reasons_by_kind[static_cast<std::size_t>(kind_of(r))];

        sum_verify += row.verify_ms;
        sum_witness += row.sum_witness_ms;
        n_witness += row.n_witnesses;
        cell.max_verify_ms = std::max(cell.max_verify_ms, row.verify_ms);
        cell.max_witness_ms = std::max(cell.max_witness_ms, row.max_witness_ms);
        cell.satisfied += row.satisfied ? 1 : 0;
        for (std::size_t k = 0; k < 4; ++k) cell.reasons_by_kind[k] += row.reasons_by_kind[k];
        report.rows.push_back(row);
      }
      cell.mean_verify_ms = sum_verify / cfg.repeats;
      cell.mean_witness_ms = n_witness ? sum_witness / static_cast<double>(n_witness) : 0.0;
      report.cells.push_back(cell);
    }
  }
  return report;
}

}  // namespace ccview
