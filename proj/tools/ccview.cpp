// ccview: verify component-and-connector models against views.
//
// Exit codes: 0 satisfied / pass / done, 1 not satisfied / fail, 2 bad input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ccview/ccview.hpp"

namespace fs = std::filesystem;
using namespace ccview;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

template <class T>
T require(Parsed<T> parsed) {
  if (!parsed.ok()) {
    std::ostringstream os;
    for (const auto& d : parsed.diagnostics) os << format(d) << "\n";
    throw InputError(os.str());
  }
  return std::move(*parsed.value);
}

CncModel load_model(const fs::path& p) { return require(parse_model(read_file(p), p.string())); }
CncView load_view(const fs::path& p) { return require(parse_view(read_file(p), p.string())); }

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CCVIEW_OUT"); env && *env) return env;
  return ".";
}

void emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
  } else {
    write_file(out_file, text);
  }
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string model;
  std::string view;
  std::string format = "text";
  std::string out;
  bool no_files = false;
};

int cmd_verify(const VerifyArgs& a) {
  CncModel m = load_model(a.model);
  CncView v = load_view(a.view);
  VerificationResult r = verify(m, v);

  std::vector<fs::path> files;
  if (!a.no_files) {
    fs::path dir = output_dir(a.out);
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      const auto& w = r.witnesses[i];
      fs::path f = dir / (v.name + "_" + std::string(to_string(w.kind)) + "_" + std::to_string(i + 1) + ".ccw");
      write_file(f, print_witness(w));
      files.push_back(f);
    }
  }

  if (a.format == "json") {
    std::cout << export_json(r);
  } else if (r.satisfied) {
    std::cout << m.name << " satisfies " << v.name << "\n";
    std::cout << "  " << r.witnesses.front().explanation();
    if (!files.empty()) std::cout << "  [" << files.front().string() << "]";
    std::cout << "\n";
  } else {
    std::cout << m.name << " does not satisfy " << v.name << " (" << r.reasons.size() << " witnesses)\n";
    std::cout << "Witnesses for Non-Satisfaction\n";
    for (auto kind : {ReasonKind::MissingComponent, ReasonKind::HierarchyMismatch, ReasonKind::InterfaceMismatch,
                      ReasonKind::MissingConnection}) {
      bool header = false;
      for (std::size_t i = 0; i < r.reasons.size(); ++i) {
        if (kind_of(r.reasons[i]) != kind) continue;
        if (!header) {
          std::cout << "  " << heading(kind) << "\n";
          header = true;
        }
        std::cout << "    " << r.witnesses[i].explanation();
        if (!files.empty()) std::cout << "  [" << files[i].string() << "]";
        std::cout << "\n";
      }
    }
  }
  return r.satisfied ? kOk : kFailed;
}

// --- batch -----------------------------------------------------------------

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Mandatory: return "mandatory";
    case Mode::Negative: return "negative";
    case Mode::Alternative: return "alt";
  }
  return "?";
}

int cmd_batch(const std::string& model_path, const std::string& spec_path, const std::string& format) {
  CncModel m = load_model(model_path);
  auto lines = require(parse_spec_lines(read_file(spec_path), spec_path));
  Specification spec;
  fs::path base = fs::path(spec_path).parent_path();
  for (const auto& l : lines) spec.entries.push_back({load_view(base / l.path), l.mode, l.group});
  SpecificationResult res = verify_specification(m, spec);

  if (format == "json") {
    nlohmann::ordered_json j;
    j["model"] = m.name;
    j["pass"] = res.pass;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : res.entries) {
      const auto& se = spec.entries[e.entry];
      nlohmann::ordered_json o;
      o["view"] = se.view.name;
      o["mode"] = se.mode == Mode::Alternative ? "alt:" + se.group : std::string(mode_name(se.mode));
      o["satisfied"] = e.result.satisfied;
      o["pass"] = e.pass;
      o["witnesses"] = e.result.witnesses.size();
      j["entries"].push_back(std::move(o));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(4) << "#" << std::setw(18) << "mode" << std::setw(28) << "view"
              << std::setw(16) << "verdict" << "pass\n";
    for (const auto& e : res.entries) {
      const auto& se = spec.entries[e.entry];
      std::string mode = se.mode == Mode::Alternative ? "alt:" + se.group : std::string(mode_name(se.mode));
      std::cout << std::setw(4) << e.entry + 1 << std::setw(18) << mode << std::setw(28) << se.view.name
                << std::setw(16) << (e.result.satisfied ? "satisfied" : "not satisfied") << (e.pass ? "yes" : "no")
                << "\n";
    }
    std::cout << "overall: " << (res.pass ? "pass" : "fail") << "\n";
  }
  return res.pass ? kOk : kFailed;
}

// --- gen-model / derive-view -----------------------------------------------

struct GenArgs {
  int components = 20;
  int max_subs = 8;
  int port_types = 8;
  int max_ports = -1;       // default: 8 per component
  int max_connectors = -1;  // default: half the ports
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen_model(const GenArgs& a) {
  ModelGenParams p{a.components, a.max_subs, a.port_types, a.max_ports, a.max_connectors, a.seed};
  if (p.max_ports < 0) p.max_ports = 8 * a.components;
  if (p.max_connectors < 0) p.max_connectors = p.max_ports / 2;
  CncModel m;
  try {
    m = gen_model(p);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  emit(print_model(m), a.output);
  return kOk;
}

struct DeriveArgs {
  std::string model;
  int keep_components = -1;  // default: a fifth of the model, at least one
  int max_keep_ports = -1;   // default: twice the kept components
  int max_keep_connectors = -1;
  std::vector<std::string> mutations;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_derive_view(const DeriveArgs& a) {
  CncModel m = load_model(a.model);
  ViewDeriveParams p{a.keep_components, a.max_keep_ports, a.max_keep_connectors, {}, a.seed};
  if (p.keep_components < 0) p.keep_components = std::max<int>(1, static_cast<int>(m.components.size()) / 5);
  if (p.max_keep_ports < 0) p.max_keep_ports = 2 * p.keep_components;
  if (p.max_keep_connectors < 0) p.max_keep_connectors = 2 * p.keep_components;
  for (const auto& name : a.mutations) {
    auto k = parse_mutation(name);
    if (!k) throw InputError("unknown mutation '" + name + "'");
    p.mutations.push_back(*k);
  }
  DerivedView d;
  try {
    d = derive_view(m, p);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  for (const auto& rec : d.log) {
    std::cerr << "mutation " << to_string(rec.kind) << ": " << (rec.applied ? "" : "skipped, ") << rec.description
              << "\n";
  }
  emit(print_view(d.view), a.output);
  return kOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<int> sizes{20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
  int repeats = 12;
  std::vector<std::string> setups{"variable", "fixed"};
  std::uint64_t seed = 2014;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.sizes = a.sizes;
  cfg.repeats = a.repeats;
  cfg.seed = a.seed;
  cfg.setups.clear();
  for (const auto& s : a.setups) {
    auto setup = parse_setup(s);
    if (!setup) throw InputError("unknown setup '" + s + "' (expected variable or fixed)");
    cfg.setups.push_back(*setup);
  }
  for (int s : cfg.sizes) {
    if (s <= 0) throw InputError("model sizes must be positive");
  }
  if (cfg.repeats <= 0) throw InputError("repeats must be positive");
  BenchReport report = run_bench(cfg);
  fs::path dir = output_dir(a.out);
  write_file(dir / "bench.csv", report.to_csv());
  write_file(dir / "bench.json", report.to_json());

  std::cout << std::left << std::setw(10) << "setup" << std::setw(6) << "size" << std::right << std::setw(14)
            << "mean verify" << std::setw(14) << "max verify" << std::setw(14) << "mean witness" << std::setw(14)
            << "max witness" << "  (ms)\n";
  std::cout << std::fixed << std::setprecision(3);
  for (const auto& c : report.cells) {
    std::cout << std::left << std::setw(10) << to_string(c.setup) << std::setw(6) << c.size << std::right
              << std::setw(14) << c.mean_verify_ms << std::setw(14) << c.max_verify_ms << std::setw(14)
              << c.mean_witness_ms << std::setw(14) << c.max_witness_ms << "\n";
  }
  std::cout << "wrote " << (dir / "bench.csv").string() << " and " << (dir / "bench.json").string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify component-and-connector models against views"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check whether a model satisfies a view and write witnesses");
  verify_cmd->add_option("model", va.model, "Model file (.ccm)")->required();
  verify_cmd->add_option("view", va.view, "View file (.ccv)")->required();
  verify_cmd->add_option("--format", va.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("-o,--out", va.out, "Witness output directory (default: $CCVIEW_OUT or .)");
  verify_cmd->add_flag("--no-witness-files", va.no_files, "Do not write .ccw files");

  std::string batch_model, batch_spec, batch_format = "text";
  auto* batch_cmd = app.add_subcommand("batch", "Check a model against a specification of several views");
  batch_cmd->add_option("model", batch_model, "Model file (.ccm)")->required();
  batch_cmd->add_option("spec", batch_spec, "Specification: lines of '<mandatory|negative|alt:GROUP> <view>'")
      ->required();
  batch_cmd->add_option("--format", batch_format, "Report format")->check(CLI::IsMember({"text", "json"}));

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen-model", "Generate a random model");
  gen_cmd->add_option("--components", ga.components, "Number of components");
  gen_cmd->add_option("--max-subs", ga.max_subs, "Maximal subcomponents per component");
  gen_cmd->add_option("--port-types", ga.port_types, "Number of port types");
  gen_cmd->add_option("--max-ports", ga.max_ports, "Number of ports (default 8 per component)");
  gen_cmd->add_option("--max-connectors", ga.max_connectors, "Maximal connectors (default half the ports)");
  gen_cmd->add_option("--seed", ga.seed, "Random seed");
  gen_cmd->add_option("-o,--output", ga.output, "Output file (default: stdout)");

  DeriveArgs da;
  auto* derive_cmd = app.add_subcommand("derive-view", "Derive a random, optionally mutated, view from a model");
  derive_cmd->add_option("model", da.model, "Model file (.ccm)")->required();
  derive_cmd->add_option("--keep-components", da.keep_components, "Components to keep");
  derive_cmd->add_option("--max-keep-ports", da.max_keep_ports, "Maximal ports to keep");
  derive_cmd->add_option("--max-keep-connectors", da.max_keep_connectors, "Maximal abstract connectors to keep");
  derive_cmd->add_option("--mutations", da.mutations, "Mutations to apply, in order")->delimiter(',');
  derive_cmd->add_option("--seed", da.seed, "Random seed");
  derive_cmd->add_option("-o,--output", da.output, "Output file (default: stdout)");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run the scalability benchmark");
  bench_cmd->add_option("--sizes", ba.sizes, "Model sizes")->delimiter(',');
  bench_cmd->add_option("--repeats", ba.repeats, "Repeats per size");
  bench_cmd->add_option("--setups", ba.setups, "Setups: variable, fixed")->delimiter(',');
  bench_cmd->add_option("--seed", ba.seed, "Base random seed");
  bench_cmd->add_option("-o,--out", ba.out, "Report directory (default: $CCVIEW_OUT or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*verify_cmd) return cmd_verify(va);
    if (*batch_cmd) return cmd_batch(batch_model, batch_spec, batch_format);
    if (*gen_cmd) return cmd_gen_model(ga);
    if (*derive_cmd) return cmd_derive_view(da);
    if (*bench_cmd) return cmd_bench(ba);
  } catch (const InputError& e) {
    std::cerr << e.what();
    if (std::string_view(e.what()).ends_with('\n') == false) std::cerr << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
