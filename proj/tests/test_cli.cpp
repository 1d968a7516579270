#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;
using namespace testing_support;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " '" CCVIEW_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ccview_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::size_t count_files(const fs::path& d) const {
    std::size_t n = 0;
    if (!fs::exists(d)) return 0;
    for (const auto& e : fs::directory_iterator(d)) n += e.path().extension() == ".ccw" ? 1 : 0;
    return n;
  }

  fs::path dir_;
  const fs::path model_ = data_path("pumpstation/pumpstation.ccm");
};

}  // namespace

TEST_F(Cli, VerifySatisfied) {
  auto r = run("verify " + q(model_) + " " + q(data_path("pumpstation/userbutton.ccv")) + " --out " + q(dir_));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_files(dir_), 1u);
  EXPECT_TRUE(fs::exists(dir_ / "UserButton_satisfaction_1.ccw"));
  EXPECT_NE(r.out.find("PumpStation satisfies UserButton"), std::string::npos);
}

TEST_F(Cli, VerifyNotSatisfiedGroupsWitnesses) {
  auto r = run("verify " + q(model_) + " " + q(data_path("pumpstation/systememergency.ccv")) + " --out " + q(dir_));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(count_files(dir_), 4u);
  auto a = r.out.find("Missing Component");
  auto b = r.out.find("Interface Mismatch");
  auto c = r.out.find("Missing Connection");
  ASSERT_NE(a, std::string::npos);
  ASSERT_NE(b, std::string::npos);
  ASSERT_NE(c, std::string::npos);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(r.out.find("Hierarchy Mismatch"), std::string::npos);
  for (const char* f : {"SystemEmergencyController_missing_component_1.ccw",
                        "SystemEmergencyController_interface_mismatch_2.ccw",
                        "SystemEmergencyController_interface_mismatch_3.ccw",
                        "SystemEmergencyController_missing_connection_4.ccw"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
}

TEST_F(Cli, TextAndJsonAgree) {
  for (const char* v : {"userbutton.ccv", "pcpumpingsystem.ccv", "systememergency.ccv"}) {
    auto text = run("verify " + q(model_) + " " + q(data_path(std::string("pumpstation/") + v)) + " --out " +
                    q(dir_ / v / "t"));
    auto json = run("verify " + q(model_) + " " + q(data_path(std::string("pumpstation/") + v)) +
                    " --format json --out " + q(dir_ / v / "j"));
    EXPECT_EQ(text.code, json.code);
    auto j = nlohmann::json::parse(json.out);
    EXPECT_EQ(j["satisfied"].get<bool>(), text.code == 0);
    EXPECT_EQ(j["witnesses"].size(), count_files(dir_ / v / "t"));
    EXPECT_EQ(count_files(dir_ / v / "t"), count_files(dir_ / v / "j"));
  }
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  auto r = run("verify " + q(model_) + " " + q(data_path("pumpstation/pcpumpingsystem.ccv")), "CCVIEW_OUT=" + q(dir_));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(count_files(dir_), 2u);
}

TEST_F(Cli, InputErrors) {
  auto broken = dir_ / "broken.ccm";
  std::ofstream(broken) << "model M { component A { port in T x } }";
  EXPECT_EQ(run("verify " + q(broken) + " " + q(data_path("pumpstation/userbutton.ccv"))).code, 2);
  EXPECT_EQ(run("verify " + q(dir_ / "absent.ccm") + " " + q(data_path("pumpstation/userbutton.ccv"))).code, 2);
  auto illformed = dir_ / "twotop.ccm";
  std::ofstream(illformed) << "model M { component A; component B; }";
  EXPECT_EQ(run("verify " + q(illformed) + " " + q(data_path("pumpstation/userbutton.ccv"))).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify " + q(model_)).code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, Batch) {
  EXPECT_EQ(run("batch " + q(model_) + " " + q(data_path("pumpstation/documented.spec"))).code, 0);
  EXPECT_EQ(run("batch " + q(model_) + " " + q(data_path("pumpstation/alternatives.spec"))).code, 0);
  auto bad = run("batch " + q(model_) + " " + q(data_path("pumpstation/undesired.spec")));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("overall: fail"), std::string::npos);

  auto spec = dir_ / "missing.spec";
  std::ofstream(spec) << "mandatory nowhere.ccv\n";
  EXPECT_EQ(run("batch " + q(model_) + " " + q(spec)).code, 2);

  auto j = run("batch " + q(model_) + " " + q(data_path("pumpstation/documented.spec")) + " --format json");
  EXPECT_EQ(nlohmann::json::parse(j.out)["pass"], true);
}

TEST_F(Cli, GenerateIsDeterministicAndVerifiable) {
  auto a = run("gen-model --components 20 --seed 7");
  auto b = run("gen-model --components 20 --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(ccview::parse_model(a.out).ok());

  auto model = dir_ / "m.ccm";
  auto view = dir_ / "v.ccv";
  EXPECT_EQ(run("gen-model --components 200 --max-subs 8 --port-types 8 --max-ports 1600 --max-connectors 800 "
                "--seed 3 -o " + q(model)).code,
            0);
  auto parsed = ccview::parse_model(slurp(model.string()));
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(parsed.value->components.size(), 200u);

  EXPECT_EQ(run("derive-view " + q(model) + " --keep-components 30 --seed 4 -o " + q(view)).code, 0);
  EXPECT_EQ(run("verify " + q(model) + " " + q(view) + " --no-witness-files").code, 0);

  EXPECT_EQ(run("derive-view " + q(model) + " --keep-components 30 --seed 4 --mutations rename-component -o " +
                q(view)).code,
            0);
  EXPECT_EQ(run("verify " + q(model) + " " + q(view) + " --no-witness-files").code, 1);

  EXPECT_EQ(run("gen-model --components 0").code, 2);
  EXPECT_EQ(run("derive-view " + q(model) + " --keep-components 999").code, 2);
  EXPECT_EQ(run("derive-view " + q(model) + " --mutations explode").code, 2);
}

TEST_F(Cli, BenchSmall) {
  auto r = run("bench --sizes 20 --repeats 1 --out " + q(dir_));
  EXPECT_EQ(r.code, 0);
  auto csv = slurp((dir_ / "bench.csv").string());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("max_witness_ms"), std::string::npos);
  auto j = nlohmann::json::parse(slurp((dir_ / "bench.json").string()));
  EXPECT_EQ(j["cells"].size(), 2u);
  EXPECT_EQ(run("bench --sizes 20 --repeats 0 --out " + q(dir_)).code, 2);
  EXPECT_EQ(run("bench --setups sideways --out " + q(dir_)).code, 2);
}
