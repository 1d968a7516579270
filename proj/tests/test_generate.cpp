#include <gtest/gtest.h>

#include "support.hpp"

using namespace ccview;
using namespace testing_support;

TEST(Rng, ReproducibleSequence) {
  // mt19937_64 with the standard default seed yields this 10000th value
  std::mt19937_64 ref;
  ref.discard(9999);
  EXPECT_EQ(ref(), 9981545732273789042ULL);

  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.below(97), b.below(97));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    auto x = c.between(-3, 3);
    ASSERT_GE(x, -3);
    ASSERT_LE(x, 3);
  }
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_EQ(mix_seed(7, 3), mix_seed(7, 3));
}

TEST(GenModel, SingleComponent) {
  auto m = gen_model({1, 1, 1, 0, 0, 3});
  ASSERT_EQ(m.components.size(), 1u);
  EXPECT_EQ(m.port_count(), 0u);
  EXPECT_TRUE(m.connectors.empty());
  EXPECT_TRUE(validate_model(m).empty());
}

TEST(GenModel, InfeasibleParameters) {
  EXPECT_THROW(gen_model({0, 1, 1, 0, 0, 1}), Error);
  EXPECT_THROW(gen_model({3, 0, 1, 0, 0, 1}), Error);
  EXPECT_THROW(gen_model({3, 1, 0, 0, 0, 1}), Error);
  EXPECT_THROW(gen_model({3, 1, 1, -1, 0, 1}), Error);
  EXPECT_THROW(gen_model({3, 1, 1, 0, -1, 1}), Error);
}

TEST(GenModel, BenchmarkShapeAtSize200) {
  auto m = gen_model({200, 8, 8, 1600, 800, 2014});
  EXPECT_EQ(m.components.size(), 200u);
  EXPECT_EQ(m.port_count(), 1600u);
  EXPECT_LE(m.connectors.size(), 800u);
  EXPECT_GT(m.connectors.size(), 400u);
  EXPECT_TRUE(validate_model(m).empty());
  EXPECT_LE(m.types().size(), 8u);
}

TEST(GenModel, ValidAndBoundedOverRandomParameters) {
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    Rng rng(mix_seed(seed, 1000));
    ModelGenParams p{rng.between(1, 60), rng.between(1, 8), rng.between(1, 8), 0, 0, seed};
    p.max_ports = rng.between(0, 8 * p.num_components);
    p.max_connectors = rng.between(0, p.max_ports);
    auto m = gen_model(p);
    ASSERT_TRUE(validate_model(m).empty()) << seed;
    ASSERT_EQ(m.components.size(), static_cast<std::size_t>(p.num_components));
    ASSERT_LE(m.port_count(), static_cast<std::size_t>(p.max_ports));
    ASSERT_LE(m.connectors.size(), static_cast<std::size_t>(p.max_connectors));
    ASSERT_LE(m.types().size(), static_cast<std::size_t>(p.num_port_types));
    Hierarchy h(m);
    for (std::size_t c = 0; c < h.size(); ++c) {
      ASSERT_LE(h.children(c).size(), static_cast<std::size_t>(p.max_subs_per_component));
    }
  }
}

TEST(GenModel, Deterministic) {
  ModelGenParams p{40, 4, 5, 200, 100, 99};
  EXPECT_EQ(gen_model(p), gen_model(p));
  EXPECT_EQ(print_model(gen_model(p)), print_model(gen_model(p)));
  p.seed = 100;
  EXPECT_NE(gen_model(p), gen_model({40, 4, 5, 200, 100, 99}));
}

TEST(DeriveView, UnmutatedViewsAreSatisfied) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto pair = satisfied_pair(seed, 40);
    ASSERT_TRUE(validate_view(pair.view).empty()) << seed;
    auto r = verify(pair.model, pair.view);
    ASSERT_TRUE(r.satisfied) << seed << "\n" << print_model(pair.model) << print_view(pair.view);
  }
}

TEST(DeriveView, KeepsRequestedAmounts) {
  auto m = gen_model({50, 4, 3, 300, 150, 5});
  auto d = derive_view(m, {10, 7, 5, {}, 1});
  EXPECT_EQ(d.view.components.size(), 10u);
  EXPECT_LE(d.view.port_count(), 7u);
  EXPECT_LE(d.view.connectors.size(), 5u);
  EXPECT_TRUE(d.log.empty());
  EXPECT_THROW(derive_view(m, {51, 0, 0, {}, 1}), Error);
  EXPECT_THROW(derive_view(m, {-1, 0, 0, {}, 1}), Error);
  EXPECT_THROW(derive_view(m, {5, -1, 0, {}, 1}), Error);
  auto again = derive_view(m, {10, 7, 5, {MutationKind::RenamePort}, 1});
  auto once = derive_view(m, {10, 7, 5, {MutationKind::RenamePort}, 1});
  EXPECT_EQ(again.view, once.view);
}

TEST(Mutations, BenignPreserveSatisfaction) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto pair = satisfied_pair(seed, 20);
    Rng rng(mix_seed(seed, 77));
    std::vector<MutationKind> ks;
    int n = rng.between(1, 6);
    for (int i = 0; i < n; ++i) ks.push_back(kBenignMutations[rng.below(std::size(kBenignMutations))]);
    mutate_view(pair.model, pair.view, ks, rng);
    ASSERT_TRUE(verify(pair.model, pair.view).satisfied) << seed << "\n" << print_view(pair.view);
  }
}

TEST(Mutations, KeepViewsWellFormed) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto pair = satisfied_pair(seed, 20);
    Rng rng(mix_seed(seed, 78));
    std::vector<MutationKind> ks;
    int n = rng.between(1, 8);
    for (int i = 0; i < n; ++i) ks.push_back(kAllMutations[rng.below(std::size(kAllMutations))]);
    auto log = mutate_view(pair.model, pair.view, ks, rng);
    ASSERT_EQ(log.size(), ks.size());
    ASSERT_TRUE(validate_view(pair.view).empty()) << seed << "\n" << print_view(pair.view);
    auto back = parse_view(print_view(pair.view));
    ASSERT_TRUE(back.ok()) << print_view(pair.view);
  }
}

TEST(Mutations, RenameComponentGivesMissingComponent) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto pair = satisfied_pair(seed, 20);
    Rng rng(seed);
    std::vector<MutationKind> ks{MutationKind::RenameComponent};
    auto log = mutate_view(pair.model, pair.view, ks, rng);
    ASSERT_TRUE(log[0].applied);
    std::set<std::string> model_names;
    for (const auto& c : pair.model.components) model_names.insert(c.name);
    std::vector<std::string> fresh;
    for (const auto& c : pair.view.components) {
      if (!model_names.contains(c.name)) fresh.push_back(c.name);
    }
    ASSERT_EQ(fresh.size(), 1u);
    EXPECT_EQ(fresh[0].rfind("mut_", 0), 0u);
    auto r = verify(pair.model, pair.view);
    ASSERT_FALSE(r.satisfied);
    EXPECT_EQ(r.reasons.at(0), NonSatReason(MissingComponent{fresh[0]}));
  }
}

TEST(Mutations, Names) {
  for (MutationKind k : kAllMutations) EXPECT_EQ(parse_mutation(to_string(k)), k);
  EXPECT_FALSE(parse_mutation("explode"));
  EXPECT_TRUE(is_benign(MutationKind::ErasePortType));
  EXPECT_FALSE(is_benign(MutationKind::SwapComponentNames));
}

TEST(Bench, SmallRun) {
  BenchConfig cfg;
  cfg.sizes = {20};
  cfg.repeats = 1;
  auto report = run_bench(cfg);
  ASSERT_EQ(report.rows.size(), 2u);
  ASSERT_EQ(report.cells.size(), 2u);
  EXPECT_NE(report.cell(Setup::Variable, 20), nullptr);
  EXPECT_NE(report.cell(Setup::Fixed, 20), nullptr);
  auto csv = report.to_csv();
  EXPECT_EQ(csv.rfind("setup,size,repeat,verify_ms,max_witness_ms,n_reasons\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  auto j = nlohmann::json::parse(report.to_json());
  EXPECT_EQ(j["cells"].size(), 2u);

  BenchConfig empty;
  empty.sizes.clear();
  EXPECT_THROW(run_bench(empty), Error);
}

TEST(Bench, InstancesAreDeterministic) {
  auto a = bench_instance(Setup::Variable, 60, 3, 2014);
  auto b = bench_instance(Setup::Variable, 60, 3, 2014);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.view, b.view);
  EXPECT_EQ(a.view.components.size(), 12u);
  auto f = bench_instance(Setup::Fixed, 200, 0, 2014);
  EXPECT_EQ(f.model.components.size(), 200u);
  EXPECT_LE(f.view.components.size(), 12u);
}
