#include <gtest/gtest.h>

#include "migsched/workload.hpp"

using namespace migsched;

namespace {
const std::vector<int> kA100{1, 2, 3, 4, 7};
}

TEST(Workload, SizeCounts) {
  EXPECT_EQ(size_counts(10, {{1, 10}, {2, 10}, {3, 20}, {4, 30}, {7, 30}}, kA100),
            (std::map<int, int>{{1, 1}, {2, 1}, {3, 2}, {4, 3}, {7, 3}}));
  EXPECT_EQ(size_counts(15, {{1, 50}, {2, 50}, {3, 0}, {4, 0}, {7, 0}}, kA100),
            (std::map<int, int>{{1, 8}, {2, 7}, {3, 0}, {4, 0}, {7, 0}}));
  for (const auto& [s, c] : size_counts(0, {{1, 50}, {2, 50}}, kA100)) EXPECT_EQ(c, 0) << s;
}

TEST(Workload, SizeCountsSumToN) {
  const auto p = std::map<int, double>{{1, 100.0 / 3}, {2, 100.0 / 3}, {3, 100.0 / 3}};
  for (int n = 0; n < 40; ++n) {
    int total = 0;
    for (const auto& [s, c] : size_counts(n, p, kA100)) total += c;
    EXPECT_EQ(total, n);
  }
}

TEST(Workload, SyntheticDeterministicAndMonotone) {
  const auto m = builtin_model("A100");
  SyntheticConfig cfg;
  cfg.n = 50;
  cfg.p = {{1, 10}, {2, 10}, {3, 20}, {4, 30}, {7, 30}};
  cfg.seed = 42;
  const auto a = generate_synthetic(cfg, m);
  const auto b = generate_synthetic(cfg, m);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].times, b[i].times);
    EXPECT_GE(a[i].time(1), cfg.t_min);
    EXPECT_LE(a[i].time(1), cfg.t_max);
    for (std::size_t k = 1; k < m.sizes().size(); ++k)
      EXPECT_LE(a[i].time(m.sizes()[k]), a[i].time(m.sizes()[k - 1]));
  }
  cfg.seed = 43;
  const auto c = generate_synthetic(cfg, m);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].times != c[i].times;
  EXPECT_TRUE(differs);
}

TEST(Workload, SyntheticScalingClasses) {
  // Every step r lies in [-0.5, 1], so t(s+1)/t(s) is within [(s-0.5)/(s+1), 1].
  // Class-1 tasks are sub-linear from the first step: t(2) >= 0.75 t(1).
  const auto m = builtin_model("A100");
  SyntheticConfig cfg;
  cfg.n = 200;
  cfg.p = {{1, 100}};
  cfg.seed = 3;
  for (const auto& t : generate_synthetic(cfg, m)) {
    EXPECT_GE(t.time(2), 0.75 * t.time(1) - 1e-9);
  }
  // With p_sup = 100 every class-7 task starts super-linear: t(2) <= t(1) / 2.
  cfg.p = {{7, 100}};
  cfg.p_sup = 100;
  for (const auto& t : generate_synthetic(cfg, m)) EXPECT_LE(t.time(2), 0.5 * t.time(1) + 1e-9);
}

TEST(Workload, ProfileChecks) {
  const auto m = builtin_model("A100");
  const auto g = checked_task("gaussian", {{1, 20.0}, {2, 9.5}, {3, 6.4}, {4, 6.3}, {7, 6.2}}, m);
  EXPECT_DOUBLE_EQ(g.time(3), 6.4);

  auto expect_error = [&](const std::map<int, double>& times, const char* msg) {
    try {
      checked_task("x", times, m);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(std::string(e.what()).rfind(msg, 0), 0u) << e.what();
    }
  };
  expect_error({{1, 10}, {2, 11}, {3, 8}, {4, 7}, {7, 6}}, "non-monotone profile");
  expect_error({{1, 10}, {2, 9}, {3, 8}, {4, 7}}, "incomplete profile");
  expect_error({{1, 10}, {2, 0}, {3, 8}, {4, 7}, {7, 6}}, "invalid time");

  const auto c = checked_task("c", {{1, 10.0}, {2, 10.1}, {3, 8}, {4, 7}, {7, 6}}, m);
  EXPECT_DOUBLE_EQ(c.time(2), 10.0);
}

TEST(Workload, ProfileJsonRoundTrip) {
  const auto m = builtin_model("A30");
  std::vector<Task> tasks{make_task("a", {{1, 4}, {2, 2}, {4, 1}}), make_task("b", {{1, 9}, {2, 5}, {4, 3}})};
  const auto back = parse_profile(profile_to_json(tasks, m), m);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].id, "b");
  EXPECT_EQ(back[1].times, tasks[1].times);
}

TEST(Workload, ScalingShares) {
  const auto m = builtin_model("A100");
  EXPECT_EQ(scaling_shares("PoorScaling", m), (std::map<int, double>{{1, 50}, {2, 50}, {3, 0}, {4, 0}, {7, 0}}));
  EXPECT_EQ(scaling_shares("GoodScaling", m), (std::map<int, double>{{1, 0}, {2, 0}, {3, 0}, {4, 50}, {7, 50}}));
  EXPECT_DOUBLE_EQ(scaling_shares("MixedScaling", m).at(3), 20.0);
  EXPECT_THROW(scaling_shares("Bogus", m), Error);
}

TEST(Workload, DeriveSeed) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}
