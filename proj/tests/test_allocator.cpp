#include <gtest/gtest.h>

#include <random>

#include "migsched/allocator.hpp"

using namespace migsched;

namespace {
std::vector<Allocation> family_of(const Task& t, const GpuModel& m) { return allocation_family({t}, m).allocations; }
}  // namespace

TEST(Allocator, SingleTaskFamilies) {
  const auto m = builtin_model("A30");
  EXPECT_EQ(family_of(make_task("a", {{1, 4}, {2, 2}, {4, 1}}), m), (std::vector<Allocation>{{1}, {2}, {4}}));
  EXPECT_EQ(family_of(make_task("b", {{1, 10}, {2, 4}, {4, 3}}), m), (std::vector<Allocation>{{2}, {4}}));
  EXPECT_EQ(family_of(make_task("c", {{1, 1}, {2, 1}, {4, 1}}), m), (std::vector<Allocation>{{1}, {2}, {4}}));
  EXPECT_EQ(family_of(make_task("d", {{1, 9}, {2, 9}, {4, 2}}), m), (std::vector<Allocation>{{4}}));
}

TEST(Allocator, EmptyInput) { EXPECT_TRUE(allocation_family({}, builtin_model("A100")).allocations.empty()); }

TEST(Allocator, MinWorkSize) {
  const auto m = builtin_model("A100");
  const auto t = make_task("t", {{1, 10}, {2, 4}, {3, 3}, {4, 2}, {7, 2}});
  // Works 10, 8, 9, 8, 14: tie between 2 and 4 goes to 2.
  EXPECT_EQ(min_work_size(t, m), 2);
  EXPECT_EQ(min_work_size(t, m, 2), 4);
  EXPECT_EQ(min_work_size(t, m, 4), 7);
  EXPECT_EQ(min_work_size(t, m, 7), 0);
}

TEST(Allocator, FamilyInvariants) {
  const auto m = builtin_model("A100");
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    SyntheticConfig cfg;
    cfg.n = n;
    cfg.p = scaling_shares("MixedScaling", m);
    cfg.seed = rng();
    const auto tasks = generate_synthetic(cfg, m);
    const auto fam = allocation_family(tasks, m).allocations;
    ASSERT_FALSE(fam.empty());
    for (std::size_t i = 0; i < tasks.size(); ++i) EXPECT_EQ(fam[0][i], min_work_size(tasks[i], m));
    for (std::size_t k = 0; k + 1 < fam.size(); ++k) {
      // Exactly one task changes, and it is a longest one (lowest index on ties).
      std::size_t longest = 0;
      for (std::size_t i = 1; i < tasks.size(); ++i)
        if (tasks[i].time(fam[k][i]) > tasks[longest].time(fam[k][longest])) longest = i;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        EXPECT_LE(fam[k][i], fam[k + 1][i]);
        if (i == longest)
          EXPECT_EQ(fam[k + 1][i], min_work_size(tasks[i], m, fam[k][i]));
        else
          EXPECT_EQ(fam[k + 1][i], fam[k][i]);
      }
    }
    // The last member's longest task sits at the largest size.
    const auto& last = fam.back();
    std::size_t longest = 0;
    for (std::size_t i = 1; i < tasks.size(); ++i)
      if (tasks[i].time(last[i]) > tasks[longest].time(last[longest])) longest = i;
    EXPECT_EQ(last[longest], m.max_size());
  }
}

TEST(Allocator, WorkMonotoneStartsAtOne) {
  const auto m = builtin_model("A30");
  std::vector<Task> tasks{make_task("a", {{1, 4}, {2, 3}, {4, 2}}), make_task("b", {{1, 6}, {2, 5}, {4, 5}})};
  EXPECT_EQ(allocation_family(tasks, m).allocations.front(), (Allocation{1, 1}));
}
