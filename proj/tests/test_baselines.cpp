#include <gtest/gtest.h>

#include <random>

#include "migsched/baselines.hpp"
#include "migsched/core_sched.hpp"
#include "migsched/oracle.hpp"
#include "migsched/validate.hpp"
#include "reference_sim.hpp"

using namespace migsched;

namespace {
Task flat(const GpuModel& m, const std::string& id, double t) {
  std::map<int, double> times;
  for (int s : m.sizes()) times[s] = t;
  return make_task(id, times);
}
}  // namespace

TEST(Miso, LinearTaskTakesWholeGpu) {
  const auto m = builtin_model("A100");
  const auto s = miso_schedule({make_task("lin", {{1, 42}, {2, 21}, {3, 14}, {4, 10.5}, {7, 6}})}, m);
  ASSERT_EQ(s.tasks.size(), 1u);
  EXPECT_EQ(s.tasks[0].instance, (Instance{0, 7}));
  EXPECT_TRUE(validate(s).ok);
}

TEST(Miso, FlatTasksUseSevenSlices) {
  const auto m = builtin_model("A100");
  std::vector<Task> tasks;
  for (int i = 0; i < 7; ++i) tasks.push_back(flat(m, "f" + std::to_string(i), 5));
  const auto s = miso_schedule(tasks, m);
  for (const auto& t : s.tasks) EXPECT_EQ(t.instance.size, 1);
  EXPECT_TRUE(validate(s).ok);
  MisoOptions o;
  o.zero_reconfig = true;
  EXPECT_DOUBLE_EQ(miso_schedule(tasks, m, o).makespan, 5);
}

TEST(FixPart, Examples) {
  const auto m = builtin_model("A100");
  std::vector<Task> seven;
  for (int i = 0; i < 7; ++i) seven.push_back(flat(m, "f" + std::to_string(i), 10));
  EXPECT_DOUBLE_EQ(fixpart_schedule(seven, m, uniform_partition(m, 1)).makespan, 10);

  std::vector<Task> few{make_task("a", {{1, 9}, {2, 6}, {3, 5}, {4, 4}, {7, 3}}),
                        make_task("b", {{1, 8}, {2, 5}, {3, 4}, {4, 3}, {7, 2.5}})};
  EXPECT_DOUBLE_EQ(fixpart_schedule(few, m, uniform_partition(m, 7)).makespan, 5.5);

  const auto a30 = builtin_model("A30");
  std::vector<Task> three{make_task("x", {{1, 9}, {2, 6}, {4, 5}}), make_task("y", {{1, 9}, {2, 5}, {4, 5}}),
                          make_task("z", {{1, 9}, {2, 4}, {4, 3}})};
  const auto s = fixpart_schedule(three, a30, partition_from_sizes(a30, {2, 2}));
  EXPECT_DOUBLE_EQ(s.makespan, 9);
  EXPECT_EQ(s.tasks[2].instance, (Instance{2, 2}));
  EXPECT_TRUE(validate(s).ok);

  const std::vector<Instance> bad{{1, 2}};
  EXPECT_THROW(fixpart_schedule(three, a30, bad), Error);
}

TEST(FixPart, BestPrefersSevenSlicesForFlatTasks) {
  const auto m = builtin_model("A100");
  std::vector<Task> tasks;
  for (int i = 0; i < 9; ++i) tasks.push_back(flat(m, "f" + std::to_string(i), 3 + i));
  const auto [part, s] = fixpart_best(tasks, m);
  EXPECT_EQ(part, uniform_partition(m, 1));
  for (const auto& p : enumerate_partitions(m)) EXPECT_LE(s.makespan, fixpart_schedule(tasks, m, p).makespan);
}

TEST(FixPart, BestSingleTask) {
  const auto m = builtin_model("A100");
  const auto t = make_task("a", {{1, 9}, {2, 6}, {3, 5}, {4, 4.5}, {7, 4.5}});
  EXPECT_DOUBLE_EQ(fixpart_best({t}, m).second.makespan, 4.5);
}

TEST(Oracle, Examples) {
  const auto a30 = builtin_model("A30");
  const auto t = make_task("x", {{1, 2}, {2, 1.5}, {4, 1}});
  const auto r = brute_force_optimal({t, t}, a30);
  EXPECT_DOUBLE_EQ(r.makespan, 1.5);
  EXPECT_TRUE(validate(r.schedule).ok);
  EXPECT_DOUBLE_EQ(brute_force_optimal({t}, a30).makespan, 1);
}

TEST(Oracle, Errors) {
  const auto m = builtin_model("A30");
  const auto t = make_task("x", {{1, 2}, {2, 1.5}, {4, 1}});
  OracleOptions o;
  o.zero_reconfig = false;
  EXPECT_THROW(brute_force_optimal({t}, m, o), Error);
  EXPECT_THROW(brute_force_optimal(std::vector<Task>(7, t), m), Error);
}

TEST(Oracle, MatchesExhaustiveEnumeration) {
  for (const char* name : {"A30", "A100"}) {
    const auto m = builtin_model(name);
    std::mt19937_64 rng(23);
    const int max_n = name == std::string("A30") ? 4 : 3;
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Task> tasks;
      const int n = 1 + trial % max_n;
      for (int i = 0; i < n; ++i) tasks.push_back(ref::integer_task(rng, m, 20, i));
      const auto r = brute_force_optimal(tasks, m);
      EXPECT_DOUBLE_EQ(r.makespan, ref::exhaustive_optimum(tasks, m)) << name << " trial " << trial;
      EXPECT_TRUE(validate(r.schedule).ok);
      EXPECT_GE(r.makespan, lower_bound(tasks, m) - 1e-9);
      FarOptions fo;
      fo.zero_reconfig = true;
      EXPECT_GE(far_schedule(tasks, m, fo).schedule.makespan, r.makespan - 1e-9);
    }
  }
}

TEST(LowerBound, Examples) {
  EXPECT_DOUBLE_EQ(lower_bound({make_task("a", {{1, 4}, {2, 2}, {4, 1}})}, builtin_model("A30")), 1.0);
  const auto m = builtin_model("A100");
  const auto t = make_task("b", {{1, 8}, {2, 4}, {3, 3}, {4, 2.5}, {7, 2}});
  EXPECT_NEAR(lower_bound({t, t}, m), 16.0 / 7.0, 1e-12);
  EXPECT_NEAR(lower_bound_multibatch({{t}, {t}}, m), 16.0 / 7.0, 1e-12);
}
