#include <gtest/gtest.h>

#include <map>

#include "migsched/core_sched.hpp"
#include "migsched/refine.hpp"
#include "migsched/timeline.hpp"
#include "migsched/validate.hpp"
#include "reference_sim.hpp"

using namespace migsched;

namespace {

// Hand-placed A30 layout: per leaf slice, back-to-back task durations.
Schedule leaf_layout(const std::vector<std::vector<double>>& lanes) {
  const auto m = builtin_model("A30");
  std::vector<PlannedTask> plan;
  int index = 0;
  for (int sl = 0; sl < 4; ++sl) {
    double t = 0;
    for (double d : lanes[static_cast<std::size_t>(sl)]) {
      plan.push_back({"t" + std::to_string(index), index, m.leaf_of_slice(sl), 1, d, t});
      ++index;
      t += d;
    }
  }
  return realize_schedule(m, plan, true);
}

}  // namespace

TEST(Refine, StackedTaskMovesToIdleSlice) {
  // Two 4 s tasks stacked on S0 while the other slices finish at 1 s.
  const auto s = leaf_layout({{4, 4}, {1}, {1}, {1}});
  ASSERT_TRUE(validate(s).ok);
  ASSERT_DOUBLE_EQ(s.makespan, 8);
  const auto [r, rep] = refine(s);
  EXPECT_TRUE(validate(r).ok);
  EXPECT_GT(s.makespan / r.makespan, 1.5);
  EXPECT_DOUBLE_EQ(r.makespan, 4);
  EXPECT_GE(rep.moves, 1);
  EXPECT_EQ(rep.swaps, 0);
  EXPECT_DOUBLE_EQ(rep.makespan_before, 8);
  EXPECT_DOUBLE_EQ(rep.makespan_after, 4);
}

TEST(Refine, SwapWhenNoMoveFits) {
  // S0 holds 4.9 + 5; other slices 3 + 3. Every S0 task exceeds the 3.9 s
  // margin, so only swapping 5 with 3 helps: 9.9 -> 8.
  const auto s = leaf_layout({{4.9, 5}, {3, 3}, {3, 3}, {3, 3}});
  const auto [r, rep] = refine(s);
  EXPECT_TRUE(validate(r).ok);
  EXPECT_EQ(rep.moves, 0);
  EXPECT_EQ(rep.swaps, 1);
  EXPECT_DOUBLE_EQ(r.makespan, 8);
  EXPECT_NEAR(s.makespan / r.makespan, 1.2375, 1e-12);
  EXPECT_LT(s.makespan / r.makespan, 1.25);
}

TEST(Refine, BalancedIsUnchanged) {
  const auto s = leaf_layout({{3, 3}, {3, 3}, {3, 3}, {3, 3}});
  const auto [r, rep] = refine(s);
  EXPECT_EQ(rep.moves + rep.swaps, 0);
  EXPECT_DOUBLE_EQ(r.makespan, s.makespan);
  ASSERT_EQ(r.tasks.size(), s.tasks.size());
  for (std::size_t i = 0; i < s.tasks.size(); ++i) EXPECT_DOUBLE_EQ(r.tasks[i].start, s.tasks[i].start);
}

TEST(Refine, ZeroIterationsReturnsInput) {
  const auto s = leaf_layout({{4, 4}, {1}, {1}, {1}});
  RefineOptions o;
  o.max_iterations = 0;
  const auto [r, rep] = refine(s, o);
  EXPECT_EQ(rep.moves + rep.swaps, 0);
  EXPECT_EQ(schedule_to_json(r), schedule_to_json(s));
}

TEST(Refine, NeverWorseAndKeepsSizes) {
  for (const char* name : {"A30", "A100"}) {
    const auto m = builtin_model(name);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      SyntheticConfig cfg;
      cfg.n = 5 + static_cast<int>(seed % 25);
      cfg.p = scaling_shares(seed % 2 ? "MixedScaling" : "PoorScaling", m);
      cfg.seed = seed;
      if (seed % 3 == 0) cfg.t_min = 90;
      const auto tasks = generate_synthetic(cfg, m);
      const auto fam = allocation_family(tasks, m).allocations;
      const auto s = schedule_allocation(tasks, fam[seed % fam.size()], m, {seed % 2 == 0});
      const auto [r, rep] = refine(s);
      EXPECT_LE(r.makespan, s.makespan + 1e-9);
      EXPECT_DOUBLE_EQ(rep.makespan_after, r.makespan);
      EXPECT_TRUE(validate(r).ok) << name << " seed " << seed;
      EXPECT_TRUE(ref::slices_exclusive(r));
      std::map<int, std::pair<int, double>> before;
      for (const auto& t : s.tasks) before[t.task_index] = {t.instance.size, t.duration};
      ASSERT_EQ(r.tasks.size(), s.tasks.size());
      for (const auto& t : r.tasks) {
        EXPECT_EQ(before[t.task_index].first, t.instance.size);
        EXPECT_DOUBLE_EQ(before[t.task_index].second, t.duration);
      }
    }
  }
}

TEST(Refine, ListsRespectBase) {
  // With a base profile the search balances base + ends, not ends alone.
  const auto m = builtin_model("A30");
  NodeLists lists(static_cast<std::size_t>(m.num_nodes()));
  lists[static_cast<std::size_t>(m.leaf_of_slice(0))] = {{0, "a", 1, 2}, {1, "b", 1, 2}};
  lists[static_cast<std::size_t>(m.leaf_of_slice(1))] = {{2, "c", 1, 1}};
  lists[static_cast<std::size_t>(m.leaf_of_slice(2))] = {{3, "d", 1, 1}};
  lists[static_cast<std::size_t>(m.leaf_of_slice(3))] = {{4, "e", 1, 1}};
  std::vector<double> ends{4, 1, 1, 1};
  // S1 is busy until 2 in the base, so a 2 s task from S0 goes elsewhere.
  const std::vector<double> base{0, 2, 0, 0};
  const auto [moves, swaps] = refine_lists(m, lists, ends, base, {});
  EXPECT_GE(moves, 1);
  EXPECT_EQ(swaps, 0);
  for (const auto& t : lists[static_cast<std::size_t>(m.leaf_of_slice(1))]) EXPECT_NE(t.size_used * t.duration, 2);
  double top = 0;
  for (std::size_t sl = 0; sl < 4; ++sl) top = std::max(top, base[sl] + ends[sl]);
  EXPECT_DOUBLE_EQ(top, 3);
  EXPECT_DOUBLE_EQ(ends[0], 2);
}
