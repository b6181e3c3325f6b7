#include <gtest/gtest.h>

#include "migsched/gpu_model.hpp"

using namespace migsched;

TEST(GpuModel, BuiltinCosts) {
  const auto a30 = builtin_model("A30");
  EXPECT_DOUBLE_EQ(a30.create_cost(1), 0.11);
  EXPECT_DOUBLE_EQ(a30.destroy_cost(1), 0.10);
  const auto a100 = builtin_model("A100");
  EXPECT_DOUBLE_EQ(a100.create_cost(7), 0.24);
  EXPECT_DOUBLE_EQ(a100.destroy_cost(7), 0.22);
  EXPECT_EQ(a100.sizes(), (std::vector<int>{1, 2, 3, 4, 7}));
  EXPECT_EQ(a30.sizes(), (std::vector<int>{1, 2, 4}));
}

TEST(GpuModel, UnknownModel) {
  try {
    builtin_model("A40");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()).rfind("unsupported model", 0), 0u);
  }
}

TEST(GpuModel, PartitionCounts) {
  EXPECT_EQ(enumerate_partitions(builtin_model("A30")).size(), 5u);
  EXPECT_EQ(enumerate_partitions(builtin_model("A100")).size(), 19u);
  EXPECT_EQ(enumerate_partitions(builtin_model("H100")).size(), 19u);
}

TEST(GpuModel, PartitionsAreFeasibleAndMaximal) {
  for (const char* name : {"A30", "A100"}) {
    const auto m = builtin_model(name);
    for (const auto& p : enumerate_partitions(m)) {
      EXPECT_TRUE(is_feasible_instance_set(m, p));
      // Maximal: no catalog instance can be added.
      for (const auto& inst : m.catalog()) {
        auto q = p;
        q.push_back(inst);
        EXPECT_FALSE(is_feasible_instance_set(m, q));
      }
    }
  }
}

TEST(GpuModel, Feasibility) {
  const auto a30 = builtin_model("A30");
  std::vector<Instance> ok{{0, 2}, {2, 2}};
  EXPECT_TRUE(is_feasible_instance_set(a30, ok));
  std::vector<Instance> middle{{1, 2}};
  EXPECT_FALSE(is_feasible_instance_set(a30, middle));
  EXPECT_TRUE(is_feasible_instance_set(a30, std::vector<Instance>{}));
  std::vector<Instance> overlap{{0, 2}, {0, 1}};
  EXPECT_FALSE(is_feasible_instance_set(a30, overlap));

  const auto a100 = builtin_model("A100");
  // The 3-slice use of {S0..S3} blocks S3 as well.
  std::vector<Instance> hosted{{0, 3}, {3, 1}};
  EXPECT_FALSE(is_feasible_instance_set(a100, hosted));
  std::vector<Instance> hosted_ok{{0, 3}, {4, 3}};
  EXPECT_TRUE(is_feasible_instance_set(a100, hosted_ok));
}

TEST(GpuModel, TreeShape) {
  const auto m = builtin_model("A100");
  EXPECT_EQ(m.node(0).instance, (Instance{0, 7}));
  EXPECT_EQ(m.node(1).hosted_sizes, (std::vector<int>{4, 3}));
  EXPECT_EQ(m.catalog().size(), 13u + 1u);
  EXPECT_EQ(m.footprint(Instance{0, 3}), (Instance{0, 4}));
  for (int s = 0; s < 7; ++s) EXPECT_TRUE(m.is_leaf(m.leaf_of_slice(s)));
  EXPECT_TRUE(m.is_ancestor(0, m.leaf_of_slice(6)));
}

TEST(GpuModel, JsonRoundTrip) {
  for (const char* name : {"A30", "A100", "H100"}) {
    const auto m = builtin_model(name);
    const auto back = model_from_json(model_to_json(m));
    EXPECT_TRUE(back == m) << name;
    EXPECT_EQ(enumerate_partitions(back).size(), enumerate_partitions(m).size());
  }
}
