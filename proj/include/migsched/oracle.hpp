#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "migsched/schedule.hpp"
#include "migsched/workload.hpp"

namespace migsched {

struct OracleOptions {
  bool zero_reconfig = true;
  int max_n = 6;
};

struct OracleResult {
  double makespan = 0;
  Schedule schedule;
  std::uint64_t nodes_explored = 0;
};

/// Exact optimum over all size choices and placements on catalog instances,
/// by branch and bound. Only the zero-reconfiguration problem is supported.
OracleResult brute_force_optimal(const std::vector<Task>& tasks, const GpuModel& model, const OracleOptions& opts = {});

/// Sum of minimum task areas spread evenly over the slices.
double lower_bound(const std::vector<Task>& tasks, const GpuModel& model);
double lower_bound_multibatch(const std::vector<std::vector<Task>>& batches, const GpuModel& model);

}  // namespace migsched
