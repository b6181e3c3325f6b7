#pragma once

#include <vector>

#include "migsched/gpu_model.hpp"
#include "migsched/workload.hpp"

namespace migsched {

/// Slice count per task, in task order.
using Allocation = std::vector<int>;

struct AllocationFamily {
  std::vector<Allocation> allocations;
};

/// Smallest size minimizing s * t(s) among sizes strictly above `above`.
/// Returns 0 when no such size exists.
int min_work_size(const Task& task, const GpuModel& model, int above = 0);

/// Phase 1: starts from the min-work allocation and repeatedly grows the
/// longest task until it reaches the largest size.
AllocationFamily allocation_family(const std::vector<Task>& tasks, const GpuModel& model);

}  // namespace migsched
