#pragma once

// Independent reference implementations used as test oracles.

#include <vector>

#include "migsched/allocator.hpp"
#include "migsched/schedule.hpp"
#include "migsched/workload.hpp"

namespace ref {

/// Step-by-step phase-2 simulation using a linear scan instead of a heap.
migsched::Schedule phase2(const std::vector<migsched::Task>& tasks, const migsched::Allocation& a,
                          const migsched::GpuModel& model, bool zero_reconfig);

/// Pairwise check that no two tasks share a slice at the same time.
bool slices_exclusive(const migsched::Schedule& s, double tol = 1e-9);

/// Unpruned exhaustive optimum (zero reconfiguration), for n <= 4.
double exhaustive_optimum(const std::vector<migsched::Task>& tasks, const migsched::GpuModel& model);

/// Task with integer times, non-increasing in size.
migsched::Task integer_task(std::mt19937_64& rng, const migsched::GpuModel& model, int max_time, int index);

}  // namespace ref
