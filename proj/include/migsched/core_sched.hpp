#pragma once

#include <functional>
#include <vector>

#include "migsched/allocator.hpp"
#include "migsched/refine.hpp"
#include "migsched/schedule.hpp"
#include "migsched/workload.hpp"

namespace migsched {

struct ScheduleOptions {
  bool zero_reconfig = false;
};

/// Phase 2: list scheduling over the repartitioning tree. Nodes are taken
/// from a heap by end time; a node runs the longest pending task of a hosted
/// size, otherwise it is split into its children.
Schedule schedule_allocation(const std::vector<Task>& tasks, const Allocation& allocation, const GpuModel& model,
                             const ScheduleOptions& opts = {});

/// Tasks grouped by node in start order.
NodeLists node_lists_of(const Schedule& s);

/// Re-times fixed per-node task lists with the phase-2 heap, so that
/// rebuilding an unmodified phase-2 schedule reproduces it exactly.
Schedule replay_node_lists(const GpuModel& model, const NodeLists& lists, bool zero_reconfig);

struct FarOptions {
  bool refine = true;
  bool zero_reconfig = false;
  RefineOptions refine_opts;
};

struct FarResult {
  Schedule schedule;
  std::size_t chosen_index = 0;
  std::vector<Allocation> family;
  std::vector<double> family_makespans;
  /// Makespan before phase 3.
  double unrefined_makespan = 0;
  RefineReport refine_report;
};

FarResult far_schedule(const std::vector<Task>& tasks, const GpuModel& model, const FarOptions& opts = {});

}  // namespace migsched
