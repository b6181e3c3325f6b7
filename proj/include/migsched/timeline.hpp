#pragma once

#include <vector>

#include "migsched/schedule.hpp"

namespace migsched {

/// A task with its node fixed and a desired start time.
struct PlannedTask {
  std::string task_id;
  int task_index = -1;
  int node = -1;
  int size_used = 1;
  double duration = 0;
  double target = 0;
};

/// Instance state carried between timeline segments.
struct TimelineState {
  std::vector<bool> alive;
  /// Last task end per node (0 when never used).
  std::vector<double> free_at;
  double reconfig_end = 0;

  explicit TimelineState(const GpuModel& model)
      : alive(static_cast<std::size_t>(model.num_nodes()), false),
        free_at(static_cast<std::size_t>(model.num_nodes()), 0.0) {}
};

/// Builds a feasible timeline from planned tasks, processed by target time.
/// A task starts at the latest of its target, its node becoming free and
/// its node's creation. Creating a node first destroys any live instance it
/// conflicts with. Reconfigurations run one at a time. `state` supplies the
/// starting instances and is updated to the final state.
std::vector<ScheduledTask> realize(const GpuModel& model, std::vector<PlannedTask> plan, bool zero_reconfig,
                                   TimelineState& state, std::vector<ReconfigEvent>& events);

/// Convenience wrapper starting from an empty GPU.
Schedule realize_schedule(const GpuModel& model, std::vector<PlannedTask> plan, bool zero_reconfig);

/// Planned tasks reproducing a schedule's node assignment with its starts as targets.
std::vector<PlannedTask> plan_of(const Schedule& s);

/// True when the two nodes' slice intervals intersect.
bool nodes_conflict(const GpuModel& model, int a, int b);

}  // namespace migsched
