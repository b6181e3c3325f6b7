#pragma once

#include <string>
#include <utility>
#include <vector>

#include "migsched/schedule.hpp"

namespace migsched {

/// One task bound to a node, as kept in the per-node lists.
struct NodeTask {
  int task_index = -1;
  std::string task_id;
  int size_used = 1;
  double duration = 0;
};
using NodeLists = std::vector<std::vector<NodeTask>>;

struct RefineOptions {
  int max_iterations = 100;
  /// Stop once an iteration gains less than this fraction of the makespan.
  double min_improvement = 0.001;
};

struct RefineReport {
  int moves = 0;
  int swaps = 0;
  double makespan_before = 0;
  double makespan_after = 0;
};

/// Phase 3: moves and swaps tasks off critical nodes onto the same-size
/// node that ends first. The input is returned unchanged when the rebuilt
/// schedule is not strictly shorter.
std::pair<Schedule, RefineReport> refine(const Schedule& schedule, const RefineOptions& opts = {});

/// The move/swap search on node lists. `ends` holds each slice's busy time
/// above `base`; the objective is max over slices of base + ends. Both
/// `lists` and `ends` are updated in place. Returns {moves, swaps}.
std::pair<int, int> refine_lists(const GpuModel& model, NodeLists& lists, std::vector<double>& ends,
                                 const std::vector<double>& base, const RefineOptions& opts);

/// Orders a node's list as phase 2 would run it: hosted-size priority, then
/// longest first.
void sort_node_list(const GpuModel& model, int node, std::vector<NodeTask>& list);

}  // namespace migsched
