#pragma once

#include <utility>
#include <vector>

#include "migsched/schedule.hpp"
#include "migsched/workload.hpp"

namespace migsched {

struct MisoOptions {
  bool zero_reconfig = false;
};

/// Round-based FIFO scheduler: each round picks the partition maximizing
/// the summed speedups of the next tasks and runs them together.
Schedule miso_schedule(const std::vector<Task>& tasks, const GpuModel& model, const MisoOptions& opts = {});

/// Static partition, FIFO onto the first instance to become free.
Schedule fixpart_schedule(const std::vector<Task>& tasks, const GpuModel& model, const std::vector<Instance>& partition);

/// fixpart_schedule over every partition; lowest makespan, first on ties.
std::pair<std::vector<Instance>, Schedule> fixpart_best(const std::vector<Task>& tasks, const GpuModel& model);

/// Partition made of `size`-slice instances only, e.g. seven 1-slice
/// instances or one 7-slice instance on A100.
std::vector<Instance> uniform_partition(const GpuModel& model, int size);

/// Parses "2,2" style size lists into the matching enumerated partition.
std::vector<Instance> partition_from_sizes(const GpuModel& model, const std::vector<int>& sizes);

}  // namespace migsched
