#pragma once

#include <vector>

#include <json.hpp>

#include "migsched/core_sched.hpp"
#include "migsched/schedule.hpp"
#include "migsched/timeline.hpp"

namespace migsched {

/// Mirrors task times inside the makespan and rebuilds reconfigurations
/// for the mirrored instance lifetimes.
Schedule reverse_schedule(const Schedule& s);

/// Instance state left behind by a schedule.
TimelineState final_state(const Schedule& s);

struct ConcatOptions {
  /// Try moves and swaps across the seam (only when `next` is reversed).
  bool seam_moves = true;
  RefineOptions refine_opts;
};

struct SeamReport {
  /// Start of the appended batch's time frame.
  double offset = 0;
  /// Pair makespans: rigid append at the previous makespan, overlapped
  /// append, overlapped append after seam moves/swaps.
  double trivial_makespan = 0;
  double overlap_makespan = 0;
  double final_makespan = 0;
  int moves = 0;
  int swaps = 0;
  bool next_reversed = false;

  double gain() const { return trivial_makespan - final_makespan; }
};

struct ConcatResult {
  double offset = 0;
  Schedule combined;
  SeamReport report;
};

/// Appends `next` after `prev` as early as the per-slice end times allow.
/// `next_forward` is the unreversed form of `next` when `next` is reversed;
/// it is required for seam moves and ignored otherwise.
ConcatResult concat(const Schedule& prev, const Schedule& next, const ConcatOptions& opts = {},
                    const Schedule* next_forward = nullptr);

struct StreamOptions {
  FarOptions far;
  ConcatOptions concat;
};

struct ConcatPlan {
  explicit ConcatPlan(GpuModel model) : combined(std::move(model)) {}

  /// Each batch as placed in the stream (reversed when flagged), starting at 0.
  std::vector<Schedule> batch_schedules;
  std::vector<bool> reversed;
  std::vector<double> offsets;
  /// Reconfigurations issued while appending each batch after the first.
  std::vector<ReconfigEvent> seam_reconfigs;
  Schedule combined;
};

struct StreamResult {
  double total_makespan = 0;
  double baseline = 0;
  double p_multibatch = 0;
  /// One report per seam; each compares standalone pair makespans.
  std::vector<SeamReport> seams;
};

/// Schedules every batch with FAR, reverses every other batch and folds
/// them into one timeline.
std::pair<ConcatPlan, StreamResult> run_stream(const std::vector<std::vector<Task>>& batches, const GpuModel& model,
                                               const StreamOptions& opts = {});

nlohmann::json plan_to_json(const ConcatPlan& plan, const StreamResult& result);

}  // namespace migsched
