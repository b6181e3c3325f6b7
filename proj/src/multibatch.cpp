#include "migsched/multibatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "migsched/oracle.hpp"

namespace migsched {

Schedule reverse_schedule(const Schedule& s) {
  auto plan = plan_of(s);
  for (auto& p : plan) p.target = s.makespan - (p.target + p.duration);
  // Clean up rounding so mirrored starts never dip below zero.
  for (auto& p : plan) p.target = std::max(0.0, p.target);
  return realize_schedule(s.model, std::move(plan), s.zero_reconfig);
}

TimelineState final_state(const Schedule& s) {
  TimelineState state(s.model);
  for (const auto& e : s.reconfigs) {
    state.alive[static_cast<std::size_t>(e.node)] = e.kind == ReconfigKind::create;
    state.reconfig_end = std::max(state.reconfig_end, e.end());
  }
  for (const auto& t : s.tasks)
    state.free_at[static_cast<std::size_t>(t.node)] = std::max(state.free_at[static_cast<std::size_t>(t.node)], t.end());
  return state;
}

namespace {

// A growing timeline that batches are appended to.
struct Fold {
  Schedule combined;
  TimelineState state;
  double last_offset = 0;
};

Fold fold_of(const Schedule& s) { return {s, final_state(s), 0.0}; }

double overlap_offset(const Fold& f, const Schedule& next) {
  const auto first = next.slice_first_use();
  double off = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < first.size(); ++s)
    if (std::isfinite(first[s])) off = std::max(off, f.combined.slice_end[s] - first[s]);
  return std::max({off, f.last_offset, 0.0});
}

struct Placement {
  std::vector<ScheduledTask> tasks;
  std::vector<ReconfigEvent> events;
  TimelineState state;
  double makespan = 0;
};

Placement place(const Fold& f, const Schedule& next, double offset, const std::string& prefix) {
  auto plan = plan_of(next);
  for (auto& p : plan) {
    p.target += offset;
    p.task_id = prefix + p.task_id;
  }
  Placement out{{}, {}, f.state, f.combined.makespan};
  out.tasks = realize(next.model, std::move(plan), f.combined.zero_reconfig || next.zero_reconfig, out.state, out.events);
  for (const auto& t : out.tasks) out.makespan = std::max(out.makespan, t.end());
  return out;
}

void commit(Fold& f, Placement p, double offset) {
  f.combined.tasks.insert(f.combined.tasks.end(), p.tasks.begin(), p.tasks.end());
  f.combined.reconfigs.insert(f.combined.reconfigs.end(), p.events.begin(), p.events.end());
  f.combined.finalize();
  f.state = std::move(p.state);
  f.last_offset = offset;
}

struct AppendOutcome {
  double offset = 0;
  double overlap_makespan = 0;
  double final_makespan = 0;
  int moves = 0;
  int swaps = 0;
  std::size_t first_event = 0;
};

// Places `next` on the fold, trying seam moves/swaps on its forward form.
AppendOutcome append(Fold& f, const Schedule& next, const Schedule* forward, const ConcatOptions& opts,
                     const std::string& prefix) {
  AppendOutcome out;
  out.first_event = f.combined.reconfigs.size();
  out.offset = overlap_offset(f, next);
  Placement best = place(f, next, out.offset, prefix);
  out.overlap_makespan = out.final_makespan = best.makespan;

  if (opts.seam_moves && forward != nullptr && !forward->tasks.empty()) {
    const auto& model = forward->model;
    NodeLists lists = node_lists_of(*forward);
    for (int id = 0; id < model.num_nodes(); ++id) sort_node_list(model, id, lists[static_cast<std::size_t>(id)]);
    std::vector<double> ends = forward->slice_end;
    auto [moves, swaps] = refine_lists(model, lists, ends, f.combined.slice_end, opts.refine_opts);
    if (moves + swaps > 0) {
      Schedule mirrored = reverse_schedule(replay_node_lists(model, lists, forward->zero_reconfig));
      const double off = overlap_offset(f, mirrored);
      Placement cand = place(f, mirrored, off, prefix);
      if (cand.makespan < best.makespan - 1e-12) {
        best = std::move(cand);
        out.offset = off;
        out.final_makespan = best.makespan;
        out.moves = moves;
        out.swaps = swaps;
      }
    }
  }
  commit(f, std::move(best), out.offset);
  return out;
}

}  // namespace

ConcatResult concat(const Schedule& prev, const Schedule& next, const ConcatOptions& opts, const Schedule* next_forward) {
  if (!(prev.model == next.model)) throw Error("cannot concatenate schedules of different models");
  Fold trivial = fold_of(prev);
  const double trivial_makespan = place(trivial, next, prev.makespan, "").makespan;

  Fold f = fold_of(prev);
  const bool reversed = next_forward != nullptr;
  auto out = append(f, next, reversed ? next_forward : nullptr, opts, "");
  SeamReport report;
  report.offset = out.offset;
  report.trivial_makespan = trivial_makespan;
  report.overlap_makespan = out.overlap_makespan;
  report.final_makespan = out.final_makespan;
  report.moves = out.moves;
  report.swaps = out.swaps;
  report.next_reversed = reversed;
  return {out.offset, std::move(f.combined), report};
}

std::pair<ConcatPlan, StreamResult> run_stream(const std::vector<std::vector<Task>>& batches, const GpuModel& model,
                                               const StreamOptions& opts) {
  ConcatPlan plan(model);
  StreamResult result;
  if (batches.empty()) return {std::move(plan), result};

  std::vector<Schedule> forward;
  for (const auto& b : batches) {
    if (b.empty()) throw Error("empty batch in stream");
    forward.push_back(far_schedule(b, model, opts.far).schedule);
  }
  for (std::size_t k = 0; k < forward.size(); ++k) {
    const bool rev = k % 2 == 1;
    plan.reversed.push_back(rev);
    plan.batch_schedules.push_back(rev ? reverse_schedule(forward[k]) : forward[k]);
  }

  Fold fold{Schedule(model), TimelineState(model), 0.0};
  fold.combined.zero_reconfig = opts.far.zero_reconfig;
  fold.combined.finalize();
  for (std::size_t k = 0; k < forward.size(); ++k) {
    const std::string prefix = "b" + std::to_string(k) + ":";
    const Schedule* fwd = plan.reversed[k] ? &forward[k] : nullptr;
    auto out = append(fold, plan.batch_schedules[k], fwd, opts.concat, prefix);
    plan.offsets.push_back(out.offset);
    if (k > 0)
      plan.seam_reconfigs.insert(plan.seam_reconfigs.end(), fold.combined.reconfigs.begin() + static_cast<std::ptrdiff_t>(out.first_event),
                                 fold.combined.reconfigs.end());
    if (k > 0) {
      auto pair = concat(plan.batch_schedules[k - 1], plan.batch_schedules[k], opts.concat, fwd);
      result.seams.push_back(pair.report);
    }
  }
  plan.combined = std::move(fold.combined);
  result.total_makespan = plan.combined.makespan;
  result.baseline = lower_bound_multibatch(batches, model);
  result.p_multibatch = (result.total_makespan / result.baseline - 1.0) * 100.0;
  return {std::move(plan), result};
}

nlohmann::json plan_to_json(const ConcatPlan& plan, const StreamResult& result) {
  auto batches = nlohmann::json::array();
  for (std::size_t k = 0; k < plan.batch_schedules.size(); ++k)
    batches.push_back({{"reversed", static_cast<bool>(plan.reversed[k])},
                       {"offset", plan.offsets[k]},
                       {"schedule", schedule_to_json(plan.batch_schedules[k])}});
  auto seams = nlohmann::json::array();
  for (const auto& s : result.seams)
    seams.push_back({{"offset", s.offset},
                     {"next_reversed", s.next_reversed},
                     {"trivial_makespan", s.trivial_makespan},
                     {"overlap_makespan", s.overlap_makespan},
                     {"final_makespan", s.final_makespan},
                     {"gain", s.gain()},
                     {"moves", s.moves},
                     {"swaps", s.swaps}});
  auto seam_events = nlohmann::json::array();
  for (const auto& e : plan.seam_reconfigs)
    seam_events.push_back({{"kind", to_string(e.kind)},
                           {"slice_start", e.instance.start_slice},
                           {"size", e.instance.size},
                           {"start", e.start},
                           {"duration", e.duration}});
  return {{"model", plan.combined.model.name()},
          {"total_makespan", result.total_makespan},
          {"baseline", result.baseline},
          {"p_multibatch", result.p_multibatch},
          {"batches", batches},
          {"seams", seams},
          {"seam_reconfigs", seam_events},
          {"combined", schedule_to_json(plan.combined)}};
}

}  // namespace migsched
