#include "migsched/timeline.hpp"

#include <algorithm>

namespace migsched {

bool nodes_conflict(const GpuModel& model, int a, int b) {
  return model.node(a).instance.overlaps(model.node(b).instance);
}

std::vector<ScheduledTask> realize(const GpuModel& model, std::vector<PlannedTask> plan, bool zero_reconfig,
                                   TimelineState& state, std::vector<ReconfigEvent>& events) {
  std::stable_sort(plan.begin(), plan.end(), [&](const PlannedTask& a, const PlannedTask& b) {
    if (a.target != b.target) return a.target < b.target;
    return model.node(a.node).instance.start_slice < model.node(b.node).instance.start_slice;
  });
  auto cost = [&](ReconfigKind kind, int node) {
    if (zero_reconfig) return 0.0;
    const int size = model.node(node).instance.size;
    return kind == ReconfigKind::create ? model.create_cost(size) : model.destroy_cost(size);
  };
  auto at = [](auto& v, int i) -> decltype(auto) { return v[static_cast<std::size_t>(i)]; };

  std::vector<ScheduledTask> out;
  out.reserve(plan.size());
  for (const auto& p : plan) {
    double ready = 0;
    if (!at(state.alive, p.node)) {
      for (int other = 0; other < model.num_nodes(); ++other) {
        if (!at(state.alive, other) || !nodes_conflict(model, other, p.node)) continue;
        const double begin = std::max(state.reconfig_end, at(state.free_at, other));
        const double d = cost(ReconfigKind::destroy, other);
        events.push_back({ReconfigKind::destroy, other, model.node(other).instance, begin, d});
        state.reconfig_end = begin + d;
        at(state.alive, other) = false;
      }
      // A node recreated after an earlier life cannot start before that life ended.
      const double begin = std::max(state.reconfig_end, at(state.free_at, p.node));
      const double d = cost(ReconfigKind::create, p.node);
      events.push_back({ReconfigKind::create, p.node, model.node(p.node).instance, begin, d});
      state.reconfig_end = begin + d;
      at(state.alive, p.node) = true;
      ready = state.reconfig_end;
    }
    ScheduledTask t;
    t.task_id = p.task_id;
    t.task_index = p.task_index;
    t.node = p.node;
    t.instance = model.node(p.node).instance;
    t.size_used = p.size_used;
    t.duration = p.duration;
    t.start = std::max({p.target, at(state.free_at, p.node), ready});
    at(state.free_at, p.node) = t.end();
    out.push_back(std::move(t));
  }
  return out;
}

Schedule realize_schedule(const GpuModel& model, std::vector<PlannedTask> plan, bool zero_reconfig) {
  Schedule s(model);
  s.zero_reconfig = zero_reconfig;
  TimelineState state(model);
  s.tasks = realize(model, std::move(plan), zero_reconfig, state, s.reconfigs);
  s.finalize();
  return s;
}

std::vector<PlannedTask> plan_of(const Schedule& s) {
  std::vector<PlannedTask> plan;
  plan.reserve(s.tasks.size());
  for (const auto& t : s.tasks)
    plan.push_back({t.task_id, t.task_index, t.node, t.size_used, t.duration, t.start});
  return plan;
}

}  // namespace migsched
