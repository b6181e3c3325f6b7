#include "migsched/core_sched.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace migsched {

namespace {

struct HeapEntry {
  double end;
  int start_slice;
  int size;
  int node;
};

// Earliest end first, then lower start slice, then larger instance.
struct Later {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.end != b.end) return a.end > b.end;
    if (a.start_slice != b.start_slice) return a.start_slice > b.start_slice;
    return a.size < b.size;
  }
};

// The heap walk shared by phase 2 and by replays of fixed node lists.
// `take(node)` yields the next task for a node or nullptr; `pending()`
// reports whether any task is still unplaced.
template <typename Take, typename Pending>
Schedule tree_walk(const GpuModel& model, bool zero_reconfig, Take take, Pending pending) {
  Schedule s(model);
  s.zero_reconfig = zero_reconfig;
  std::vector<bool> used(static_cast<std::size_t>(model.num_nodes()), false);
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, Later> heap;
  auto push = [&](int id, double end) {
    const auto& inst = model.node(id).instance;
    heap.push({end, inst.start_slice, inst.size, id});
  };
  double reconfig_end = 0;
  push(model.root(), 0.0);

  while (!heap.empty()) {
    HeapEntry top = heap.top();
    heap.pop();
    const int id = top.node;
    const auto& node = model.node(id);
    const int size = node.instance.size;
    if (const NodeTask* task = take(id)) {
      if (!used[static_cast<std::size_t>(id)]) {
        const double begin = std::max(reconfig_end, top.end);
        const double d = zero_reconfig ? 0.0 : model.create_cost(size);
        s.reconfigs.push_back({ReconfigKind::create, id, node.instance, begin, d});
        reconfig_end = begin + d;
        top.end = reconfig_end;
        used[static_cast<std::size_t>(id)] = true;
      }
      ScheduledTask st;
      st.task_id = task->task_id;
      st.task_index = task->task_index;
      st.node = id;
      st.instance = node.instance;
      st.size_used = task->size_used;
      st.start = top.end;
      st.duration = task->duration;
      s.tasks.push_back(std::move(st));
      push(id, top.end + task->duration);
    } else if (pending() && !node.children.empty()) {
      if (used[static_cast<std::size_t>(id)]) {
        const double begin = std::max(reconfig_end, top.end);
        const double d = zero_reconfig ? 0.0 : model.destroy_cost(size);
        s.reconfigs.push_back({ReconfigKind::destroy, id, node.instance, begin, d});
        reconfig_end = begin + d;
      }
      for (int c : node.children) push(c, top.end);
    }
  }
  if (pending()) throw Error("unschedulable size: some tasks found no hosting node");
  s.finalize();
  return s;
}

}  // namespace

Schedule schedule_allocation(const std::vector<Task>& tasks, const Allocation& allocation, const GpuModel& model,
                             const ScheduleOptions& opts) {
  if (allocation.size() != tasks.size()) throw Error("allocation length differs from task count");
  std::map<int, std::vector<NodeTask>> groups;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const int s = allocation[i];
    if (model.hosts_of(s).empty()) throw Error("unschedulable size " + std::to_string(s));
    groups[s].push_back({static_cast<int>(i), tasks[i].id, s, tasks[i].time(s)});
  }
  for (auto& [s, g] : groups)
    std::stable_sort(g.begin(), g.end(), [](const NodeTask& a, const NodeTask& b) { return a.duration > b.duration; });
  std::map<int, std::size_t> cursor;
  std::size_t remaining = tasks.size();

  auto take = [&](int id) -> const NodeTask* {
    for (int h : model.node(id).hosted_sizes) {
      auto it = groups.find(h);
      if (it == groups.end()) continue;
      auto& c = cursor[h];
      if (c < it->second.size()) {
        --remaining;
        return &it->second[c++];
      }
    }
    return nullptr;
  };
  return tree_walk(model, opts.zero_reconfig, take, [&] { return remaining > 0; });
}

NodeLists node_lists_of(const Schedule& s) {
  NodeLists lists(static_cast<std::size_t>(s.model.num_nodes()));
  std::vector<const ScheduledTask*> order;
  for (const auto& t : s.tasks) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(),
                   [](const ScheduledTask* a, const ScheduledTask* b) { return a->start < b->start; });
  for (const auto* t : order)
    lists[static_cast<std::size_t>(t->node)].push_back({t->task_index, t->task_id, t->size_used, t->duration});
  return lists;
}

Schedule replay_node_lists(const GpuModel& model, const NodeLists& lists, bool zero_reconfig) {
  std::vector<std::size_t> cursor(lists.size(), 0);
  std::size_t remaining = 0;
  for (const auto& l : lists) remaining += l.size();
  auto take = [&](int id) -> const NodeTask* {
    auto& c = cursor[static_cast<std::size_t>(id)];
    const auto& l = lists[static_cast<std::size_t>(id)];
    if (c >= l.size()) return nullptr;
    --remaining;
    return &l[c++];
  };
  return tree_walk(model, zero_reconfig, take, [&] { return remaining > 0; });
}

FarResult far_schedule(const std::vector<Task>& tasks, const GpuModel& model, const FarOptions& opts) {
  if (tasks.empty()) throw Error("no tasks to schedule");
  auto family = allocation_family(tasks, model);
  std::vector<double> makespans;
  std::size_t best = 0;
  std::optional<Schedule> best_schedule;
  for (std::size_t k = 0; k < family.allocations.size(); ++k) {
    auto s = schedule_allocation(tasks, family.allocations[k], model, {opts.zero_reconfig});
    makespans.push_back(s.makespan);
    if (!best_schedule || s.makespan < best_schedule->makespan) {
      best = k;
      best_schedule = std::move(s);
    }
  }
  FarResult result{std::move(*best_schedule), best, std::move(family.allocations), std::move(makespans), 0, {}};
  result.unrefined_makespan = result.schedule.makespan;
  result.refine_report.makespan_before = result.refine_report.makespan_after = result.schedule.makespan;
  if (opts.refine) {
    auto [refined, report] = refine(result.schedule, opts.refine_opts);
    result.schedule = std::move(refined);
    result.refine_report = report;
  }
  return result;
}

}  // namespace migsched
