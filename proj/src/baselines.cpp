#include "migsched/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "migsched/timeline.hpp"

namespace migsched {

namespace {

ScheduledTask run_on(const GpuModel& model, const Task& task, int index, const Instance& inst, double start) {
  ScheduledTask t;
  t.task_id = task.id;
  t.task_index = index;
  t.node = *model.host_node(inst);
  t.instance = model.node(t.node).instance;
  t.size_used = inst.size;
  t.start = start;
  t.duration = task.time(inst.size);
  return t;
}

}  // namespace

Schedule miso_schedule(const std::vector<Task>& tasks, const GpuModel& model, const MisoOptions& opts) {
  Schedule s(model);
  s.zero_reconfig = opts.zero_reconfig;
  const auto partitions = enumerate_partitions(model);
  std::vector<bool> alive(static_cast<std::size_t>(model.num_nodes()), false);
  double clock = 0;
  const std::size_t n = tasks.size();

  for (std::size_t k = 0; k < n;) {
    std::size_t best = 0;
    double best_sum = -1;
    for (std::size_t p = 0; p < partitions.size(); ++p) {
      double sum = 0;
      for (std::size_t i = 0; i < partitions[p].size() && k + i < n; ++i)
        sum += tasks[k + i].speedup(partitions[p][i].size);
      const bool better = sum > best_sum + 1e-12 ||
                          (std::abs(sum - best_sum) <= 1e-12 && partitions[p].size() < partitions[best].size());
      if (better) {
        best = p;
        best_sum = sum;
      }
    }
    const auto& part = partitions[best];
    const std::size_t m = std::min(part.size(), n - k);

    // Round reconfiguration: drop conflicting instances, create missing ones.
    std::vector<int> needed;
    for (std::size_t i = 0; i < m; ++i) needed.push_back(*model.host_node(part[i]));
    double reconfig = clock;
    for (int id = 0; id < model.num_nodes(); ++id) {
      if (!alive[static_cast<std::size_t>(id)]) continue;
      bool keep = std::find(needed.begin(), needed.end(), id) != needed.end();
      bool clash = false;
      for (int nid : needed) clash = clash || (nid != id && nodes_conflict(model, id, nid));
      if (keep || !clash) continue;
      const double d = opts.zero_reconfig ? 0.0 : model.destroy_cost(model.node(id).instance.size);
      s.reconfigs.push_back({ReconfigKind::destroy, id, model.node(id).instance, reconfig, d});
      reconfig += d;
      alive[static_cast<std::size_t>(id)] = false;
    }
    for (int nid : needed) {
      if (alive[static_cast<std::size_t>(nid)]) continue;
      const double d = opts.zero_reconfig ? 0.0 : model.create_cost(model.node(nid).instance.size);
      s.reconfigs.push_back({ReconfigKind::create, nid, model.node(nid).instance, reconfig, d});
      reconfig += d;
      alive[static_cast<std::size_t>(nid)] = true;
    }
    double round_end = reconfig;
    for (std::size_t i = 0; i < m; ++i) {
      auto t = run_on(model, tasks[k + i], static_cast<int>(k + i), part[i], reconfig);
      round_end = std::max(round_end, t.end());
      s.tasks.push_back(std::move(t));
    }
    clock = round_end;
    k += m;
  }
  s.finalize();
  return s;
}

Schedule fixpart_schedule(const std::vector<Task>& tasks, const GpuModel& model, const std::vector<Instance>& partition) {
  auto sorted = partition;
  std::sort(sorted.begin(), sorted.end());
  const auto all = enumerate_partitions(model);
  if (std::find(all.begin(), all.end(), sorted) == all.end()) throw Error("invalid partition for " + model.name());

  Schedule s(model);
  s.zero_reconfig = true;
  for (const auto& inst : sorted) {
    const int node = *model.host_node(inst);
    s.reconfigs.push_back({ReconfigKind::create, node, model.node(node).instance, 0.0, 0.0});
  }
  std::vector<double> free_at(sorted.size(), 0.0);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    // Sorted by start slice, so the first minimum is the lowest slice.
    const auto slot = static_cast<std::size_t>(std::min_element(free_at.begin(), free_at.end()) - free_at.begin());
    auto t = run_on(model, tasks[i], static_cast<int>(i), sorted[slot], free_at[slot]);
    free_at[slot] = t.end();
    s.tasks.push_back(std::move(t));
  }
  s.finalize();
  return s;
}

std::pair<std::vector<Instance>, Schedule> fixpart_best(const std::vector<Task>& tasks, const GpuModel& model) {
  std::optional<std::pair<std::vector<Instance>, Schedule>> best;
  for (const auto& p : enumerate_partitions(model)) {
    auto s = fixpart_schedule(tasks, model, p);
    if (!best || s.makespan < best->second.makespan) best.emplace(p, std::move(s));
  }
  return std::move(*best);
}

std::vector<Instance> uniform_partition(const GpuModel& model, int size) {
  std::vector<Instance> part;
  for (int id = 0; id < model.num_nodes(); ++id)
    if (model.node(id).instance.size == size) part.push_back(model.node(id).instance);
  int covered = 0;
  for (const auto& i : part) covered += i.size;
  if (part.empty() || covered != model.num_slices())
    throw Error("no partition of " + model.name() + " uses only size " + std::to_string(size));
  std::sort(part.begin(), part.end());
  return part;
}

std::vector<Instance> partition_from_sizes(const GpuModel& model, const std::vector<int>& sizes) {
  for (const auto& p : enumerate_partitions(model)) {
    if (p.size() != sizes.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < p.size(); ++i) match = match && p[i].size == sizes[i];
    if (match) return p;
  }
  throw Error("invalid partition for " + model.name());
}

}  // namespace migsched
