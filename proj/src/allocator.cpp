#include "migsched/allocator.hpp"

namespace migsched {

int min_work_size(const Task& task, const GpuModel& model, int above) {
  int best = 0;
  double best_work = 0;
  for (int s : model.sizes()) {
    if (s <= above) continue;
    double w = task.work(s);
    if (best == 0 || w < best_work) {
      best = s;
      best_work = w;
    }
  }
  return best;
}

AllocationFamily allocation_family(const std::vector<Task>& tasks, const GpuModel& model) {
  AllocationFamily family;
  if (tasks.empty()) return family;
  Allocation a(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) a[i] = min_work_size(tasks[i], model);
  const int top = model.max_size();
  while (true) {
    family.allocations.push_back(a);
    std::size_t longest = 0;
    for (std::size_t i = 1; i < tasks.size(); ++i)
      if (tasks[i].time(a[i]) > tasks[longest].time(a[longest])) longest = i;
    if (a[longest] == top) break;
    a[longest] = min_work_size(tasks[longest], model, a[longest]);
  }
  return family;
}

}  // namespace migsched
