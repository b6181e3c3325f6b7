#include "migsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "migsched/core_sched.hpp"
#include "migsched/timeline.hpp"

namespace migsched {

double lower_bound(const std::vector<Task>& tasks, const GpuModel& model) {
  double area = 0;
  for (const auto& t : tasks) {
    double best = std::numeric_limits<double>::infinity();
    for (int s : model.sizes()) best = std::min(best, t.work(s));
    area += best;
  }
  return area / model.num_slices();
}

double lower_bound_multibatch(const std::vector<std::vector<Task>>& batches, const GpuModel& model) {
  double total = 0;
  for (const auto& b : batches) total += lower_bound(b, model);
  return total;
}

namespace {

// A placement choice: catalog instance with the node it occupies.
struct Slot {
  int node;
  int size;
  int lo;
  int hi;
};

// Depth-first search over start-ordered placements. Every schedule can be
// left-shifted into one where each task, taken in start order, begins at
// the later of the previous start and the moment its slices free up, so
// only such placements are enumerated.
class Search {
 public:
  Search(const std::vector<Task>& tasks, const GpuModel& model, double upper)
      : tasks_(tasks), model_(model), best_(upper) {
    const int slices = model.num_slices();
    for (std::size_t c = 0; c < model.catalog().size(); ++c) {
      const auto& inst = model.catalog()[c];
      const int node = *model.host_node(inst);
      const auto& fp = model.node(node).instance;
      // A variant sharing its host's footprint is never faster than the host.
      if (inst.size != fp.size) continue;
      slots_.push_back({node, inst.size, fp.start_slice, fp.end_slice()});
    }
    min_work_.resize(tasks.size());
    min_time_.resize(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      min_work_[i] = std::numeric_limits<double>::infinity();
      min_time_[i] = std::numeric_limits<double>::infinity();
      for (const auto& sl : slots_) {
        min_work_[i] = std::min(min_work_[i], tasks[i].work(sl.size));
        min_time_[i] = std::min(min_time_[i], tasks[i].time(sl.size));
      }
    }
    free_.assign(static_cast<std::size_t>(slices), 0.0);
    current_.resize(tasks.size());
  }

  void run() { dfs(0, 0.0, -1, 0.0); }

  double best() const { return best_; }
  bool found() const { return found_; }
  const std::vector<PlannedTask>& plan() const { return plan_; }
  std::uint64_t explored() const { return explored_; }

 private:
  double bound(std::uint32_t done, double last_start, double makespan) const {
    double work = 0;
    double longest = 0;
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      if (done & (1u << i)) continue;
      work += min_work_[i];
      longest = std::max(longest, min_time_[i]);
    }
    if (work == 0) return makespan;
    // Water-fill the remaining area above each slice's usable start.
    std::vector<double> level(free_.size());
    for (std::size_t s = 0; s < free_.size(); ++s) level[s] = std::max(free_[s], last_start);
    std::sort(level.begin(), level.end());
    double h = level[0];
    double left = work;
    std::size_t k = 1;
    while (true) {
      const double next = k < level.size() ? level[k] : std::numeric_limits<double>::infinity();
      const double need = (next - h) * static_cast<double>(k);
      if (need >= left) {
        h += left / static_cast<double>(k);
        break;
      }
      left -= need;
      h = next;
      ++k;
    }
    return std::max({makespan, h, last_start + longest});
  }

  void dfs(std::uint32_t done, double last_start, int last_task, double makespan) {
    ++explored_;
    const std::size_t n = tasks_.size();
    if (done == (1u << n) - 1) {
      if (makespan < best_ - 1e-12) {
        best_ = makespan;
        found_ = true;
        plan_ = current_;
      }
      return;
    }
    if (bound(done, last_start, makespan) >= best_ - 1e-12) return;

    struct Move {
      double start;
      double end;
      std::size_t task;
      std::size_t slot;
    };
    std::vector<Move> moves;
    for (std::size_t i = 0; i < n; ++i) {
      if (done & (1u << i)) continue;
      for (std::size_t c = 0; c < slots_.size(); ++c) {
        const auto& sl = slots_[c];
        double start = last_start;
        for (int s = sl.lo; s < sl.hi; ++s) start = std::max(start, free_[static_cast<std::size_t>(s)]);
        // Equal starts are enumerated in task order only.
        if (start == last_start && static_cast<int>(i) < last_task) continue;
        const double end = start + tasks_[i].time(sl.size);
        if (end >= best_ - 1e-12) continue;
        moves.push_back({start, end, i, c});
      }
    }
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
      if (a.end != b.end) return a.end < b.end;
      if (a.start != b.start) return a.start < b.start;
      if (a.task != b.task) return a.task < b.task;
      return a.slot < b.slot;
    });
    std::vector<double> saved(free_);
    for (const auto& m : moves) {
      if (m.end >= best_ - 1e-12) continue;
      const auto& sl = slots_[m.slot];
      for (int s = sl.lo; s < sl.hi; ++s) free_[static_cast<std::size_t>(s)] = m.end;
      const auto& task = tasks_[m.task];
      current_[m.task] = {task.id, static_cast<int>(m.task), sl.node, sl.size, task.time(sl.size), m.start};
      dfs(done | (1u << m.task), m.start, static_cast<int>(m.task), std::max(makespan, m.end));
      free_ = saved;
    }
  }

  const std::vector<Task>& tasks_;
  const GpuModel& model_;
  std::vector<Slot> slots_;
  std::vector<double> min_work_;
  std::vector<double> min_time_;
  std::vector<double> free_;
  std::vector<PlannedTask> current_;
  std::vector<PlannedTask> plan_;
  double best_;
  bool found_ = false;
  std::uint64_t explored_ = 0;
};

}  // namespace

OracleResult brute_force_optimal(const std::vector<Task>& tasks, const GpuModel& model, const OracleOptions& opts) {
  if (!opts.zero_reconfig) throw Error("oracle supports only zero reconfiguration cost");
  if (static_cast<int>(tasks.size()) > opts.max_n || tasks.size() > 31) throw Error("instance too large for oracle");
  if (tasks.empty()) return {0.0, Schedule(model), 0};

  FarOptions far;
  far.zero_reconfig = true;
  Schedule incumbent = far_schedule(tasks, model, far).schedule;
  Search search(tasks, model, incumbent.makespan);
  search.run();
  if (!search.found()) return {incumbent.makespan, std::move(incumbent), search.explored()};
  Schedule s = realize_schedule(model, search.plan(), true);
  return {s.makespan, std::move(s), search.explored()};
}

}  // namespace migsched
