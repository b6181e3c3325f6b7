#include "migsched/refine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "migsched/core_sched.hpp"

namespace migsched {

namespace {

constexpr double kEps = 1e-9;

int priority(const GpuModel& model, int node, int size_used) {
  const auto& hosted = model.node(node).hosted_sizes;
  auto it = std::find(hosted.begin(), hosted.end(), size_used);
  return static_cast<int>(it - hosted.begin());
}

bool hosts(const GpuModel& model, int node, int size_used) {
  const auto& hosted = model.node(node).hosted_sizes;
  return std::find(hosted.begin(), hosted.end(), size_used) != hosted.end();
}

void insert_sorted(const GpuModel& model, int node, std::vector<NodeTask>& list, NodeTask task) {
  const int p = priority(model, node, task.size_used);
  auto pos = std::find_if(list.begin(), list.end(), [&](const NodeTask& t) {
    const int q = priority(model, node, t.size_used);
    return q > p || (q == p && t.duration < task.duration);
  });
  list.insert(pos, std::move(task));
}

}  // namespace

void sort_node_list(const GpuModel& model, int node, std::vector<NodeTask>& list) {
  std::stable_sort(list.begin(), list.end(), [&](const NodeTask& a, const NodeTask& b) {
    const int pa = priority(model, node, a.size_used);
    const int pb = priority(model, node, b.size_used);
    if (pa != pb) return pa < pb;
    return a.duration > b.duration;
  });
}

std::pair<int, int> refine_lists(const GpuModel& model, NodeLists& lists, std::vector<double>& ends,
                                 const std::vector<double>& base, const RefineOptions& opts) {
  int moves = 0;
  int swaps = 0;
  const int slices = model.num_slices();
  auto level = [&](int s) { return base[static_cast<std::size_t>(s)] + ends[static_cast<std::size_t>(s)]; };
  auto node_end = [&](int id) {
    const auto& inst = model.node(id).instance;
    double e = -std::numeric_limits<double>::infinity();
    for (int s = inst.start_slice; s < inst.end_slice(); ++s) e = std::max(e, level(s));
    return e;
  };
  auto shift = [&](int id, double d) {
    const auto& inst = model.node(id).instance;
    for (int s = inst.start_slice; s < inst.end_slice(); ++s) ends[static_cast<std::size_t>(s)] += d;
  };
  auto list_of = [&](int id) -> std::vector<NodeTask>& { return lists[static_cast<std::size_t>(id)]; };

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double omega = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < slices; ++s) omega = std::max(omega, level(s));

    std::deque<int> queue;
    std::vector<bool> queued(static_cast<std::size_t>(model.num_nodes()), false);
    for (int s = 0; s < slices; ++s) {
      if (level(s) < omega - kEps) continue;
      const int leaf = model.leaf_of_slice(s);
      if (!queued[static_cast<std::size_t>(leaf)]) {
        queued[static_cast<std::size_t>(leaf)] = true;
        queue.push_back(leaf);
      }
    }

    bool stop = false;
    bool changed = false;
    while (!queue.empty()) {
      const int id = queue.front();
      queue.pop_front();
      if (id == model.root()) {
        stop = true;
        break;
      }
      if (node_end(id) < omega - kEps) continue;

      const int size = model.node(id).instance.size;
      int alt = -1;
      double alt_end = 0;
      for (int other : model.nodes_of_size(size)) {
        if (other == id || list_of(other).empty()) continue;
        const double e = node_end(other);
        if (alt == -1 || e < alt_end) {
          alt = other;
          alt_end = e;
        }
      }

      bool done = false;
      if (alt != -1) {
        const double margin = omega - alt_end;
        const double half = margin / 2;
        auto& mine = list_of(id);
        auto& theirs = list_of(alt);

        // Move: shortest distance to half the margin, longer task on ties.
        int pick = -1;
        for (int i = 0; i < static_cast<int>(mine.size()); ++i) {
          const auto& t = mine[static_cast<std::size_t>(i)];
          if (!(t.duration < margin - kEps) || !hosts(model, alt, t.size_used)) continue;
          if (pick == -1) {
            pick = i;
            continue;
          }
          const auto& b = mine[static_cast<std::size_t>(pick)];
          const double dt = std::abs(t.duration - half);
          const double db = std::abs(b.duration - half);
          if (dt < db - 1e-12 || (std::abs(dt - db) <= 1e-12 && t.duration > b.duration)) pick = i;
        }
        if (pick != -1) {
          NodeTask t = mine[static_cast<std::size_t>(pick)];
          mine.erase(mine.begin() + pick);
          shift(id, -t.duration);
          shift(alt, t.duration);
          insert_sorted(model, alt, theirs, std::move(t));
          ++moves;
          done = true;
        } else {
          // Swap: T_k from this node, T_j from the alternative, with
          // 0 < T_k - T_j < margin and the gap nearest half the margin.
          std::vector<std::pair<double, int>> sorted;
          for (int j = 0; j < static_cast<int>(theirs.size()); ++j)
            sorted.emplace_back(theirs[static_cast<std::size_t>(j)].duration, j);
          std::sort(sorted.begin(), sorted.end());
          int bk = -1, bj = -1;
          double best_gap = 0;
          for (int k = 0; k < static_cast<int>(mine.size()); ++k) {
            const auto& tk = mine[static_cast<std::size_t>(k)];
            if (!hosts(model, alt, tk.size_used)) continue;
            const double want = tk.duration - half;
            auto it = std::lower_bound(sorted.begin(), sorted.end(), std::make_pair(want, -1));
            // Check the neighbours around the ideal partner.
            for (auto cand : {it, it == sorted.begin() ? sorted.end() : std::prev(it)}) {
              if (cand == sorted.end()) continue;
              const auto& tj = theirs[static_cast<std::size_t>(cand->second)];
              if (!hosts(model, id, tj.size_used)) continue;
              const double diff = tk.duration - tj.duration;
              if (!(diff > kEps && diff < margin - kEps)) continue;
              const double gap = std::abs(diff - half);
              bool better = bk == -1 || gap < best_gap - 1e-12;
              if (!better && std::abs(gap - best_gap) <= 1e-12 && tk.task_index < mine[static_cast<std::size_t>(bk)].task_index)
                better = true;
              if (better) {
                bk = k;
                bj = cand->second;
                best_gap = gap;
              }
            }
          }
          if (bk != -1) {
            NodeTask tk = mine[static_cast<std::size_t>(bk)];
            NodeTask tj = theirs[static_cast<std::size_t>(bj)];
            const double diff = tk.duration - tj.duration;
            mine.erase(mine.begin() + bk);
            theirs.erase(theirs.begin() + bj);
            insert_sorted(model, alt, theirs, std::move(tk));
            insert_sorted(model, id, mine, std::move(tj));
            shift(id, -diff);
            shift(alt, diff);
            ++swaps;
            done = true;
          }
        }
      }
      if (done) {
        changed = true;
        continue;
      }
      const int parent = model.node(id).parent;
      if (parent != -1 && !queued[static_cast<std::size_t>(parent)]) {
        queued[static_cast<std::size_t>(parent)] = true;
        queue.push_back(parent);
      }
    }

    if (stop || !changed) break;
    double next = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < slices; ++s) next = std::max(next, level(s));
    if (omega - next < opts.min_improvement * std::abs(omega)) break;
  }
  return {moves, swaps};
}

std::pair<Schedule, RefineReport> refine(const Schedule& schedule, const RefineOptions& opts) {
  if (opts.max_iterations < 0) throw Error("max_iterations must be non-negative");
  if (opts.min_improvement < 0 || opts.min_improvement >= 1) throw Error("min_improvement must lie in [0, 1)");
  RefineReport report{0, 0, schedule.makespan, schedule.makespan};
  if (schedule.tasks.empty() || opts.max_iterations == 0) return {schedule, report};

  const auto& model = schedule.model;
  NodeLists lists = node_lists_of(schedule);
  for (int id = 0; id < model.num_nodes(); ++id) sort_node_list(model, id, lists[static_cast<std::size_t>(id)]);
  std::vector<double> ends = schedule.slice_end;
  const std::vector<double> base(ends.size(), 0.0);
  auto [moves, swaps] = refine_lists(model, lists, ends, base, opts);
  if (moves + swaps == 0) return {schedule, report};

  Schedule rebuilt = replay_node_lists(model, lists, schedule.zero_reconfig);
  if (!(rebuilt.makespan < schedule.makespan - 1e-12)) return {schedule, report};
  report.moves = moves;
  report.swaps = swaps;
  report.makespan_after = rebuilt.makespan;
  return {std::move(rebuilt), report};
}

}  // namespace migsched
