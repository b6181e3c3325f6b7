#include "migsched/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace migsched {

namespace {

std::string describe(const ScheduledTask& t) {
  std::ostringstream os;
  os << "task " << t.task_id << " on " << to_string(t.instance) << " [" << t.start << ", " << t.end() << ")";
  return os.str();
}

struct Window {
  double from;
  double to;
};

}  // namespace

ValidationReport validate(const Schedule& schedule, double tol) {
  ValidationReport report;
  const auto& model = schedule.model;
  auto flag = [&](int c, double time, std::string detail) {
    report.violations.push_back({c, time, std::move(detail)});
  };

  const auto& tasks = schedule.tasks;
  for (const auto& t : tasks) {
    if (t.node < 0 || t.node >= model.num_nodes() || model.node(t.node).instance != t.instance) {
      flag(2, t.start, describe(t) + " is not a node of the repartitioning tree");
      continue;
    }
    const auto& hosted = model.node(t.node).hosted_sizes;
    if (std::find(hosted.begin(), hosted.end(), t.size_used) == hosted.end())
      flag(2, t.start, describe(t) + " uses size " + std::to_string(t.size_used) + " not hosted there");
    if (t.start < -tol) flag(1, t.start, describe(t) + " starts before time 0");
    if (!(t.duration >= 0)) flag(1, t.start, describe(t) + " has a negative duration");
  }
  if (!report.violations.empty()) {
    report.ok = false;
    return report;
  }

  // Constraint 1: per-slice interval overlap.
  std::vector<std::vector<const ScheduledTask*>> by_slice(static_cast<std::size_t>(model.num_slices()));
  for (const auto& t : tasks)
    for (int s = t.instance.start_slice; s < t.instance.end_slice(); ++s)
      by_slice[static_cast<std::size_t>(s)].push_back(&t);
  for (std::size_t s = 0; s < by_slice.size(); ++s) {
    auto& lane = by_slice[s];
    std::sort(lane.begin(), lane.end(), [](auto* a, auto* b) { return a->start < b->start; });
    double reach = -1;
    const ScheduledTask* holder = nullptr;
    for (const auto* t : lane) {
      if (holder && t->start < reach - tol && t->duration > tol)
        flag(1, t->start, describe(*t) + " overlaps " + describe(*holder) + " on slice " + std::to_string(s));
      if (t->end() > reach) {
        reach = t->end();
        holder = t;
      }
    }
  }

  // Constraint 2: the instances running at each task start form a valid set.
  std::vector<const ScheduledTask*> order;
  for (const auto& t : tasks) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->start < b->start; });
  std::vector<const ScheduledTask*> running;
  for (const auto* t : order) {
    std::erase_if(running, [&](const ScheduledTask* r) { return r->end() <= t->start + tol; });
    for (const auto* r : running) {
      if (r->node != t->node && r->instance.overlaps(t->instance))
        flag(2, t->start, describe(*t) + " shares slices with running " + describe(*r));
    }
    running.push_back(t);
  }

  // Constraint 3: sequential events with tabulated durations and a
  // consistent instance lifecycle.
  std::vector<bool> alive(static_cast<std::size_t>(model.num_nodes()), false);
  std::vector<double> born(static_cast<std::size_t>(model.num_nodes()), 0.0);
  std::vector<std::vector<Window>> windows(static_cast<std::size_t>(model.num_nodes()));
  double last_end = 0;
  for (const auto& e : schedule.reconfigs) {
    const std::string what = std::string(to_string(e.kind)) + " of " + to_string(e.instance);
    if (e.node < 0 || e.node >= model.num_nodes() || model.node(e.node).instance != e.instance) {
      flag(3, e.start, what + " names no tree node");
      continue;
    }
    const std::size_t id = static_cast<std::size_t>(e.node);
    if (e.start < last_end - tol) flag(3, e.start, what + " overlaps the previous reconfiguration");
    last_end = std::max(last_end, e.end());
    const int size = e.instance.size;
    const double expected = schedule.zero_reconfig
                                ? 0.0
                                : (e.kind == ReconfigKind::create ? model.create_cost(size) : model.destroy_cost(size));
    if (std::abs(e.duration - expected) > tol) {
      std::ostringstream os;
      os << what << " lasts " << e.duration << " s instead of " << expected << " s";
      flag(3, e.start, os.str());
    }
    if (e.kind == ReconfigKind::create) {
      if (alive[id]) flag(3, e.start, what + " while the instance already exists");
      for (int other = 0; other < model.num_nodes(); ++other)
        if (alive[static_cast<std::size_t>(other)] && other != e.node &&
            model.node(other).instance.overlaps(e.instance))
          flag(3, e.start, what + " while " + to_string(model.node(other).instance) + " still exists");
      alive[id] = true;
      born[id] = e.end();
    } else {
      if (!alive[id]) {
        flag(3, e.start, what + " of an instance that does not exist");
        continue;
      }
      alive[id] = false;
      windows[id].push_back({born[id], e.start});
    }
  }
  for (std::size_t id = 0; id < alive.size(); ++id)
    if (alive[id]) windows[id].push_back({born[id], std::numeric_limits<double>::infinity()});

  for (const auto& t : tasks) {
    const auto& ws = windows[static_cast<std::size_t>(t.node)];
    const bool inside = std::any_of(ws.begin(), ws.end(), [&](const Window& w) {
      return t.start >= w.from - tol && t.end() <= w.to + tol;
    });
    if (!inside) flag(3, t.start, describe(*&t) + " runs outside the lifetime of its instance");
  }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.time < b.time; });
  report.ok = report.violations.empty();
  return report;
}

}  // namespace migsched
