#include "migsched/schedule.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace migsched {

void Schedule::finalize() {
  makespan = 0;
  slice_end.assign(static_cast<std::size_t>(model.num_slices()), 0.0);
  for (const auto& t : tasks) {
    makespan = std::max(makespan, t.end());
    for (int s = t.instance.start_slice; s < t.instance.end_slice(); ++s)
      slice_end[static_cast<std::size_t>(s)] = std::max(slice_end[static_cast<std::size_t>(s)], t.end());
  }
}

std::vector<double> Schedule::slice_first_use() const {
  std::vector<double> first(static_cast<std::size_t>(model.num_slices()), std::numeric_limits<double>::infinity());
  for (const auto& t : tasks)
    for (int s = t.instance.start_slice; s < t.instance.end_slice(); ++s)
      first[static_cast<std::size_t>(s)] = std::min(first[static_cast<std::size_t>(s)], t.start);
  return first;
}

double Schedule::reconfig_time() const {
  double total = 0;
  for (const auto& e : reconfigs) total += e.duration;
  return total;
}

const char* to_string(ReconfigKind kind) { return kind == ReconfigKind::create ? "create" : "destroy"; }

nlohmann::json schedule_to_json(const Schedule& s) {
  auto tasks = nlohmann::json::array();
  for (const auto& t : s.tasks)
    tasks.push_back({{"id", t.task_id},
                     {"slice_start", t.instance.start_slice},
                     {"size", t.instance.size},
                     {"size_used", t.size_used},
                     {"start", t.start},
                     {"duration", t.duration}});
  auto events = nlohmann::json::array();
  for (const auto& e : s.reconfigs)
    events.push_back({{"kind", to_string(e.kind)},
                      {"slice_start", e.instance.start_slice},
                      {"size", e.instance.size},
                      {"start", e.start},
                      {"duration", e.duration}});
  nlohmann::json j{{"model", s.model.name()}, {"makespan", s.makespan}, {"tasks", tasks}, {"reconfigs", events}};
  if (s.zero_reconfig) j["zero_reconfig"] = true;
  return j;
}

namespace {

int node_for(const GpuModel& model, int start, int size) {
  auto n = model.find_node({start, size});
  if (!n) throw Error("schedule references unknown instance " + to_string(Instance{start, size}));
  return *n;
}

}  // namespace

Schedule schedule_from_json(const nlohmann::json& j, const GpuModel& model) {
  Schedule s(model);
  try {
    if (j.contains("model") && j.at("model").get<std::string>() != model.name())
      throw Error("schedule is for model " + j.at("model").get<std::string>());
    s.zero_reconfig = j.value("zero_reconfig", false);
    int index = 0;
    for (const auto& jt : j.at("tasks")) {
      ScheduledTask t;
      t.task_id = jt.at("id").get<std::string>();
      t.task_index = index++;
      t.node = node_for(model, jt.at("slice_start").get<int>(), jt.at("size").get<int>());
      t.instance = model.node(t.node).instance;
      t.size_used = jt.value("size_used", t.instance.size);
      t.start = jt.at("start").get<double>();
      t.duration = jt.at("duration").get<double>();
      s.tasks.push_back(std::move(t));
    }
    for (const auto& je : j.at("reconfigs")) {
      ReconfigEvent e;
      const auto kind = je.at("kind").get<std::string>();
      if (kind != "create" && kind != "destroy") throw Error("unknown reconfiguration kind " + kind);
      e.kind = kind == "create" ? ReconfigKind::create : ReconfigKind::destroy;
      e.node = node_for(model, je.at("slice_start").get<int>(), je.at("size").get<int>());
      e.instance = model.node(e.node).instance;
      e.start = je.at("start").get<double>();
      e.duration = je.at("duration").get<double>();
      s.reconfigs.push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed schedule: ") + e.what());
  }
  s.finalize();
  return s;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

Schedule load_schedule(const std::string& path) {
  auto j = load_json(path);
  if (!j.contains("model")) throw Error("schedule file lacks a model name");
  return schedule_from_json(j, resolve_model(j.at("model").get<std::string>()));
}

void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace migsched
