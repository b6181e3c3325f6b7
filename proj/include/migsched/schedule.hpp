#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "migsched/gpu_model.hpp"

namespace migsched {

struct ScheduledTask {
  std::string task_id;
  /// Position in the input task list, or -1 when loaded from a file.
  int task_index = -1;
  /// Tree node the task runs on; `instance` is that node's interval.
  int node = -1;
  Instance instance;
  int size_used = 1;
  double start = 0;
  double duration = 0;

  double end() const { return start + duration; }
};

enum class ReconfigKind { create, destroy };

struct ReconfigEvent {
  ReconfigKind kind = ReconfigKind::create;
  int node = -1;
  Instance instance;
  double start = 0;
  double duration = 0;

  double end() const { return start + duration; }
};

struct Schedule {
  explicit Schedule(GpuModel m) : model(std::move(m)) {}

  GpuModel model;
  std::vector<ScheduledTask> tasks;
  /// In execution order; reconfigurations are sequential.
  std::vector<ReconfigEvent> reconfigs;
  /// Reconfiguration costs treated as zero.
  bool zero_reconfig = false;
  double makespan = 0;
  std::vector<double> slice_end;

  /// Recomputes makespan and slice_end from the task list.
  void finalize();
  /// Earliest task start touching each slice (+inf when unused).
  std::vector<double> slice_first_use() const;
  double reconfig_time() const;
};

const char* to_string(ReconfigKind kind);

nlohmann::json schedule_to_json(const Schedule& s);
/// Tasks must name a tree node interval; an unknown interval is an error.
Schedule schedule_from_json(const nlohmann::json& j, const GpuModel& model);
Schedule load_schedule(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace migsched
