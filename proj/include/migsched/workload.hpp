#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "migsched/gpu_model.hpp"

namespace migsched {

/// A task profile: execution time per instance size. `times` is indexed by
/// size; entries for sizes outside the model are 0.
struct Task {
  std::string id;
  std::vector<double> times;

  double time(int size) const { return times.at(static_cast<std::size_t>(size)); }
  double work(int size) const { return size * time(size); }
  double speedup(int size) const { return time(1) / time(size); }
};

Task make_task(std::string id, const std::map<int, double>& times);

struct SyntheticConfig {
  int n = 10;
  /// Share of tasks (percent) that scale well up to each size.
  std::map<int, double> p;
  /// Percentage of memory-bound tasks inside each class.
  double p_sup = 50.0;
  double t_min = 1.0;
  double t_max = 100.0;
  /// Per-step probability that a memory-bound task turns compute-bound.
  double transition_prob = 0.3;
  std::uint64_t seed = 0;
};

/// Splits n tasks over sizes by floor and largest-deficit top-up
/// (ties to the smaller size).
std::map<int, int> size_counts(int n, const std::map<int, double>& p, const std::vector<int>& sizes);

std::vector<Task> generate_synthetic(const SyntheticConfig& cfg, const GpuModel& model);
/// Same, drawing from a caller-owned engine.
std::vector<Task> generate_synthetic(const SyntheticConfig& cfg, const GpuModel& model, std::mt19937_64& rng);

/// Validates raw times against the model. Increases up to 2% are clamped.
Task checked_task(std::string id, const std::map<int, double>& times, const GpuModel& model);

std::vector<Task> parse_profile(const nlohmann::json& j, const GpuModel& model);
std::vector<Task> load_profile(const std::string& path, const GpuModel& model);
nlohmann::json profile_to_json(const std::vector<Task>& tasks, const GpuModel& model);

/// Shares for a named scaling configuration (PoorScaling, MixedScaling,
/// GoodScaling) over the model's sizes.
std::map<int, double> scaling_shares(const std::string& name, const GpuModel& model);

/// Deterministic seed for trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace migsched
