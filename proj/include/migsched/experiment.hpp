#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "migsched/metrics.hpp"
#include "migsched/workload.hpp"

namespace migsched {

/// A workload family: scaling shares plus a t(1) range.
struct WorkloadConfig {
  std::string scaling = "MixedScaling";
  std::string times = "WideTimes";
  double p_sup = 50.0;

  std::string label() const { return scaling + "/" + times; }
};

/// Time range for "WideTimes" ([1, 100]) or "NarrowTimes" ([90, 100]).
std::pair<double, double> time_range(const std::string& name);

SyntheticConfig synthetic_config(const WorkloadConfig& w, int n, const GpuModel& model, std::uint64_t seed);

struct ExperimentSpec {
  /// table4 ... table9, or "custom".
  std::string grid = "table4";
  std::string model = "A100";
  int trials = 1000;
  std::uint64_t seed = 7;
  /// Memory-bound share used by every named-grid workload.
  double p_sup = 50.0;
  /// Custom grids only: what to measure (rho, sigma, refine, concat,
  /// multibatch), for which workloads and batch sizes.
  std::string measure = "rho";
  std::vector<WorkloadConfig> configs;
  std::vector<int> ns;
};

/// Fills configs, sizes and measure for a named table grid. Throws Error
/// for an unknown grid.
ExperimentSpec named_grid(const std::string& grid, int trials, std::uint64_t seed, double p_sup = 50.0);

/// Runs every (config, n) cell. Trial t of cell c draws its workload from
/// derive_seed(derive_seed(seed, c), t), so results do not depend on
/// evaluation order.
std::vector<MetricRow> run_experiment(const ExperimentSpec& spec);

}  // namespace migsched
