#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace migsched {

struct MetricRow {
  std::string metric;
  std::string config;
  int n = 0;
  int trials = 0;
  double mean = 0;
  double stddev = 0;
};

/// Makespan over the area lower bound.
double rho(double makespan, double baseline);
/// Makespan of a scheduler relative to FAR.
double sigma(double makespan, double far_makespan);
/// Percentage gained by the improved variant: (worse / better - 1) * 100.
/// Serves p_ref, p_rev and p_move_swap.
double improvement_pct(double worse, double better);
/// (makespan / baseline - 1) * 100.
double p_multibatch(double makespan, double baseline);

/// Mean and sample standard deviation (0 for a single value).
MetricRow summarize(std::string metric, std::string config, int n, const std::vector<double>& values);

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows);
nlohmann::json rows_to_json(const std::vector<MetricRow>& rows);

}  // namespace migsched
