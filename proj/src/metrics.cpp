#include "migsched/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>

#include "migsched/gpu_model.hpp"

namespace migsched {

namespace {

double checked_ratio(double num, double den) {
  if (!(den > 0)) throw Error("division by zero in metric (empty workload?)");
  return num / den;
}

}  // namespace

double rho(double makespan, double baseline) { return checked_ratio(makespan, baseline); }
double sigma(double makespan, double far_makespan) { return checked_ratio(makespan, far_makespan); }
double improvement_pct(double worse, double better) { return (checked_ratio(worse, better) - 1.0) * 100.0; }
double p_multibatch(double makespan, double baseline) { return (checked_ratio(makespan, baseline) - 1.0) * 100.0; }

MetricRow summarize(std::string metric, std::string config, int n, const std::vector<double>& values) {
  if (values.empty()) throw Error("no values to summarize for " + metric);
  const double count = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(var / (count - 1)) : 0.0;
  return {std::move(metric), std::move(config), n, static_cast<int>(values.size()), mean, sd};
}

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << "metric,config,n,trials,mean,stddev\n";
  out << std::setprecision(6) << std::fixed;
  for (const auto& r : rows)
    out << r.metric << ',' << r.config << ',' << r.n << ',' << r.trials << ',' << r.mean << ',' << r.stddev << '\n';
}

nlohmann::json rows_to_json(const std::vector<MetricRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"metric", r.metric},
                   {"config", r.config},
                   {"n", r.n},
                   {"trials", r.trials},
                   {"mean", r.mean},
                   {"stddev", r.stddev}});
  return arr;
}

}  // namespace migsched
