#include "migsched/experiment.hpp"

#include "migsched/baselines.hpp"
#include "migsched/core_sched.hpp"
#include "migsched/multibatch.hpp"
#include "migsched/oracle.hpp"

namespace migsched {

std::pair<double, double> time_range(const std::string& name) {
  if (name == "WideTimes") return {1.0, 100.0};
  if (name == "NarrowTimes") return {90.0, 100.0};
  throw Error("unknown time range " + name);
}

SyntheticConfig synthetic_config(const WorkloadConfig& w, int n, const GpuModel& model, std::uint64_t seed) {
  SyntheticConfig cfg;
  cfg.n = n;
  cfg.p = scaling_shares(w.scaling, model);
  cfg.p_sup = w.p_sup;
  std::tie(cfg.t_min, cfg.t_max) = time_range(w.times);
  cfg.seed = seed;
  return cfg;
}

namespace {

const std::vector<std::string> kScalings = {"PoorScaling", "MixedScaling", "GoodScaling"};

std::vector<WorkloadConfig> all_configs(double p_sup) {
  std::vector<WorkloadConfig> out;
  for (const auto& s : kScalings)
    for (const char* t : {"NarrowTimes", "WideTimes"}) out.push_back({s, t, p_sup});
  return out;
}

std::vector<WorkloadConfig> wide_configs(double p_sup) {
  std::vector<WorkloadConfig> out;
  for (const auto& s : kScalings) out.push_back({s, "WideTimes", p_sup});
  return out;
}

// FNV-1a, so cell seeds stay fixed across platforms.
std::uint64_t cell_key(const std::string& label, int n) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : label + "#" + std::to_string(n)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<Task> draw(const WorkloadConfig& w, int n, const GpuModel& model, std::uint64_t seed) {
  return generate_synthetic(synthetic_config(w, n, model, seed), model);
}

}  // namespace

ExperimentSpec named_grid(const std::string& grid, int trials, std::uint64_t seed, double p_sup) {
  ExperimentSpec spec;
  spec.grid = grid;
  spec.trials = trials;
  spec.seed = seed;
  spec.model = "A100";
  spec.p_sup = p_sup;
  if (grid == "table4") {
    spec.measure = "rho";
    spec.configs = wide_configs(p_sup);
    spec.ns = {10, 15, 20, 25, 30, 35};
  } else if (grid == "table5") {
    spec.measure = "sigma";
    spec.configs = all_configs(p_sup);
    spec.ns = {15};
  } else if (grid == "table6") {
    spec.measure = "refine";
    spec.configs = all_configs(p_sup);
    spec.ns = {10, 20, 30};
  } else if (grid == "table7" || grid == "table8") {
    spec.measure = "concat";
    spec.configs = all_configs(p_sup);
    spec.ns = {10, 20, 30};
  } else if (grid == "table9") {
    spec.measure = "multibatch";
    spec.configs = wide_configs(p_sup);
    spec.ns = {10, 15, 20, 25, 30, 35};
  } else {
    throw Error("unknown grid " + grid);
  }
  return spec;
}

std::vector<MetricRow> run_experiment(const ExperimentSpec& in) {
  ExperimentSpec spec = in;
  if (spec.grid != "custom") {
    spec = named_grid(in.grid, in.trials, in.seed, in.p_sup);
    spec.model = in.model;
  }
  if (spec.trials < 1) throw Error("trials must be at least 1");
  const GpuModel model = resolve_model(spec.model);
  std::vector<MetricRow> rows;

  for (const auto& w : spec.configs) {
    for (int n : spec.ns) {
      const std::string label = w.label();
      const std::uint64_t cell = derive_seed(spec.seed, cell_key(label, n));
      auto seed_of = [&](int t) { return derive_seed(cell, static_cast<std::uint64_t>(t)); };

      if (spec.measure == "rho") {
        std::vector<double> v;
        for (int t = 0; t < spec.trials; ++t) {
          auto tasks = draw(w, n, model, seed_of(t));
          v.push_back(rho(far_schedule(tasks, model).schedule.makespan, lower_bound(tasks, model)));
        }
        rows.push_back(summarize("rho", label, n, v));
      } else if (spec.measure == "sigma") {
        std::vector<double> miso, fix1, best, fix7;
        const auto ones = uniform_partition(model, 1);
        const auto whole = uniform_partition(model, model.max_size());
        for (int t = 0; t < spec.trials; ++t) {
          auto tasks = draw(w, n, model, seed_of(t));
          const double far = far_schedule(tasks, model).schedule.makespan;
          miso.push_back(sigma(miso_schedule(tasks, model).makespan, far));
          fix1.push_back(sigma(fixpart_schedule(tasks, model, ones).makespan, far));
          best.push_back(sigma(fixpart_best(tasks, model).second.makespan, far));
          fix7.push_back(sigma(fixpart_schedule(tasks, model, whole).makespan, far));
        }
        rows.push_back(summarize("sigma_MISO", label, n, miso));
        rows.push_back(summarize("sigma_FixPart(1..1)", label, n, fix1));
        rows.push_back(summarize("sigma_FixPartBest", label, n, best));
        rows.push_back(summarize("sigma_FixPart(" + std::to_string(model.max_size()) + ")", label, n, fix7));
      } else if (spec.measure == "refine") {
        std::vector<double> pref, moves, swaps;
        for (int t = 0; t < spec.trials; ++t) {
          auto tasks = draw(w, n, model, seed_of(t));
          auto r = far_schedule(tasks, model);
          pref.push_back(improvement_pct(r.unrefined_makespan, r.schedule.makespan));
          moves.push_back(r.refine_report.moves);
          swaps.push_back(r.refine_report.swaps);
        }
        rows.push_back(summarize("p_ref", label, n, pref));
        rows.push_back(summarize("moves", label, n, moves));
        rows.push_back(summarize("swaps", label, n, swaps));
      } else if (spec.measure == "concat" || spec.measure == "multibatch") {
        std::vector<std::vector<Task>> batches;
        for (int t = 0; t <= spec.trials; ++t) batches.push_back(draw(w, n, model, seed_of(t)));
        auto [plan, result] = run_stream(batches, model);
        if (spec.measure == "multibatch") {
          rows.push_back(summarize("p_multibatch", label, n, {result.p_multibatch}));
          rows.back().trials = static_cast<int>(batches.size());
          continue;
        }
        std::vector<double> prev, pms, moves, swaps;
        for (const auto& s : result.seams) {
          prev.push_back(improvement_pct(s.trivial_makespan, s.overlap_makespan));
          pms.push_back(improvement_pct(s.trivial_makespan, s.final_makespan));
          moves.push_back(s.moves);
          swaps.push_back(s.swaps);
        }
        rows.push_back(summarize("p_rev", label, n, prev));
        rows.push_back(summarize("p_move_swap", label, n, pms));
        rows.push_back(summarize("moves", label, n, moves));
        rows.push_back(summarize("swaps", label, n, swaps));
      } else {
        throw Error("unknown measure " + spec.measure);
      }
    }
  }
  return rows;
}

}  // namespace migsched
