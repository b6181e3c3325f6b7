// Command-line front end. The default GPU model comes from MIGSCHED_MODEL
// (falling back to A100); --model overrides it.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "migsched/allocator.hpp"
#include "migsched/baselines.hpp"
#include "migsched/core_sched.hpp"
#include "migsched/experiment.hpp"
#include "migsched/gantt.hpp"
#include "migsched/multibatch.hpp"
#include "migsched/oracle.hpp"
#include "migsched/refine.hpp"
#include "migsched/validate.hpp"

namespace fs = std::filesystem;
using namespace migsched;

namespace {

std::string default_model() {
  const char* env = std::getenv("MIGSCHED_MODEL");
  return env && *env ? env : "A100";
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void emit_json(const nlohmann::json& j, const std::string& path) { emit(j.dump(2) + "\n", path); }

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

nlohmann::json refine_report_json(const RefineReport& r) {
  return {{"moves", r.moves}, {"swaps", r.swaps}, {"makespan_before", r.makespan_before},
          {"makespan_after", r.makespan_after}};
}

Schedule read_schedule(const std::string& path, const std::string& model_name) {
  auto j = load_json(path);
  const std::string name = model_name.empty() ? j.value("model", default_model()) : model_name;
  return schedule_from_json(j, resolve_model(name));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moldable batch scheduler for MIG-partitioned GPUs"};
  app.require_subcommand(1);
  std::string model_name;
  app.add_option("--model", model_name, "GPU model name or model JSON file (default $MIGSCHED_MODEL or A100)");

  // schedule
  std::string profile, out, report_path;
  bool no_refine = false, zero_reconfig = false;
  RefineOptions ropts;
  auto* sched = app.add_subcommand("schedule", "Schedule a task profile with FAR");
  sched->add_option("--profile", profile, "Task profile JSON")->required();
  sched->add_flag("--no-refine", no_refine, "Skip the move/swap phase");
  sched->add_flag("--zero-reconfig", zero_reconfig, "Treat reconfiguration as free");
  sched->add_option("--max-iterations", ropts.max_iterations);
  sched->add_option("--min-improvement", ropts.min_improvement);
  sched->add_option("--out", out, "Schedule JSON (stdout when omitted)");
  sched->add_option("--report", report_path, "Family and refinement report JSON");

  auto* fam = app.add_subcommand("family", "Print the allocation family and each member's makespan");
  fam->add_option("--profile", profile)->required();
  fam->add_flag("--zero-reconfig", zero_reconfig);
  fam->add_option("--out", out);

  std::string in_path;
  auto* ref = app.add_subcommand("refine", "Run move/swap refinement on a schedule");
  ref->add_option("--in", in_path)->required();
  ref->add_option("--out", out);
  ref->add_option("--report", report_path);
  ref->add_option("--max-iterations", ropts.max_iterations);
  ref->add_option("--min-improvement", ropts.min_improvement);

  std::string prev_path, next_path;
  bool reverse_next = false, no_seam = false;
  auto* cat = app.add_subcommand("concat", "Append one schedule after another");
  cat->add_option("--prev", prev_path)->required();
  cat->add_option("--next", next_path)->required();
  cat->add_flag("--reverse-next", reverse_next, "Mirror the next schedule before appending");
  cat->add_flag("--no-seam-moves", no_seam);
  cat->add_option("--out", out);
  cat->add_option("--report", report_path);

  std::vector<std::string> batch_inputs;
  auto* stream = app.add_subcommand("stream", "Schedule and concatenate a sequence of batches");
  stream->add_option("--batches", batch_inputs, "Directory of profiles (sorted by name) or a list of files")
      ->required();
  stream->add_flag("--no-refine", no_refine);
  stream->add_flag("--no-seam-moves", no_seam);
  stream->add_flag("--zero-reconfig", zero_reconfig);
  stream->add_option("--out", out);

  std::string scheduler = "far", partition;
  auto* cmp = app.add_subcommand("compare", "Run one scheduler and report its makespan against FAR");
  cmp->add_option("--profile", profile)->required();
  cmp->add_option("--scheduler", scheduler)->check(CLI::IsMember({"far", "miso", "fixpart", "fixpart-best"}));
  cmp->add_option("--partition", partition, "Instance sizes for fixpart, e.g. \"2,2\"");
  cmp->add_flag("--zero-reconfig", zero_reconfig);
  cmp->add_option("--out", out);

  int max_n = 6;
  auto* orc = app.add_subcommand("oracle", "Exact optimum for a small profile (no reconfiguration cost)");
  orc->add_option("--profile", profile)->required();
  orc->add_option("--max-n", max_n);
  orc->add_option("--out", out);

  int n = 10;
  std::string shares, scaling, times;
  double psup = 50, tmin = 1, tmax = 100, transition = 0.3;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic task profile");
  gen->add_option("--n", n);
  gen->add_option("--p", shares, "Percent of tasks per size class, comma separated in size order");
  gen->add_option("--scaling", scaling, "PoorScaling, MixedScaling or GoodScaling (instead of --p)");
  gen->add_option("--times", times, "WideTimes or NarrowTimes (instead of --tmin/--tmax)");
  gen->add_option("--psup", psup);
  gen->add_option("--tmin", tmin);
  gen->add_option("--tmax", tmax);
  gen->add_option("--transition", transition);
  gen->add_option("--seed", seed)->required();
  gen->add_option("--out", out);

  auto* val = app.add_subcommand("validate", "Check a schedule against the feasibility constraints");
  val->add_option("--in", in_path)->required();

  std::string format = "svg";
  double px = 10;
  auto* gantt = app.add_subcommand("gantt", "Render a schedule as SVG or text");
  gantt->add_option("--in", in_path)->required();
  gantt->add_option("--format", format)->check(CLI::IsMember({"svg", "text"}));
  gantt->add_option("--px-per-second", px);
  gantt->add_option("--out", out);

  std::string grid = "table4", json_out;
  int trials = 1000;
  auto* exp = app.add_subcommand("experiment", "Run an experiment grid and write CSV");
  exp->add_option("--grid", grid, "table4 .. table9");
  exp->add_option("--trials", trials);
  exp->add_option("--seed", seed)->required();
  exp->add_option("--out", out);
  exp->add_option("--json", json_out, "Also write the rows as JSON");
  exp->add_option("--psup", psup, "Percent of memory-bound tasks in every workload");

  CLI11_PARSE(app, argc, argv);

  try {
    auto model = [&] { return resolve_model(model_name.empty() ? default_model() : model_name); };

    if (sched->parsed()) {
      const auto m = model();
      auto tasks = load_profile(profile, m);
      FarOptions opts;
      opts.refine = !no_refine;
      opts.zero_reconfig = zero_reconfig;
      opts.refine_opts = ropts;
      auto r = far_schedule(tasks, m, opts);
      emit_json(schedule_to_json(r.schedule), out);
      if (!report_path.empty()) {
        emit_json({{"chosen_index", r.chosen_index},
                   {"family_makespans", r.family_makespans},
                   {"baseline", lower_bound(tasks, m)},
                   {"refine", refine_report_json(r.refine_report)}},
                  report_path);
      }
    } else if (fam->parsed()) {
      const auto m = model();
      auto tasks = load_profile(profile, m);
      auto family = allocation_family(tasks, m);
      auto arr = nlohmann::json::array();
      for (const auto& a : family.allocations)
        arr.push_back({{"allocation", a}, {"makespan", schedule_allocation(tasks, a, m, {zero_reconfig}).makespan}});
      emit_json({{"model", m.name()}, {"family", arr}}, out);
    } else if (ref->parsed()) {
      auto s = read_schedule(in_path, model_name);
      auto [refined, report] = refine(s, ropts);
      emit_json(schedule_to_json(refined), out);
      if (!report_path.empty()) emit_json(refine_report_json(report), report_path);
    } else if (cat->parsed()) {
      auto prev = read_schedule(prev_path, model_name);
      auto next = read_schedule(next_path, model_name);
      ConcatOptions opts;
      opts.seam_moves = !no_seam;
      ConcatResult r = reverse_next ? [&] {
        auto mirrored = reverse_schedule(next);
        return concat(prev, mirrored, opts, &next);
      }()
                                    : concat(prev, next, opts);
      emit_json(schedule_to_json(r.combined), out);
      if (!report_path.empty())
        emit_json({{"offset", r.offset},
                   {"trivial_makespan", r.report.trivial_makespan},
                   {"overlap_makespan", r.report.overlap_makespan},
                   {"final_makespan", r.report.final_makespan},
                   {"moves", r.report.moves},
                   {"swaps", r.report.swaps}},
                  report_path);
    } else if (stream->parsed()) {
      const auto m = model();
      std::vector<std::string> files;
      if (batch_inputs.size() == 1 && fs::is_directory(batch_inputs[0])) {
        for (const auto& e : fs::directory_iterator(batch_inputs[0]))
          if (e.path().extension() == ".json") files.push_back(e.path().string());
        std::sort(files.begin(), files.end());
      } else {
        files = batch_inputs;
      }
      std::vector<std::vector<Task>> batches;
      for (const auto& f : files) batches.push_back(load_profile(f, m));
      StreamOptions opts;
      opts.far.refine = !no_refine;
      opts.far.zero_reconfig = zero_reconfig;
      opts.concat.seam_moves = !no_seam;
      auto [plan, result] = run_stream(batches, m, opts);
      emit_json(plan_to_json(plan, result), out);
    } else if (cmp->parsed()) {
      const auto m = model();
      auto tasks = load_profile(profile, m);
      FarOptions fo;
      fo.zero_reconfig = zero_reconfig;
      const double far = far_schedule(tasks, m, fo).schedule.makespan;
      std::optional<Schedule> s;
      nlohmann::json extra = nlohmann::json::object();
      if (scheduler == "far") {
        s = far_schedule(tasks, m, fo).schedule;
      } else if (scheduler == "miso") {
        s = miso_schedule(tasks, m, {zero_reconfig});
      } else if (scheduler == "fixpart") {
        if (partition.empty()) throw Error("fixpart needs --partition");
        s = fixpart_schedule(tasks, m, partition_from_sizes(m, int_list(partition)));
      } else {
        auto [p, best] = fixpart_best(tasks, m);
        auto sizes = nlohmann::json::array();
        for (const auto& i : p) sizes.push_back(i.size);
        extra["partition"] = sizes;
        s = std::move(best);
      }
      nlohmann::json j{{"scheduler", scheduler},
                       {"makespan", s->makespan},
                       {"far_makespan", far},
                       {"sigma", sigma(s->makespan, far)},
                       {"schedule", schedule_to_json(*s)}};
      j.update(extra);
      emit_json(j, out);
    } else if (orc->parsed()) {
      const auto m = model();
      auto tasks = load_profile(profile, m);
      auto r = brute_force_optimal(tasks, m, {true, max_n});
      emit_json({{"makespan", r.makespan},
                 {"nodes_explored", r.nodes_explored},
                 {"lower_bound", lower_bound(tasks, m)},
                 {"schedule", schedule_to_json(r.schedule)}},
                out);
    } else if (gen->parsed()) {
      const auto m = model();
      SyntheticConfig cfg;
      cfg.n = n;
      cfg.p_sup = psup;
      cfg.transition_prob = transition;
      cfg.seed = seed;
      std::tie(cfg.t_min, cfg.t_max) = times.empty() ? std::make_pair(tmin, tmax) : time_range(times);
      if (!scaling.empty()) {
        cfg.p = scaling_shares(scaling, m);
      } else if (!shares.empty()) {
        auto v = double_list(shares);
        if (v.size() != m.sizes().size()) throw Error("--p needs one share per size of " + m.name());
        for (std::size_t i = 0; i < v.size(); ++i) cfg.p[m.sizes()[i]] = v[i];
      } else {
        cfg.p = scaling_shares("MixedScaling", m);
      }
      emit_json(profile_to_json(generate_synthetic(cfg, m), m), out);
    } else if (val->parsed()) {
      auto s = read_schedule(in_path, model_name);
      auto report = validate(s);
      for (const auto& v : report.violations)
        std::cout << "constraint " << v.constraint << " at " << v.time << ": " << v.detail << '\n';
      std::cout << (report.ok ? "valid" : "invalid") << " (" << s.tasks.size() << " tasks, makespan " << s.makespan
                << ")\n";
      return report.ok ? 0 : 1;
    } else if (gantt->parsed()) {
      auto s = read_schedule(in_path, model_name);
      emit(render_gantt(s, parse_gantt_format(format), px), out);
    } else if (exp->parsed()) {
      ExperimentSpec spec;
      spec.grid = grid;
      spec.trials = trials;
      spec.seed = seed;
      spec.p_sup = psup;
      spec.model = model_name.empty() ? "A100" : model_name;
      auto rows = run_experiment(spec);
      std::ostringstream csv;
      write_csv(csv, rows);
      emit(csv.str(), out);
      if (!json_out.empty()) emit_json(rows_to_json(rows), json_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
