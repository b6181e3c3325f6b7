#include "migsched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace migsched {

Task make_task(std::string id, const std::map<int, double>& times) {
  Task t{std::move(id), {}};
  int top = times.empty() ? 0 : times.rbegin()->first;
  t.times.assign(static_cast<std::size_t>(top + 1), 0.0);
  for (const auto& [s, v] : times) t.times[static_cast<std::size_t>(s)] = v;
  return t;
}

std::map<int, int> size_counts(int n, const std::map<int, double>& p, const std::vector<int>& sizes) {
  std::map<int, int> counts;
  auto exact = [&](int s) {
    auto it = p.find(s);
    return it == p.end() ? 0.0 : n * it->second / 100.0;
  };
  int total = 0;
  for (int s : sizes) {
    // Small epsilon keeps 29.999999 from flooring to 29.
    counts[s] = static_cast<int>(std::floor(exact(s) + 1e-9));
    total += counts[s];
  }
  while (total < n) {
    int best = sizes.front();
    double best_gap = -std::numeric_limits<double>::infinity();
    for (int s : sizes) {
      double gap = exact(s) - counts[s];
      if (gap > best_gap + 1e-12) {
        best_gap = gap;
        best = s;
      }
    }
    ++counts[best];
    ++total;
  }
  return counts;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

enum class Regime { super, near, sub };

double draw_r(Regime regime, std::mt19937_64& rng) {
  double mu = 0, sigma = 0, lo = 0, hi = 0;
  switch (regime) {
    case Regime::super: mu = -0.25, sigma = 0.25, lo = -0.5, hi = 0.0; break;
    case Regime::near: mu = 0.1, sigma = 0.1, lo = 0.0, hi = 0.2; break;
    case Regime::sub: mu = 0.75, sigma = 0.25, lo = 0.5, hi = 1.0; break;
  }
  std::normal_distribution<double> dist(mu, sigma);
  return std::clamp(dist(rng), lo, hi);
}

}  // namespace

std::vector<Task> generate_synthetic(const SyntheticConfig& cfg, const GpuModel& model) {
  std::mt19937_64 rng(cfg.seed);
  return generate_synthetic(cfg, model, rng);
}

std::vector<Task> generate_synthetic(const SyntheticConfig& cfg, const GpuModel& model, std::mt19937_64& rng) {
  if (cfg.n < 0) throw Error("task count must be non-negative");
  if (cfg.t_min <= 0 || cfg.t_max < cfg.t_min) throw Error("invalid time range");
  if (cfg.p_sup < 0 || cfg.p_sup > 100) throw Error("p_sup must lie in [0, 100]");
  double share_sum = 0;
  for (const auto& [s, v] : cfg.p) {
    if (std::find(model.sizes().begin(), model.sizes().end(), s) == model.sizes().end())
      throw Error("share given for size " + std::to_string(s) + " not offered by " + model.name());
    share_sum += v;
  }
  if (cfg.n > 0 && std::abs(share_sum - 100.0) > 1e-6) throw Error("scaling shares must sum to 100");

  const auto counts = size_counts(cfg.n, cfg.p, model.sizes());
  const int top = model.max_size();
  std::uniform_real_distribution<double> base(cfg.t_min, cfg.t_max);
  std::bernoulli_distribution flip(cfg.transition_prob);

  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(cfg.n));
  for (const auto& [cls, count] : counts) {
    const int memory_bound = static_cast<int>(std::ceil(cfg.p_sup * count / 100.0 - 1e-9));
    for (int k = 0; k < count; ++k) {
      bool mem = cls > 1 && k < memory_bound;
      std::vector<double> t(static_cast<std::size_t>(top + 1), 0.0);
      t[1] = base(rng);
      for (int s = 1; s < top; ++s) {
        Regime regime = Regime::sub;
        if (s < cls) {
          if (mem && s > 1 && flip(rng)) mem = false;
          if (mem)
            regime = Regime::super;
          else
            regime = (k < memory_bound) ? Regime::sub : Regime::near;
        }
        const double r = draw_r(regime, rng);
        t[static_cast<std::size_t>(s + 1)] = (s + r) / (s + 1) * t[static_cast<std::size_t>(s)];
      }
      Task task;
      task.times.assign(static_cast<std::size_t>(top + 1), 0.0);
      for (int s : model.sizes()) task.times[static_cast<std::size_t>(s)] = t[static_cast<std::size_t>(s)];
      tasks.push_back(std::move(task));
    }
  }
  std::shuffle(tasks.begin(), tasks.end(), rng);
  for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].id = "t" + std::to_string(i);
  return tasks;
}

Task checked_task(std::string id, const std::map<int, double>& times, const GpuModel& model) {
  std::map<int, double> clean;
  double prev = std::numeric_limits<double>::infinity();
  for (int s : model.sizes()) {
    auto it = times.find(s);
    if (it == times.end()) throw Error("incomplete profile: task " + id + " lacks size " + std::to_string(s));
    double v = it->second;
    if (!(v > 0) || !std::isfinite(v)) throw Error("invalid time: task " + id + " size " + std::to_string(s));
    if (v > prev) {
      if (v > prev * 1.02) throw Error("non-monotone profile: task " + id + " size " + std::to_string(s));
      v = prev;
    }
    clean[s] = v;
    prev = v;
  }
  return make_task(std::move(id), clean);
}

std::vector<Task> parse_profile(const nlohmann::json& j, const GpuModel& model) {
  if (j.contains("model") && j.at("model").get<std::string>() != model.name())
    throw Error("profile targets model " + j.at("model").get<std::string>() + ", not " + model.name());
  std::vector<Task> tasks;
  try {
    for (const auto& jt : j.at("tasks")) {
      std::map<int, double> times;
      for (const auto& [k, v] : jt.at("times").items()) times[std::stoi(k)] = v.get<double>();
      tasks.push_back(checked_task(jt.at("id").get<std::string>(), times, model));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed profile: ") + e.what());
  }
  return tasks;
}

std::vector<Task> load_profile(const std::string& path, const GpuModel& model) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open profile " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("cannot parse profile " + path + ": " + e.what());
  }
  return parse_profile(j, model);
}

nlohmann::json profile_to_json(const std::vector<Task>& tasks, const GpuModel& model) {
  auto arr = nlohmann::json::array();
  for (const auto& t : tasks) {
    nlohmann::json times = nlohmann::json::object();
    for (int s : model.sizes()) times[std::to_string(s)] = t.time(s);
    arr.push_back({{"id", t.id}, {"times", times}});
  }
  return {{"model", model.name()}, {"tasks", arr}};
}

std::map<int, double> scaling_shares(const std::string& name, const GpuModel& model) {
  const auto& sizes = model.sizes();
  std::map<int, double> p;
  for (int s : sizes) p[s] = 0;
  const std::size_t k = sizes.size();
  if (name == "PoorScaling") {
    p[sizes[0]] = 50;
    p[sizes[1]] = 50;
  } else if (name == "GoodScaling") {
    p[sizes[k - 2]] = 50;
    p[sizes[k - 1]] = 50;
  } else if (name == "MixedScaling") {
    for (int s : sizes) p[s] = 100.0 / static_cast<double>(k);
  } else {
    throw Error("unknown scaling configuration " + name);
  }
  return p;
}

}  // namespace migsched
