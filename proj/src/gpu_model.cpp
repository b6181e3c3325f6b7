#include "migsched/gpu_model.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

namespace migsched {

std::string to_string(const Instance& inst) {
  if (inst.size == 1) return "{S" + std::to_string(inst.start_slice) + "}";
  return "{S" + std::to_string(inst.start_slice) + "..S" + std::to_string(inst.end_slice() - 1) + "}";
}

GpuModel::GpuModel(std::string name, int num_slices, std::vector<TreeNode> nodes,
                   std::map<int, double> t_create, std::map<int, double> t_destroy) {
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  data->num_slices = num_slices;
  data->nodes = std::move(nodes);
  data->t_create = std::move(t_create);
  data->t_destroy = std::move(t_destroy);

  if (num_slices < 1) throw Error("model needs at least one slice");
  if (data->nodes.empty()) throw Error("model tree is empty");
  auto& ns = data->nodes;
  const Instance full{0, num_slices};
  if (ns[0].instance != full) throw Error("tree root must span all slices");

  for (auto& n : ns) n.parent = -1;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto& n = ns[i];
    if (n.instance.size < 1 || n.instance.start_slice < 0 || n.instance.end_slice() > num_slices)
      throw Error("tree node " + to_string(n.instance) + " out of range");
    if (n.hosted_sizes.empty()) n.hosted_sizes = {n.instance.size};
    if (std::find(n.hosted_sizes.begin(), n.hosted_sizes.end(), n.instance.size) == n.hosted_sizes.end())
      throw Error("tree node " + to_string(n.instance) + " must host its own size");
    for (int h : n.hosted_sizes)
      if (h < 1 || h > n.instance.size) throw Error("hosted size exceeds node size");
    if (!n.children.empty()) {
      int cursor = n.instance.start_slice;
      for (int c : n.children) {
        if (c <= static_cast<int>(i) || c >= static_cast<int>(ns.size()))
          throw Error("children must reference later nodes");
        if (ns[static_cast<std::size_t>(c)].parent != -1) throw Error("node has two parents");
        ns[static_cast<std::size_t>(c)].parent = static_cast<int>(i);
        const auto& ci = ns[static_cast<std::size_t>(c)].instance;
        if (ci.start_slice != cursor) throw Error("children must tile the parent interval");
        cursor = ci.end_slice();
      }
      if (cursor != n.instance.end_slice()) throw Error("children must tile the parent interval");
    }
  }
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i].parent == -1) throw Error("tree node " + to_string(ns[i].instance) + " is unreachable");

  std::set<int> sizes;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (int h : ns[i].hosted_sizes) {
      sizes.insert(h);
      data->hosts[h].push_back(static_cast<int>(i));
      const Instance inst{ns[i].instance.start_slice, h};
      data->catalog.push_back(inst);
      data->catalog_host.push_back(static_cast<int>(i));
    }
  }
  data->sizes.assign(sizes.begin(), sizes.end());
  for (int s : data->sizes) {
    if (!data->t_create.contains(s) || !data->t_destroy.contains(s))
      throw Error("missing reconfiguration cost for size " + std::to_string(s));
  }

  data->leaf_of_slice.assign(static_cast<std::size_t>(num_slices), -1);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!ns[i].children.empty()) continue;
    for (int s = ns[i].instance.start_slice; s < ns[i].instance.end_slice(); ++s)
      data->leaf_of_slice[static_cast<std::size_t>(s)] = static_cast<int>(i);
  }
  data_ = std::move(data);
}

std::optional<int> GpuModel::find_node(const Instance& inst) const {
  for (int i = 0; i < num_nodes(); ++i)
    if (data_->nodes[static_cast<std::size_t>(i)].instance == inst) return i;
  return std::nullopt;
}

const std::vector<int>& GpuModel::hosts_of(int size) const {
  static const std::vector<int> none;
  auto it = data_->hosts.find(size);
  return it == data_->hosts.end() ? none : it->second;
}

std::vector<int> GpuModel::nodes_of_size(int size) const {
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i)
    if (node(i).instance.size == size) out.push_back(i);
  return out;
}

bool GpuModel::is_ancestor(int ancestor, int id) const {
  for (int p = node(id).parent; p != -1; p = node(p).parent)
    if (p == ancestor) return true;
  return false;
}

std::optional<int> GpuModel::host_node(const Instance& inst) const {
  // Prefer a node whose own interval matches.
  if (auto n = find_node(inst)) return n;
  for (std::size_t i = 0; i < data_->catalog.size(); ++i)
    if (data_->catalog[i] == inst) return data_->catalog_host[i];
  return std::nullopt;
}

bool GpuModel::in_catalog(const Instance& inst) const { return host_node(inst).has_value(); }

Instance GpuModel::footprint(const Instance& inst) const {
  auto host = host_node(inst);
  return host ? node(*host).instance : inst;
}

double GpuModel::create_cost(int size) const {
  auto it = data_->t_create.find(size);
  if (it == data_->t_create.end()) throw Error("no creation cost for size " + std::to_string(size));
  return it->second;
}

double GpuModel::destroy_cost(int size) const {
  auto it = data_->t_destroy.find(size);
  if (it == data_->t_destroy.end()) throw Error("no destruction cost for size " + std::to_string(size));
  return it->second;
}

bool GpuModel::operator==(const GpuModel& other) const {
  if (data_ == other.data_) return true;
  if (name() != other.name() || num_slices() != other.num_slices() || num_nodes() != other.num_nodes())
    return false;
  for (int i = 0; i < num_nodes(); ++i) {
    const auto& a = node(i);
    const auto& b = other.node(i);
    if (a.instance != b.instance || a.hosted_sizes != b.hosted_sizes || a.children != b.children) return false;
  }
  return t_create() == other.t_create() && t_destroy() == other.t_destroy();
}

namespace {

// Binary split used by the A30 and A100/H100 trees; nodes listed breadth-first.
std::vector<TreeNode> a30_tree() {
  std::vector<TreeNode> t(7);
  t[0] = {{0, 4}, {4}, {1, 2}};
  t[1] = {{0, 2}, {2}, {3, 4}};
  t[2] = {{2, 2}, {2}, {5, 6}};
  t[3] = {{0, 1}, {1}, {}};
  t[4] = {{1, 1}, {1}, {}};
  t[5] = {{2, 1}, {1}, {}};
  t[6] = {{3, 1}, {1}, {}};
  return t;
}

std::vector<TreeNode> a100_tree() {
  std::vector<TreeNode> t(13);
  t[0] = {{0, 7}, {7}, {1, 2}};
  t[1] = {{0, 4}, {4, 3}, {3, 4}};
  t[2] = {{4, 3}, {3}, {5, 6}};
  t[3] = {{0, 2}, {2}, {7, 8}};
  t[4] = {{2, 2}, {2}, {9, 10}};
  t[5] = {{4, 2}, {2}, {11, 12}};
  t[6] = {{6, 1}, {1}, {}};
  t[7] = {{0, 1}, {1}, {}};
  t[8] = {{1, 1}, {1}, {}};
  t[9] = {{2, 1}, {1}, {}};
  t[10] = {{3, 1}, {1}, {}};
  t[11] = {{4, 1}, {1}, {}};
  t[12] = {{5, 1}, {1}, {}};
  return t;
}

}  // namespace

GpuModel builtin_model(std::string_view name) {
  if (name == "A30")
    return GpuModel("A30", 4, a30_tree(), {{1, 0.11}, {2, 0.12}, {4, 0.13}}, {{1, 0.10}, {2, 0.10}, {4, 0.10}});
  if (name == "A100")
    return GpuModel("A100", 7, a100_tree(), {{1, 0.16}, {2, 0.17}, {3, 0.20}, {4, 0.21}, {7, 0.24}},
                    {{1, 0.20}, {2, 0.20}, {3, 0.21}, {4, 0.21}, {7, 0.22}});
  if (name == "H100")
    return GpuModel("H100", 7, a100_tree(), {{1, 0.16}, {2, 0.21}, {3, 0.33}, {4, 0.38}, {7, 0.42}},
                    {{1, 0.21}, {2, 0.23}, {3, 0.25}, {4, 0.26}, {7, 0.26}});
  throw Error("unsupported model: " + std::string(name));
}

namespace {

void partitions_of(const GpuModel& model, int id, std::vector<std::vector<Instance>>& out) {
  const auto& n = model.node(id);
  for (int h : n.hosted_sizes) out.push_back({Instance{n.instance.start_slice, h}});
  if (n.children.empty()) return;
  std::vector<std::vector<Instance>> acc{{}};
  for (int c : n.children) {
    std::vector<std::vector<Instance>> sub;
    partitions_of(model, c, sub);
    std::vector<std::vector<Instance>> next;
    for (const auto& a : acc)
      for (const auto& b : sub) {
        auto merged = a;
        merged.insert(merged.end(), b.begin(), b.end());
        next.push_back(std::move(merged));
      }
    acc = std::move(next);
  }
  out.insert(out.end(), acc.begin(), acc.end());
}

}  // namespace

std::vector<std::vector<Instance>> enumerate_partitions(const GpuModel& model) {
  std::vector<std::vector<Instance>> out;
  partitions_of(model, model.root(), out);
  for (auto& p : out) std::sort(p.begin(), p.end());
  return out;
}

bool is_feasible_instance_set(const GpuModel& model, std::span<const Instance> instances) {
  std::vector<Instance> prints;
  prints.reserve(instances.size());
  for (const auto& inst : instances) {
    if (!model.in_catalog(inst)) return false;
    prints.push_back(model.footprint(inst));
  }
  for (std::size_t i = 0; i < prints.size(); ++i)
    for (std::size_t j = i + 1; j < prints.size(); ++j)
      if (prints[i].overlaps(prints[j])) return false;
  return true;
}

namespace {

nlohmann::json node_to_json(const GpuModel& model, int id) {
  const auto& n = model.node(id);
  nlohmann::json j{{"start_slice", n.instance.start_slice},
                   {"size", n.instance.size},
                   {"hosted_sizes", n.hosted_sizes}};
  auto children = nlohmann::json::array();
  for (int c : n.children) children.push_back(node_to_json(model, c));
  j["children"] = std::move(children);
  return j;
}

std::map<int, double> costs_from_json(const nlohmann::json& j) {
  std::map<int, double> out;
  for (const auto& [k, v] : j.items()) out[std::stoi(k)] = v.get<double>();
  return out;
}

nlohmann::json costs_to_json(const std::map<int, double>& costs) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : costs) j[std::to_string(k)] = v;
  return j;
}

}  // namespace

nlohmann::json model_to_json(const GpuModel& model) {
  return {{"name", model.name()},
          {"num_slices", model.num_slices()},
          {"tree", node_to_json(model, model.root())},
          {"t_create", costs_to_json(model.t_create())},
          {"t_destroy", costs_to_json(model.t_destroy())}};
}

GpuModel model_from_json(const nlohmann::json& j) {
  try {
    std::vector<TreeNode> nodes;
    // Breadth-first flattening keeps children after their parents.
    std::vector<const nlohmann::json*> queue{&j.at("tree")};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto& jn = *queue[head];
      TreeNode n;
      n.instance = {jn.at("start_slice").get<int>(), jn.at("size").get<int>()};
      if (jn.contains("hosted_sizes")) n.hosted_sizes = jn.at("hosted_sizes").get<std::vector<int>>();
      if (jn.contains("children")) {
        for (const auto& c : jn.at("children")) {
          n.children.push_back(static_cast<int>(queue.size()));
          queue.push_back(&c);
        }
      }
      nodes.push_back(std::move(n));
    }
    return GpuModel(j.at("name").get<std::string>(), j.at("num_slices").get<int>(), std::move(nodes),
                    costs_from_json(j.at("t_create")), costs_from_json(j.at("t_destroy")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model definition: ") + e.what());
  }
}

GpuModel resolve_model(const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error("cannot parse model file " + spec + ": " + e.what());
    }
    return model_from_json(j);
  }
  return builtin_model(spec);
}

}  // namespace migsched
