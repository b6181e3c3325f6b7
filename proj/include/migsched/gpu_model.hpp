#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace migsched {

/// Raised for malformed inputs and violated preconditions across the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run of consecutive slices [start_slice, start_slice + size).
struct Instance {
  int start_slice = 0;
  int size = 1;

  int end_slice() const { return start_slice + size; }
  bool covers(int slice) const { return slice >= start_slice && slice < end_slice(); }
  bool overlaps(const Instance& other) const {
    return start_slice < other.end_slice() && other.start_slice < end_slice();
  }

  auto operator<=>(const Instance&) const = default;
};

std::string to_string(const Instance& inst);

/// One node of the repartitioning tree. Node 0 is the root; children are
/// stored as indices into the model's node table.
struct TreeNode {
  Instance instance;
  /// Task sizes the node may execute, in placement priority order.
  std::vector<int> hosted_sizes;
  std::vector<int> children;
  int parent = -1;
};

/// Immutable description of a MIG-capable GPU. Copies share the same
/// underlying tables, so models are cheap to pass by value.
class GpuModel {
 public:
  /// Builds a model from a node table whose element 0 is the root. Parent
  /// links are derived from the children lists. Throws Error when the tree
  /// does not partition slice intervals or a cost entry is missing.
  GpuModel(std::string name, int num_slices, std::vector<TreeNode> nodes,
           std::map<int, double> t_create, std::map<int, double> t_destroy);

  const std::string& name() const { return data_->name; }
  int num_slices() const { return data_->num_slices; }
  /// C_G in increasing order.
  const std::vector<int>& sizes() const { return data_->sizes; }
  int max_size() const { return data_->sizes.back(); }

  const std::vector<TreeNode>& nodes() const { return data_->nodes; }
  const TreeNode& node(int id) const { return data_->nodes.at(static_cast<std::size_t>(id)); }
  int root() const { return 0; }
  int num_nodes() const { return static_cast<int>(data_->nodes.size()); }
  bool is_leaf(int id) const { return node(id).children.empty(); }

  /// Tree node whose slice interval equals `inst`, if any.
  std::optional<int> find_node(const Instance& inst) const;
  /// Leaf node covering a slice.
  int leaf_of_slice(int slice) const { return data_->leaf_of_slice.at(static_cast<std::size_t>(slice)); }
  /// Nodes hosting `size`, in node-table order.
  const std::vector<int>& hosts_of(int size) const;
  /// Node ids whose interval has size `size`.
  std::vector<int> nodes_of_size(int size) const;
  bool is_ancestor(int ancestor, int node) const;

  /// Every creatable instance: tree nodes plus hosted variants (the size-3
  /// usage of the A100 {S0..S3} node appears as Instance{0, 3}).
  const std::vector<Instance>& catalog() const { return data_->catalog; }
  bool in_catalog(const Instance& inst) const;
  /// Slice interval blocked by a catalog instance (its hosting node).
  Instance footprint(const Instance& inst) const;
  /// Hosting node of a catalog instance.
  std::optional<int> host_node(const Instance& inst) const;

  double create_cost(int size) const;
  double destroy_cost(int size) const;
  const std::map<int, double>& t_create() const { return data_->t_create; }
  const std::map<int, double>& t_destroy() const { return data_->t_destroy; }

  bool operator==(const GpuModel& other) const;

 private:
  struct Data {
    std::string name;
    int num_slices = 0;
    std::vector<int> sizes;
    std::vector<TreeNode> nodes;
    std::vector<Instance> catalog;
    std::vector<int> catalog_host;
    std::map<int, std::vector<int>> hosts;
    std::vector<int> leaf_of_slice;
    std::map<int, double> t_create;
    std::map<int, double> t_destroy;
  };
  std::shared_ptr<const Data> data_;
};

/// Built-in models: "A30", "A100", "H100". Throws Error("unsupported model").
GpuModel builtin_model(std::string_view name);

/// All maximal instance sets covering every slice, each sorted by start
/// slice. The A100/H100 size-3 usage of {S0..S3} yields its own partitions.
std::vector<std::vector<Instance>> enumerate_partitions(const GpuModel& model);

/// True iff every instance is in the catalog and footprints are disjoint.
bool is_feasible_instance_set(const GpuModel& model, std::span<const Instance> instances);

nlohmann::json model_to_json(const GpuModel& model);
GpuModel model_from_json(const nlohmann::json& j);
/// Resolves a built-in name, or loads a model definition file when `spec`
/// names an existing path.
GpuModel resolve_model(const std::string& spec);

}  // namespace migsched
