#ifndef SGFRAME_PARTITION_TREE_HPP
#define SGFRAME_PARTITION_TREE_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgframe/graph.hpp"

namespace sgf {

/// One cluster S_{j,k}. `children` index nodes of level j + 1 and is empty
/// exactly at the leaf level.
struct ClusterNode {
  std::vector<int> members;
  std::vector<int> children;

  friend bool operator==(const ClusterNode&, const ClusterNode&) = default;
};

/// Hierarchy of nested vertex partitions. Level 0 is the root cluster and
/// level depth() holds one singleton per vertex, node i = {i}. Each level j
/// carries a graph on its clusters; the last one is the original graph.
struct PartitionTree {
  std::vector<std::vector<ClusterNode>> levels;
  std::vector<Graph> coarse_graphs;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  int num_nodes(int level) const {
    return static_cast<int>(levels.at(static_cast<std::size_t>(level)).size());
  }
  const ClusterNode& node(int level, int index) const {
    return levels.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(index));
  }
  const Graph& graph() const { return coarse_graphs.back(); }
  int num_vertices() const { return graph().num_vertices(); }

  friend bool operator==(const PartitionTree&, const PartitionTree&) = default;
};

/// Graph on the blocks of `partition`: the weight between two blocks is the
/// sum of the weights of all edges crossing them. Throws InputError if
/// `partition` is not a partition of g's vertices.
Graph coarsen_graph(const Graph& g, const std::vector<std::vector<int>>& partition);

/// Builds a tree from explicit bottom-up groupings. groupings[0] groups the
/// vertices of g, groupings[i] groups the clusters produced by
/// groupings[i - 1]; the last grouping must produce a single cluster.
PartitionTree partition_tree_from_groupings(
    const Graph& g, const std::vector<std::vector<std::vector<int>>>& groupings);

struct PartitionOptions {
  int branching = 2;
  bool connected_clusters = true;
};

/// Bottom-up greedy heavy-edge grouping. At each level edges are visited by
/// (weight desc, smaller endpoint, larger endpoint); an edge between two
/// free clusters opens a group, an edge from a free cluster to a group with
/// room extends it. Leftover clusters join the neighbouring group with the
/// largest total cross weight, or the smallest group when they have no
/// neighbour. Isolated clusters are pooled only when no edge remains.
PartitionTree build_partition_tree(const Graph& g, const PartitionOptions& options = {});

struct TreeCheck {
  std::string name;
  bool passed = true;
  std::string detail;
  std::vector<std::pair<int, int>> offending;  // (level, node)
};

struct TreeValidationReport {
  std::vector<TreeCheck> checks;
  bool passed() const;
  const TreeCheck* find(const std::string& name) const;
  std::string summary() const;
};

/// Checks the partition-tree conditions (root covers V, singleton leaves,
/// disjoint cover per level, children refine parents, >= 2 children, coarse
/// graph sizes) and, when requested, connectivity of every node's subgraph.
TreeValidationReport validate_partition_tree(const PartitionTree& t,
                                             bool check_connectivity = false);

struct SubgraphView {
  int level = 0;
  int index = 0;
  Graph subgraph;
};

/// Subgraph of coarse_graphs[j + 1] induced by the children of (j, k), in
/// children order. Throws InputError for leaves.
SubgraphView subgraph_of(const PartitionTree& t, int level, int index);

/// JSON with fields J, levels (arrays of {k, members, children}) and
/// coarse_graphs (edge lists [u, v, w] per level); 0-based indices.
std::string format_tree_json(const PartitionTree& t);

/// Throws ParseError naming the offending field when the file is malformed
/// or violates the partition conditions.
PartitionTree parse_tree_json(const std::string& text);

void save_tree(const PartitionTree& t, const std::string& path);
PartitionTree load_tree(const std::string& path);

} // namespace sgf

#endif // SGFRAME_PARTITION_TREE_HPP
