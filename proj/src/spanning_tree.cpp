#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "sgframe/error.hpp"
#include "sgframe/graph.hpp"

namespace sgf {

namespace {

class DisjointSets {
public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), rank_(parent_.size(), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)]) {
      ++rank_[static_cast<std::size_t>(a)];
    }
    return true;
  }

private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

// Kruskal over g; returns the indices (into g.edges()) of the tree edges.
std::vector<int> spanning_tree_edges(const Graph& g, SpanningTreeKind kind) {
  if (!is_connected(g)) {
    throw ConnectivityError("spanning tree requested for a disconnected graph (" +
                            std::to_string(g.num_vertices()) + " vertices)");
  }
  const auto& edges = g.edges();
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Edge& x = edges[static_cast<std::size_t>(a)];
    const Edge& y = edges[static_cast<std::size_t>(b)];
    if (x.w != y.w) return kind == SpanningTreeKind::minimum ? x.w < y.w : x.w > y.w;
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  DisjointSets sets(g.num_vertices());
  std::vector<int> tree;
  tree.reserve(static_cast<std::size_t>(g.num_vertices()) - 1);
  for (int e : order) {
    const Edge& ed = edges[static_cast<std::size_t>(e)];
    if (sets.unite(ed.u, ed.v)) tree.push_back(e);
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

Graph graph_from_edges(const Graph& g, const std::vector<int>& edge_ids) {
  std::vector<Edge> edges;
  edges.reserve(edge_ids.size());
  for (int e : edge_ids) edges.push_back(g.edges()[static_cast<std::size_t>(e)]);
  return Graph(g.num_vertices(), std::move(edges));
}

} // namespace

Graph minimum_spanning_tree(const Graph& g, SpanningTreeKind kind) {
  return graph_from_edges(g, spanning_tree_edges(g, kind));
}

SpanningTreeFamily spanning_tree_family(const Graph& g, SpanningTreeKind kind) {
  const std::vector<int> tree_edges = spanning_tree_edges(g, kind);
  SpanningTreeFamily family;
  if (tree_edges.size() == g.num_edges()) {
    family.members.push_back(g);
    return family;
  }

  const int n = g.num_vertices();
  std::vector<char> in_tree(g.num_edges(), 0);
  for (int e : tree_edges) in_tree[static_cast<std::size_t>(e)] = 1;

  // Root the tree at vertex 0: parent edge and depth of every vertex.
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<int> queue{0};
  depth[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int e : g.incident(v)) {
      if (!in_tree[static_cast<std::size_t>(e)]) continue;
      const int w = g.other(e, v);
      if (depth[static_cast<std::size_t>(w)] >= 0) continue;
      depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
      parent_edge[static_cast<std::size_t>(w)] = e;
      queue.push_back(w);
    }
  }

  family.members.push_back(g);
  family.base = 0;
  family.members.push_back(graph_from_edges(g, tree_edges));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (in_tree[e]) continue;
    const Edge& ed = g.edges()[e];
    const int du = depth[static_cast<std::size_t>(ed.u)];
    const int dv = depth[static_cast<std::size_t>(ed.v)];
    // u < v, so on equal depth the larger index is v.
    const int pick = du > dv ? ed.u : ed.v;
    const int removed = parent_edge[static_cast<std::size_t>(pick)];
    std::vector<int> swapped;
    swapped.reserve(tree_edges.size());
    for (int t : tree_edges) {
      if (t != removed) swapped.push_back(t);
    }
    swapped.push_back(static_cast<int>(e));
    Graph candidate = graph_from_edges(g, swapped);
    if (std::find(family.members.begin(), family.members.end(), candidate) ==
        family.members.end()) {
      family.members.push_back(std::move(candidate));
    }
  }
  return family;
}

} // namespace sgf
