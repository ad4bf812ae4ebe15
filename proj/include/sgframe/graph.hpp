#ifndef SGFRAME_GRAPH_HPP
#define SGFRAME_GRAPH_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace sgf {

/// Undirected weighted edge. Stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected graph on vertices 0..n-1 with strictly positive
/// weights and no self-loops or parallel edges. Edges are kept sorted by
/// (u, v) so that two graphs with the same edge set compare equal.
class Graph {
public:
  /// Single isolated vertex.
  Graph() : Graph(1) {}

  /// Throws InputError on self-loops, out-of-range endpoints, duplicate
  /// unordered pairs, or non-positive / non-finite weights.
  explicit Graph(int n, std::vector<Edge> edges = {});

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Indices into edges() of the edges incident to v.
  std::span<const int> incident(int v) const;

  /// Endpoint of edge e that is not v.
  int other(int e, int v) const {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    return ed.u == v ? ed.v : ed.u;
  }

  double degree(int v) const;
  double total_weight() const;
  bool is_tree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

private:
  int n_ = 1;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;  // CSR offsets into incident_
  std::vector<int> incident_;
};

/// Unnormalized Laplacian D - W as a dense matrix.
Eigen::MatrixXd laplacian(const Graph& g);

/// Eigendecomposition of the Laplacian. Row i of `vectors` is the unit
/// eigenvector of `values[i]`; values ascend, and each row's first entry with
/// magnitude above 1e-12 is positive. For connected graphs row 0 is exactly
/// the constant vector 1/sqrt(n).
struct LaplacianSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

LaplacianSpectrum spectrum(const Graph& g);

/// Subgraph on `subset`, relabelled 0..|subset|-1 in subset order.
Graph induced_subgraph(const Graph& g, std::span<const int> subset);

bool is_connected(const Graph& g);

/// Connected component label per vertex (labels in order of first vertex).
std::vector<int> connected_components(const Graph& g);

enum class SpanningTreeKind { minimum, maximum };

/// Kruskal spanning tree. Ties are broken by lexicographic (w, u, v) order
/// (for the maximum kind: descending w, then ascending u, v).
/// Throws ConnectivityError on disconnected input.
Graph minimum_spanning_tree(const Graph& g,
                            SpanningTreeKind kind = SpanningTreeKind::minimum);

/// The input graph, its spanning tree and one edge-swapped tree per non-tree
/// edge, deduplicated as edge sets.
struct SpanningTreeFamily {
  std::vector<Graph> members;
  /// Index of the member equal to the input; empty when the input is a tree
  /// (then the family is the input alone).
  std::optional<std::size_t> base;
};

/// The spanning tree is rooted at vertex 0. For every non-tree edge (u, v),
/// the edge is added and the parent edge of the deeper endpoint (ties: the
/// larger index) is removed; that parent edge always lies on the cycle, so
/// every swap is again a spanning tree.
SpanningTreeFamily spanning_tree_family(
    const Graph& g, SpanningTreeKind kind = SpanningTreeKind::minimum);

} // namespace sgf

#endif // SGFRAME_GRAPH_HPP
