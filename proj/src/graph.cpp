#include "sgframe/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "sgframe/error.hpp"

namespace sgf {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw InputError("graph must have at least one vertex, got " + std::to_string(n_));
  for (auto& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") out of range for " + std::to_string(n_) + " vertices");
    }
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") has non-positive or non-finite weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InputError("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                       std::to_string(edges_[i].v) + ")");
    }
  }

  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[static_cast<std::size_t>(e.u) + 1];
    ++offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incident_.resize(2 * edges_.size());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    incident_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges_[i].u)]++)] =
        static_cast<int>(i);
    incident_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges_[i].v)]++)] =
        static_cast<int>(i);
  }
}

std::span<const int> Graph::incident(int v) const {
  const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
  const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
  return std::span<const int>(incident_.data() + b, e - b);
}

double Graph::degree(int v) const {
  double d = 0.0;
  for (int e : incident(v)) d += edges_[static_cast<std::size_t>(e)].w;
  return d;
}

double Graph::total_weight() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.w;
  return s;
}

bool Graph::is_tree() const {
  return edges_.size() + 1 == static_cast<std::size_t>(n_) && is_connected(*this);
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const int n = g.num_vertices();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    L(e.u, e.v) -= e.w;
    L(e.v, e.u) -= e.w;
    L(e.u, e.u) += e.w;
    L(e.v, e.v) += e.w;
  }
  return L;
}

LaplacianSpectrum spectrum(const Graph& g) {
  const int n = g.num_vertices();
  const Eigen::MatrixXd L = laplacian(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Laplacian eigendecomposition failed (" + std::to_string(n) +
                         " vertices)");
  }
  LaplacianSpectrum s;
  s.values = solver.eigenvalues();
  s.vectors = solver.eigenvectors().transpose();

  const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values[i] < 0.0) {
      if (s.values[i] < -1e-10 * scale) {
        throw NumericalError("Laplacian eigenvalue " + std::to_string(s.values[i]) +
                             " is significantly negative");
      }
      s.values[i] = 0.0;
    }
  }
  if (is_connected(g)) {
    s.values[0] = 0.0;
    s.vectors.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  }
  for (Eigen::Index i = 0; i < s.vectors.rows(); ++i) {
    for (Eigen::Index c = 0; c < s.vectors.cols(); ++c) {
      const double x = s.vectors(i, c);
      if (std::abs(x) > 1e-12) {
        if (x < 0.0) s.vectors.row(i) *= -1.0;
        break;
      }
    }
  }
  return s;
}

Graph induced_subgraph(const Graph& g, std::span<const int> subset) {
  if (subset.empty()) throw InputError("induced_subgraph: empty vertex subset");
  std::unordered_map<int, int> position;
  position.reserve(subset.size() * 2);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const int v = subset[i];
    if (v < 0 || v >= g.num_vertices()) {
      throw InputError("induced_subgraph: vertex " + std::to_string(v) + " out of range");
    }
    if (!position.emplace(v, static_cast<int>(i)).second) {
      throw InputError("induced_subgraph: vertex " + std::to_string(v) + " repeated");
    }
  }
  std::vector<Edge> edges;
  for (const int v : subset) {
    for (const int e : g.incident(v)) {
      const int w = g.other(e, v);
      if (w <= v) continue;
      const auto it = position.find(w);
      if (it == position.end()) continue;
      edges.push_back({position[v], it->second, g.edges()[static_cast<std::size_t>(e)].w});
    }
  }
  return Graph(static_cast<int>(subset.size()), std::move(edges));
}

std::vector<int> connected_components(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const int e : g.incident(v)) {
        const int w = g.other(e, v);
        if (label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  const auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
}

} // namespace sgf
