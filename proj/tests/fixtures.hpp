// Shared graph fixtures and small dense oracles for the test binaries.
#ifndef SGFRAME_TESTS_FIXTURES_HPP
#define SGFRAME_TESTS_FIXTURES_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sgframe/filterbank.hpp"
#include "sgframe/frame.hpp"
#include "sgframe/generators.hpp"
#include "sgframe/graph.hpp"
#include "sgframe/partition_tree.hpp"

namespace fixtures {

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Member of the fixed-seed random suite: connected, weighted, 10 <= n <= 200.
inline sgf::Graph suite_graph(int seed) {
  const int n = 10 + (seed * 37) % 191;
  return sgf::random_connected_graph(n, 3.0 / n, static_cast<std::uint64_t>(seed));
}

inline sgf::Graph unit_cycle(int n) { return sgf::cycle_graph(n); }

inline sgf::Graph triangle(double w01 = 1, double w12 = 1, double w02 = 1) {
  return sgf::Graph(3, {{0, 1, w01}, {1, 2, w12}, {0, 2, w02}});
}

/// 4-vertex graph with tree {0,1},{2,3} + root (the two-level Haar fixture).
inline sgf::PartitionTree four_vertex_tree() {
  const sgf::Graph g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  return sgf::partition_tree_from_groupings(g, {{{0, 1}, {2, 3}}, {{0, 1}}});
}

inline Eigen::VectorXd random_signal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = dist(rng);
  return f;
}

/// Largest legal uniform r for the eigen variant (min cluster size - 1 over all levels).
inline int max_uniform_r(const sgf::PartitionTree& t) {
  int best = 1 << 30;
  for (int j = 0; j + 1 < static_cast<int>(t.levels.size()); ++j) {
    for (const auto& nd : t.levels[static_cast<std::size_t>(j)]) {
      best = std::min(best, static_cast<int>(nd.children.size()) - 1);
    }
  }
  return best;
}

struct FrameCase {
  std::string label;
  sgf::Variant variant;
  std::vector<int> r;
};

/// Per-level r schedule using r = 2 wherever every cluster of the level has
/// at least 3 children, else 1.
inline std::vector<int> mixed_r_schedule(const sgf::PartitionTree& t) {
  std::vector<int> r;
  for (int j = 0; j < t.depth(); ++j) {
    int smallest = 1 << 30;
    for (const auto& nd : t.levels[static_cast<std::size_t>(j)]) {
      smallest = std::min(smallest, static_cast<int>(nd.children.size()));
    }
    r.push_back(smallest >= 3 ? 2 : 1);
  }
  return r;
}

/// Variant/r combinations legal on t: haar, eigen r = 1, eigen with r = 2 on
/// the levels that allow it (when any does), and tree.
inline std::vector<FrameCase> frame_cases(const sgf::PartitionTree& t) {
  std::vector<FrameCase> out{{"haar", sgf::Variant::haar, {}}, {"eigen-r1", sgf::Variant::eigen, {1}}};
  const auto mixed = mixed_r_schedule(t);
  if (std::find(mixed.begin(), mixed.end(), 2) != mixed.end()) out.push_back({"eigen-r2", sgf::Variant::eigen, mixed});
  out.push_back({"tree", sgf::Variant::tree, {}});
  return out;
}

inline sgf::FilterBanks banks_for(const sgf::PartitionTree& t, const FrameCase& fc) {
  sgf::FilterBankOptions opts;
  opts.r_schedule = fc.r;
  return sgf::make_filterbanks(t, fc.variant, opts);
}

/// Spanning trees of g by exhaustive edge-subset enumeration (small graphs only).
inline std::vector<sgf::Graph> all_spanning_trees(const sgf::Graph& g) {
  std::vector<sgf::Graph> out;
  const auto& es = g.edges();
  const int E = static_cast<int>(es.size());
  const int need = g.num_vertices() - 1;
  for (std::uint32_t mask = 0; mask < (1u << E); ++mask) {
    if (std::popcount(mask) != need) continue;
    std::vector<sgf::Edge> pick;
    for (int e = 0; e < E; ++e) {
      if (mask & (1u << e)) pick.push_back(es[static_cast<std::size_t>(e)]);
    }
    sgf::Graph t(g.num_vertices(), pick);
    if (sgf::is_connected(t)) out.push_back(std::move(t));
  }
  return out;
}

} // namespace fixtures

#endif // SGFRAME_TESTS_FIXTURES_HPP
