#include "sgframe/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "sgframe/error.hpp"

namespace sgf {

namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

} // namespace

Graph random_regular_graph(int n, int degree, std::uint64_t seed) {
  if (degree < 2 || degree % 2 != 0) {
    throw InputError("random_regular_graph: degree must be even and >= 2");
  }
  if (n < 3 || degree >= n) throw InputError("random_regular_graph: need n > degree and n >= 3");
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> present;
  present.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(degree));
  std::vector<Edge> edges;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int cycle = 0; cycle < degree / 2; ++cycle) {
    constexpr int kAttempts = 64;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      bool clash = false;
      std::unordered_set<std::uint64_t> mine;
      for (int i = 0; i < n && !clash; ++i) {
        const auto key = pair_key(perm[static_cast<std::size_t>(i)],
                                  perm[static_cast<std::size_t>((i + 1) % n)]);
        clash = present.count(key) > 0 || !mine.insert(key).second;
      }
      if (clash && attempt + 1 < kAttempts) continue;
      for (int i = 0; i < n; ++i) {
        const int u = perm[static_cast<std::size_t>(i)];
        const int v = perm[static_cast<std::size_t>((i + 1) % n)];
        if (present.insert(pair_key(u, v)).second) edges.push_back({u, v, 1.0});
      }
      break;
    }
  }
  return Graph(n, std::move(edges));
}

Graph random_connected_graph(int n, double extra_edge_probability, std::uint64_t seed,
                             double min_weight, double max_weight) {
  if (n < 1) throw InputError("random_connected_graph: n must be positive");
  if (!(min_weight > 0.0) || max_weight < min_weight) {
    throw InputError("random_connected_graph: need 0 < min_weight <= max_weight");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(min_weight, max_weight);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    const int u = pick(rng);
    present.insert(pair_key(u, v));
    edges.push_back({u, v, weight(rng)});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng) < extra_edge_probability && !present.count(pair_key(u, v))) {
        present.insert(pair_key(u, v));
        edges.push_back({u, v, weight(rng)});
      }
    }
  }
  return Graph(n, std::move(edges));
}

Graph path_graph(int n, double weight) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, weight});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n, double weight) {
  if (n < 3) throw InputError("cycle_graph: need at least 3 vertices");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, weight});
  return Graph(n, std::move(edges));
}

Graph complete_graph(int n, double weight) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, weight});
  }
  return Graph(n, std::move(edges));
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InputError("grid_graph: dimensions must be positive");
  std::vector<Edge> edges;
  const auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

} // namespace sgf
