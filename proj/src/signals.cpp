#include <cmath>
#include <random>
#include <string>

#include "sgframe/bench.hpp"
#include "sgframe/error.hpp"

namespace sgf {

std::string to_string(SignalKind kind) {
  switch (kind) {
  case SignalKind::piecewise_constant: return "piecewise-constant";
  case SignalKind::bandlimited: return "bandlimited";
  case SignalKind::path: return "path";
  }
  return "unknown";
}

SignalKind parse_signal_kind(const std::string& name) {
  if (name == "piecewise-constant") return SignalKind::piecewise_constant;
  if (name == "bandlimited") return SignalKind::bandlimited;
  if (name == "path") return SignalKind::path;
  throw InputError("unknown signal kind '" + name +
                   "' (expected piecewise-constant, bandlimited or path)");
}

Eigen::VectorXd gen_signal(const PartitionTree& t, SignalKind kind, std::uint64_t seed,
                           const SignalOptions& options) {
  const Graph& g = t.graph();
  const int n = g.num_vertices();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);

  switch (kind) {
  case SignalKind::piecewise_constant: {
    const int level = (t.depth() + 1) / 2;
    for (const auto& nd : t.levels[static_cast<std::size_t>(level)]) {
      const double value = normal(rng);
      for (int v : nd.members) f[v] = value;
    }
    break;
  }
  case SignalKind::bandlimited: {
    if (n > kMaxBandlimitedVertices) {
      throw InputError("bandlimited signals need a dense eigendecomposition; graph has " +
                       std::to_string(n) + " vertices (limit " +
                       std::to_string(kMaxBandlimitedVertices) + ")");
    }
    if (options.bandlimited_modes < 1) throw InputError("bandlimited_modes must be >= 1");
    const auto spec = spectrum(g);
    const int modes = std::min(options.bandlimited_modes, n);
    for (int i = 0; i < modes; ++i) f += normal(rng) * spec.vectors.row(i).transpose();
    break;
  }
  case SignalKind::path: {
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int source = pick(rng);
    std::vector<int> parent(static_cast<std::size_t>(n), -2);
    std::vector<int> reached{source};
    parent[static_cast<std::size_t>(source)] = -1;
    for (std::size_t head = 0; head < reached.size(); ++head) {
      const int v = reached[head];
      for (int e : g.incident(v)) {
        const int w = g.other(e, v);
        if (parent[static_cast<std::size_t>(w)] != -2) continue;
        parent[static_cast<std::size_t>(w)] = v;
        reached.push_back(w);
      }
    }
    std::uniform_int_distribution<std::size_t> pick_target(0, reached.size() - 1);
    for (int v = reached[pick_target(rng)]; v >= 0; v = parent[static_cast<std::size_t>(v)]) f[v] = 1.0;
    if (options.path_snr_db) {
      const double sigma =
          std::sqrt(f.squaredNorm() / (static_cast<double>(n) * std::pow(10.0, *options.path_snr_db / 10.0)));
      for (int v = 0; v < n; ++v) f[v] += sigma * normal(rng);
    }
    break;
  }
  }
  return f;
}

} // namespace sgf
