#ifndef SGFRAME_BENCH_HPP
#define SGFRAME_BENCH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sgframe/filterbank.hpp"
#include "sgframe/frame.hpp"
#include "sgframe/partition_tree.hpp"

namespace sgf {

enum class SignalKind { piecewise_constant, bandlimited, path };

std::string to_string(SignalKind kind);
/// Accepts "piecewise-constant", "bandlimited", "path"; throws InputError.
SignalKind parse_signal_kind(const std::string& name);

struct SignalOptions {
  /// Number of lowest Laplacian eigenvectors mixed by bandlimited signals.
  int bandlimited_modes = 5;
  /// White noise added to path signals, in dB; none when empty.
  std::optional<double> path_snr_db;
};

/// Largest graph for which bandlimited signals are generated (dense
/// eigendecomposition of the full Laplacian).
inline constexpr int kMaxBandlimitedVertices = 4000;

/// Deterministic per seed.
///  - piecewise-constant: an N(0, 1) constant per cluster of level ceil(J/2)
///  - bandlimited: N(0, 1) combination of the lowest Laplacian eigenvectors
///  - path: indicator of a hop-shortest path between a random source and a
///    random vertex reachable from it
Eigen::VectorXd gen_signal(const PartitionTree& t, SignalKind kind, std::uint64_t seed,
                           const SignalOptions& options = {});

struct ApproxResult {
  int K = 0;
  double relative_error = 0.0;
  Variant variant = Variant::haar;
  int m = 0;
  double wall_ms = 0.0;
};

/// Indices of the K largest |coefs|, ties broken by lower index, in
/// selection order.
std::vector<int> select_largest(const Eigen::VectorXd& coefs, int K);

/// Best K-term approximation by hard thresholding the canonical frame
/// coefficients atoms * f. Throws InputError unless 0 <= K <= m.
std::pair<Eigen::VectorXd, ApproxResult> nl_approx(const Eigen::VectorXd& f,
                                                   const FrameAtoms& fa, int K);

/// nl_approx for every K of the grid, sharing one coefficient ranking.
std::vector<ApproxResult> nl_approx_curve(const Eigen::VectorXd& f, const FrameAtoms& fa,
                                          std::span<const int> Ks);

struct BenchGraphSpec {
  std::string name;
  std::string path;       // graph file, or empty for a generator
  std::string generator;  // "random-regular" | "random-connected" | "grid" | "path" | "cycle"
  int n = 0;
  int degree = 4;
  double edge_probability = 0.05;
  int rows = 0;
  int cols = 0;
  std::uint64_t seed = 1;
  int branching = 2;
  bool connected_clusters = true;
};

struct BenchVariantSpec {
  Variant variant = Variant::haar;
  std::vector<int> r_schedule;
  std::string label;  // defaults to the variant name
};

struct BenchConfig {
  std::vector<BenchGraphSpec> graphs;
  std::vector<BenchVariantSpec> variants;
  std::vector<SignalKind> signals;
  /// K grid; -1 stands for m. Entries above m are skipped.
  std::vector<int> K;
  std::vector<std::uint64_t> seeds;
  SignalOptions signal_options;
  bool record_timing = true;
  /// Directory for per-curve two-column plot files; none when empty.
  std::string plot_dir;
};

/// Relative graph paths are resolved against `base_dir`.
BenchConfig parse_bench_config(const std::string& json_text, const std::string& base_dir = "");

struct BenchRow {
  std::string graph;
  std::string variant;
  std::string signal;
  std::uint64_t seed = 0;
  int K = 0;
  int m = 0;
  double rel_error = 0.0;
  double analyze_ms = 0.0;
  double build_ms = 0.0;
};

struct TimingRow {
  std::string graph;
  std::string variant;
  int n = 0;
  int m = 0;
  double tree_ms = 0.0;
  double frame_ms = 0.0;
  double analyze_ms = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<TimingRow> timings;
  /// (file name, contents) of per-curve plot data.
  std::vector<std::pair<std::string, std::string>> plots;
};

/// Rows come out in config order: graph, variant, signal, seed, K.
/// With record_timing off the time columns are zero so output is
/// byte-reproducible.
BenchResult run_benchmark(const BenchConfig& config);

/// Header: graph,variant,signal,seed,K,m,rel_error,analyze_ms,build_ms
std::string format_bench_csv(const std::vector<BenchRow>& rows);
std::string format_timing_csv(const std::vector<TimingRow>& rows);

} // namespace sgf

#endif // SGFRAME_BENCH_HPP
