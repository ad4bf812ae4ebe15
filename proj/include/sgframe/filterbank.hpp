#ifndef SGFRAME_FILTERBANK_HPP
#define SGFRAME_FILTERBANK_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sgframe/graph.hpp"
#include "sgframe/partition_tree.hpp"

namespace sgf {

enum class Variant { haar, eigen, tree };

std::string to_string(Variant v);
/// Throws InputError for unknown names.
Variant parse_variant(const std::string& name);

/// Low-pass A (r x c) and high-pass B (m x c) filters of one tree node.
/// A frame can be built from the pair when A has orthonormal rows, B A^T = 0
/// and B^T B = I - A^T A.
struct FilterPair {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Variant variant = Variant::haar;
  int level = -1;
  int index = -1;

  int cluster_size() const { return static_cast<int>(A.cols()); }
};

/// A = 1/sqrt(c) [1 ... 1]; one row of B per pair s < t with +1/sqrt(c) at s
/// and -1/sqrt(c) at t, rows ordered lexicographically by (s, t).
FilterPair haar_filterbank(int c);

/// Row index of pair (s, t), 0-based, in the Haar high-pass filter.
int haar_pair_row(int s, int t, int c);

struct EigenFilterOptions {
  /// Accept disconnected subgraphs (eigenspace of 0 is then basis-dependent).
  bool allow_disconnected = false;
};

/// Rows of A are the first r Laplacian eigenvectors of `sub`, rows of B the
/// remaining c - r.
FilterPair eigen_filterbank(const Graph& sub, int r, const EigenFilterOptions& options = {});

/// A is the constant vector. B stacks the c - 1 non-constant Laplacian
/// eigenvectors of every member of spanning_tree_family(sub), scaled by
/// 1/sqrt(N) for a family of N members.
FilterPair tree_filterbank(const Graph& sub,
                           SpanningTreeKind kind = SpanningTreeKind::minimum);

struct UepReport {
  double a_orthonormality = 0.0;  ///< max |A A^T - I|
  double orthogonality = 0.0;     ///< max |B A^T|
  double complement = 0.0;        ///< max |B^T B - (I - A^T A)|
  bool shape_ok = true;
  bool passed = false;
};

UepReport verify_uep(const FilterPair& fp, double tol);

/// Filter pairs of every non-leaf node, pairs[j][k].
struct FilterBanks {
  Variant variant = Variant::haar;
  std::vector<int> r_schedule;  // r_j for j = 0..J-1
  std::vector<std::vector<FilterPair>> pairs;

  const FilterPair& at(int level, int index) const {
    return pairs.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(index));
  }
};

struct FilterBankOptions {
  /// Per-level r_j for the eigen variant. A single entry applies to every
  /// level; empty means r = 1. Ignored by the haar and tree variants.
  std::vector<int> r_schedule;
  SpanningTreeKind spanning_tree = SpanningTreeKind::minimum;
  bool allow_disconnected = false;
  double uep_tolerance = 1e-8;
};

/// Throws ConfigError when r_j is outside 1..min_k |C_{j,k}| - 1,
/// ConnectivityError naming the node when a tree (or, by default, eigen)
/// variant meets a disconnected subgraph, and NumericalError if a produced
/// pair fails verify_uep.
FilterBanks make_filterbanks(const PartitionTree& t, Variant variant,
                             const FilterBankOptions& options = {});

/// Debug dump: one MatrixMarket array file per filter, A_j_k.mtx / B_j_k.mtx.
void dump_filterbanks(const FilterBanks& banks, const std::string& directory);

std::string format_matrix_market_array(const Eigen::MatrixXd& m);

} // namespace sgf

#endif // SGFRAME_FILTERBANK_HPP
