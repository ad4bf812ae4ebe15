#ifndef SGFRAME_FRAME_HPP
#define SGFRAME_FRAME_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "sgframe/filterbank.hpp"
#include "sgframe/partition_tree.hpp"

namespace sgf {

enum class AtomKind { low, high };

/// One analysis step over m mutually orthogonal inputs, each given by r
/// orthonormal rows. With Xi_i the m x n stack of the i-th row of every
/// input, the low output row a * r + i is row a of A Xi_i and the high
/// output row b * r + i is row b of B Xi_i. Inputs and outputs share the
/// column space.
struct DecResult {
  Eigen::MatrixXd low;
  Eigen::MatrixXd high;
};

DecResult dec(std::span<const Eigen::MatrixXd> inputs, int r, const Eigen::MatrixXd& A,
              const Eigen::MatrixXd& B);

struct AtomIndex {
  int level = 0;
  int node = 0;
  AtomKind kind = AtomKind::low;
  int position = 0;

  friend bool operator==(const AtomIndex&, const AtomIndex&) = default;
};

/// A contiguous run of atoms that share an owner node and kind.
struct AtomBlockInfo {
  int level = 0;
  int node = 0;
  AtomKind kind = AtomKind::low;
  int first_row = 0;
  int rows = 0;
  std::vector<int> support;  // S_{j,k}

  friend bool operator==(const AtomBlockInfo&, const AtomBlockInfo&) = default;
};

struct FrameConfig {
  Variant variant = Variant::haar;
  std::vector<int> r_schedule;  // r_0..r_{J-1}
  std::vector<long> R;          // R_0..R_J

  friend bool operator==(const FrameConfig&, const FrameConfig&) = default;
};

/// The framelet system as an m x n row-major sparse matrix. Rows hold the
/// level-0 scaling atoms first, then high-pass atoms level by level, node by
/// node, in intra-block position order.
struct FrameAtoms {
  int n = 0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> atoms;
  std::vector<AtomIndex> index;
  std::vector<AtomBlockInfo> blocks;
  FrameConfig config;

  int num_atoms() const { return static_cast<int>(atoms.rows()); }
};

struct BuildOptions {
  double uep_tolerance = 1e-8;
};

/// Runs the level sweep J-1 .. 0 over the tree. Throws ConfigError for
/// missing or misshapen filters or levels whose A row counts differ, and
/// NumericalError naming the node whose pair fails the UEP check.
FrameAtoms build_frame(const PartitionTree& t, const FilterBanks& banks,
                       const BuildOptions& options = {});

/// Expected m = R_0 + sum_{j,k} m_{j,k} R_{j+1}.
long expected_atom_count(const PartitionTree& t, const FilterBanks& banks);

struct TightnessReport {
  double gram_deviation = 0.0;       ///< max |atoms^T atoms - I|
  double block_orthogonality = 0.0; ///< max |<phi, psi>| between Phi_0 and each Psi_j
  std::vector<int> support_violations;
  bool passed = false;
};

TightnessReport verify_tight(const FrameAtoms& fa, double tol);

/// Writes `path` (MatrixMarket coordinate real general) and a sidecar
/// `path + ".index.json"` with the row index, blocks and config.
void export_frame(const FrameAtoms& fa, const std::string& path);
FrameAtoms import_frame(const std::string& path);

std::string format_frame_matrix(const FrameAtoms& fa);
std::string format_frame_index(const FrameAtoms& fa);
FrameAtoms parse_frame(const std::string& matrix_text, const std::string& index_text);

std::string frame_index_path(const std::string& path);

} // namespace sgf

#endif // SGFRAME_FRAME_HPP
