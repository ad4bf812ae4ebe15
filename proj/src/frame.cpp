#include "sgframe/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgframe/error.hpp"
#include "sgframe/parallel.hpp"

namespace sgf {

namespace {

std::string node_name(int j, int k) {
  return "(" + std::to_string(j) + ", " + std::to_string(k) + ")";
}

// Atoms of one node in support-local coordinates.
struct LocalBlock {
  std::vector<int> support;
  Eigen::MatrixXd values;  // rows x |support|
};

} // namespace

DecResult dec(std::span<const Eigen::MatrixXd> inputs, int r, const Eigen::MatrixXd& A,
              const Eigen::MatrixXd& B) {
  const auto m = static_cast<Eigen::Index>(inputs.size());
  if (m == 0) throw InputError("dec: no input subspaces");
  if (A.cols() != m || (B.rows() > 0 && B.cols() != m)) {
    throw InputError("dec: filters have " + std::to_string(A.cols()) + " columns for " +
                     std::to_string(m) + " inputs");
  }
  const auto width = inputs.front().cols();
  for (const auto& x : inputs) {
    if (x.rows() != r || x.cols() != width) {
      throw InputError("dec: every input must be " + std::to_string(r) + " x " +
                       std::to_string(width));
    }
  }
  DecResult out;
  out.low.resize(A.rows() * r, width);
  out.high.resize(B.rows() * r, width);
  Eigen::MatrixXd xi(m, width);
  for (int i = 0; i < r; ++i) {
    for (Eigen::Index c = 0; c < m; ++c) xi.row(c) = inputs[static_cast<std::size_t>(c)].row(i);
    const Eigen::MatrixXd low = A * xi;
    for (Eigen::Index a = 0; a < A.rows(); ++a) out.low.row(a * r + i) = low.row(a);
    if (B.rows() > 0) {
      const Eigen::MatrixXd high = B * xi;
      for (Eigen::Index b = 0; b < B.rows(); ++b) out.high.row(b * r + i) = high.row(b);
    }
  }
  return out;
}

long expected_atom_count(const PartitionTree& t, const FilterBanks& banks) {
  const int J = t.depth();
  std::vector<long> R(static_cast<std::size_t>(J) + 1, 1);
  for (int j = J - 1; j >= 0; --j) {
    R[static_cast<std::size_t>(j)] =
        banks.at(j, 0).A.rows() * R[static_cast<std::size_t>(j) + 1];
  }
  long m = R[0];
  for (int j = 0; j < J; ++j) {
    for (int k = 0; k < t.num_nodes(j); ++k) {
      m += banks.at(j, k).B.rows() * R[static_cast<std::size_t>(j) + 1];
    }
  }
  return m;
}

FrameAtoms build_frame(const PartitionTree& t, const FilterBanks& banks,
                       const BuildOptions& options) {
  const int J = t.depth();
  const int n = t.num_vertices();
  if (static_cast<int>(banks.pairs.size()) != J) {
    throw ConfigError("filter banks cover " + std::to_string(banks.pairs.size()) +
                      " levels, tree has " + std::to_string(J) + " non-leaf levels");
  }

  FrameConfig config;
  config.variant = banks.variant;
  config.r_schedule.resize(static_cast<std::size_t>(J));
  config.R.assign(static_cast<std::size_t>(J) + 1, 1);
  for (int j = J - 1; j >= 0; --j) {
    const auto& level = banks.pairs[static_cast<std::size_t>(j)];
    if (static_cast<int>(level.size()) != t.num_nodes(j)) {
      throw ConfigError("level " + std::to_string(j) + ": " + std::to_string(level.size()) +
                        " filter pairs for " + std::to_string(t.num_nodes(j)) + " nodes");
    }
    const auto r = level.front().A.rows();
    for (std::size_t k = 0; k < level.size(); ++k) {
      if (level[k].A.rows() != r) {
        throw ConfigError("level " + std::to_string(j) + ": node " + std::to_string(k) +
                          " has r = " + std::to_string(level[k].A.rows()) + ", level uses " +
                          std::to_string(r));
      }
    }
    config.r_schedule[static_cast<std::size_t>(j)] = static_cast<int>(r);
    config.R[static_cast<std::size_t>(j)] = r * config.R[static_cast<std::size_t>(j) + 1];
  }

  std::vector<LocalBlock> lows(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    lows[static_cast<std::size_t>(v)].support = {v};
    lows[static_cast<std::size_t>(v)].values = Eigen::MatrixXd::Ones(1, 1);
  }
  std::vector<std::vector<LocalBlock>> highs(static_cast<std::size_t>(J));

  for (int j = J - 1; j >= 0; --j) {
    const int count = t.num_nodes(j);
    const int r_next = static_cast<int>(config.R[static_cast<std::size_t>(j) + 1]);
    std::vector<LocalBlock> next_lows(static_cast<std::size_t>(count));
    auto& level_highs = highs[static_cast<std::size_t>(j)];
    level_highs.resize(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      const auto& nd = t.node(j, k);
      const auto& fp = banks.at(j, k);
      const auto c = static_cast<Eigen::Index>(nd.children.size());
      if (fp.A.cols() != c || (fp.B.rows() > 0 && fp.B.cols() != c)) {
        throw ConfigError("node " + node_name(j, k) + ": filters sized for " +
                          std::to_string(fp.A.cols()) + " children, node has " +
                          std::to_string(c));
      }
      const auto rep = verify_uep(fp, options.uep_tolerance);
      if (!rep.passed) {
        throw NumericalError("node " + node_name(j, k) +
                             ": filter pair fails the UEP check (A orthonormality " +
                             std::to_string(rep.a_orthonormality) + ", B A^T " +
                             std::to_string(rep.orthogonality) + ", complement " +
                             std::to_string(rep.complement) + ")");
      }

      std::vector<int> support;
      for (int child : nd.children) {
        const auto& cs = lows[static_cast<std::size_t>(child)].support;
        support.insert(support.end(), cs.begin(), cs.end());
      }
      const auto width = static_cast<Eigen::Index>(support.size());
      std::vector<Eigen::MatrixXd> inputs;
      inputs.reserve(static_cast<std::size_t>(c));
      Eigen::Index offset = 0;
      for (int child : nd.children) {
        const auto& cb = lows[static_cast<std::size_t>(child)];
        Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(r_next, width);
        padded.middleCols(offset, cb.values.cols()) = cb.values;
        offset += cb.values.cols();
        inputs.push_back(std::move(padded));
      }
      auto result = dec(inputs, r_next, fp.A, fp.B);
      next_lows[kk] = {support, std::move(result.low)};
      level_highs[kk] = {std::move(support), std::move(result.high)};
    }, 8);
    lows = std::move(next_lows);
  }

  FrameAtoms fa;
  fa.n = n;
  fa.config = config;
  std::vector<Eigen::Triplet<double>> triplets;
  int row = 0;
  const auto emit = [&](const LocalBlock& block, int level, int node, AtomKind kind) {
    AtomBlockInfo info{level, node, kind, row, static_cast<int>(block.values.rows()), block.support};
    for (Eigen::Index i = 0; i < block.values.rows(); ++i, ++row) {
      fa.index.push_back({level, node, kind, static_cast<int>(i)});
      for (Eigen::Index col = 0; col < block.values.cols(); ++col) {
        const double x = block.values(i, col);
        if (x != 0.0) triplets.emplace_back(row, block.support[static_cast<std::size_t>(col)], x);
      }
    }
    fa.blocks.push_back(std::move(info));
  };
  emit(lows.front(), 0, 0, AtomKind::low);
  for (int j = 0; j < J; ++j) {
    for (int k = 0; k < t.num_nodes(j); ++k) {
      emit(highs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)], j, k, AtomKind::high);
    }
  }
  fa.atoms.resize(row, n);
  fa.atoms.setFromTriplets(triplets.begin(), triplets.end());
  fa.atoms.makeCompressed();
  return fa;
}

TightnessReport verify_tight(const FrameAtoms& fa, double tol) {
  TightnessReport rep;
  const auto& rows = fa.atoms;
  const Eigen::Index n = rows.cols();
  if (n != fa.n || n == 0) {
    rep.gram_deviation = std::numeric_limits<double>::infinity();
    return rep;
  }

  // Column v of atoms^T atoms, one column at a time.
  const Eigen::SparseMatrix<double, Eigen::ColMajor> cols = rows;
  std::vector<double> column_dev(static_cast<std::size_t>(n), 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t vv) {
    thread_local std::vector<double> work;
    thread_local std::vector<Eigen::Index> touched;
    if (work.size() != static_cast<std::size_t>(n)) work.assign(static_cast<std::size_t>(n), 0.0);
    touched.clear();
    const auto v = static_cast<Eigen::Index>(vv);
    for (Eigen::SparseMatrix<double, Eigen::ColMajor>::InnerIterator it(cols, v); it; ++it) {
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator jt(rows, it.row()); jt; ++jt) {
        auto& w = work[static_cast<std::size_t>(jt.col())];
        if (w == 0.0) touched.push_back(jt.col());
        w += it.value() * jt.value();
      }
    }
    double dev = std::abs(work[vv] - 1.0);
    for (auto c : touched) {
      if (c != v) dev = std::max(dev, std::abs(work[static_cast<std::size_t>(c)]));
      work[static_cast<std::size_t>(c)] = 0.0;
    }
    work[vv] = 0.0;
    column_dev[vv] = dev;
  }, 256);
  rep.gram_deviation = *std::max_element(column_dev.begin(), column_dev.end());

  std::vector<char> inside(static_cast<std::size_t>(n), 0);
  for (const auto& block : fa.blocks) {
    for (int v : block.support) {
      if (v >= 0 && v < n) inside[static_cast<std::size_t>(v)] = 1;
    }
    for (int r = block.first_row; r < block.first_row + block.rows; ++r) {
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, r); it; ++it) {
        if (!inside[static_cast<std::size_t>(it.col())]) {
          rep.support_violations.push_back(r);
          break;
        }
      }
    }
    for (int v : block.support) {
      if (v >= 0 && v < n) inside[static_cast<std::size_t>(v)] = 0;
    }
  }

  // Phi_0 against every high-pass atom.
  const AtomBlockInfo* scaling = nullptr;
  for (const auto& block : fa.blocks) {
    if (block.kind == AtomKind::low && block.level == 0) scaling = &block;
  }
  if (scaling != nullptr) {
    const Eigen::MatrixXd phi = Eigen::MatrixXd(rows.middleRows(scaling->first_row, scaling->rows));
    for (const auto& block : fa.blocks) {
      if (block.kind != AtomKind::high || block.rows == 0) continue;
      const Eigen::MatrixXd inner = rows.middleRows(block.first_row, block.rows) * phi.transpose();
      rep.block_orthogonality = std::max(rep.block_orthogonality, inner.cwiseAbs().maxCoeff());
    }
  }

  rep.passed = rep.gram_deviation <= tol && rep.block_orthogonality <= tol &&
               rep.support_violations.empty();
  return rep;
}

} // namespace sgf
