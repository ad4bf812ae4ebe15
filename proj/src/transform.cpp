#include "sgframe/transform.hpp"

#include <string>

#include "sgframe/error.hpp"
#include "sgframe/parallel.hpp"

namespace sgf {

namespace {

std::vector<Eigen::Index> level_dimensions(const PartitionTree& t, const FilterBanks& banks) {
  const int J = t.depth();
  if (static_cast<int>(banks.pairs.size()) != J) {
    throw InputError("filter banks cover " + std::to_string(banks.pairs.size()) +
                     " levels, tree has " + std::to_string(J));
  }
  std::vector<Eigen::Index> R(static_cast<std::size_t>(J) + 1, 1);
  for (int j = J - 1; j >= 0; --j) {
    if (static_cast<int>(banks.pairs[static_cast<std::size_t>(j)].size()) != t.num_nodes(j)) {
      throw InputError("filter banks do not match tree level " + std::to_string(j));
    }
    R[static_cast<std::size_t>(j)] = banks.at(j, 0).A.rows() * R[static_cast<std::size_t>(j) + 1];
  }
  return R;
}

// Row-major flattening of a matrix product.
Eigen::VectorXd vec_rows(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(m.size());
  for (Eigen::Index a = 0; a < m.rows(); ++a) out.segment(a * m.cols(), m.cols()) = m.row(a).transpose();
  return out;
}

Eigen::MatrixXd unvec_rows(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index a = 0; a < rows; ++a) m.row(a) = v.segment(a * cols, cols).transpose();
  return m;
}

} // namespace

CoefficientTree analyze(const Eigen::VectorXd& f, const PartitionTree& t, const FilterBanks& banks) {
  const int J = t.depth();
  const int n = t.num_vertices();
  if (f.size() != n) {
    throw InputError("signal has " + std::to_string(f.size()) + " entries, graph has " +
                     std::to_string(n) + " vertices");
  }
  const auto R = level_dimensions(t, banks);
  CoefficientTree coef;
  coef.c.resize(static_cast<std::size_t>(J) + 1);
  coef.d.resize(static_cast<std::size_t>(J));
  auto& leaves = coef.c[static_cast<std::size_t>(J)];
  leaves.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) leaves[static_cast<std::size_t>(i)] = Eigen::VectorXd::Constant(1, f[i]);

  for (int j = J - 1; j >= 0; --j) {
    const auto width = R[static_cast<std::size_t>(j) + 1];
    const auto& below = coef.c[static_cast<std::size_t>(j) + 1];
    auto& cs = coef.c[static_cast<std::size_t>(j)];
    auto& ds = coef.d[static_cast<std::size_t>(j)];
    cs.resize(static_cast<std::size_t>(t.num_nodes(j)));
    ds.resize(cs.size());
    parallel_for(cs.size(), [&](std::size_t k) {
      const auto& children = t.levels[static_cast<std::size_t>(j)][k].children;
      const auto& fp = banks.pairs[static_cast<std::size_t>(j)][k];
      if (fp.A.cols() != static_cast<Eigen::Index>(children.size())) {
        throw InputError("filters of node (" + std::to_string(j) + ", " + std::to_string(k) +
                         ") do not match its children");
      }
      Eigen::MatrixXd X(static_cast<Eigen::Index>(children.size()), width);
      for (std::size_t i = 0; i < children.size(); ++i) {
        X.row(static_cast<Eigen::Index>(i)) = below[static_cast<std::size_t>(children[i])].transpose();
      }
      cs[k] = vec_rows(fp.A * X);
      ds[k] = fp.B.rows() > 0 ? vec_rows(fp.B * X) : Eigen::VectorXd();
    }, 512);
  }
  return coef;
}

Eigen::VectorXd synthesize(const CoefficientTree& coef, const PartitionTree& t,
                           const FilterBanks& banks) {
  const int J = t.depth();
  const auto R = level_dimensions(t, banks);
  if (coef.c.empty() || coef.c[0].size() != 1 || coef.c[0][0].size() != R[0]) {
    throw InputError("coefficients: level-0 vector must have " + std::to_string(R[0]) + " entries");
  }
  if (static_cast<int>(coef.d.size()) != J) {
    throw InputError("coefficients: expected detail vectors for " + std::to_string(J) + " levels");
  }
  std::vector<Eigen::VectorXd> current{coef.c[0][0]};
  for (int j = 0; j < J; ++j) {
    const auto width = R[static_cast<std::size_t>(j) + 1];
    const auto& ds = coef.d[static_cast<std::size_t>(j)];
    if (static_cast<int>(ds.size()) != t.num_nodes(j)) {
      throw InputError("coefficients: level " + std::to_string(j) + " has " +
                       std::to_string(ds.size()) + " detail vectors");
    }
    std::vector<Eigen::VectorXd> next(static_cast<std::size_t>(t.num_nodes(j + 1)));
    parallel_for(current.size(), [&](std::size_t k) {
      const auto& children = t.levels[static_cast<std::size_t>(j)][k].children;
      const auto& fp = banks.pairs[static_cast<std::size_t>(j)][k];
      if (ds[k].size() != fp.B.rows() * width) {
        throw InputError("coefficients: detail vector of node (" + std::to_string(j) + ", " +
                         std::to_string(k) + ") has " + std::to_string(ds[k].size()) +
                         " entries, expected " + std::to_string(fp.B.rows() * width));
      }
      Eigen::MatrixXd Y = fp.A.transpose() * unvec_rows(current[k], fp.A.rows(), width);
      if (fp.B.rows() > 0) Y += fp.B.transpose() * unvec_rows(ds[k], fp.B.rows(), width);
      for (std::size_t i = 0; i < children.size(); ++i) {
        next[static_cast<std::size_t>(children[i])] = Y.row(static_cast<Eigen::Index>(i)).transpose();
      }
    }, 512);
    current = std::move(next);
  }
  Eigen::VectorXd f(t.num_vertices());
  for (int i = 0; i < t.num_vertices(); ++i) f[i] = current[static_cast<std::size_t>(i)][0];
  return f;
}

Eigen::VectorXd flatten(const CoefficientTree& coef) {
  Eigen::Index total = coef.c.at(0).at(0).size();
  for (const auto& level : coef.d) {
    for (const auto& d : level) total += d.size();
  }
  Eigen::VectorXd out(total);
  Eigen::Index pos = 0;
  out.head(coef.c[0][0].size()) = coef.c[0][0];
  pos += coef.c[0][0].size();
  for (const auto& level : coef.d) {
    for (const auto& d : level) {
      out.segment(pos, d.size()) = d;
      pos += d.size();
    }
  }
  return out;
}

CoefficientTree unflatten(const Eigen::VectorXd& flat, const PartitionTree& t,
                          const FilterBanks& banks) {
  const int J = t.depth();
  const auto R = level_dimensions(t, banks);
  Eigen::Index total = R[0];
  for (int j = 0; j < J; ++j) {
    for (int k = 0; k < t.num_nodes(j); ++k) total += banks.at(j, k).B.rows() * R[static_cast<std::size_t>(j) + 1];
  }
  if (flat.size() != total) {
    throw InputError("flat coefficient vector has " + std::to_string(flat.size()) +
                     " entries, frame has " + std::to_string(total) + " atoms");
  }
  CoefficientTree coef;
  coef.c.resize(static_cast<std::size_t>(J) + 1);
  coef.c[0] = {flat.head(R[0])};
  coef.d.resize(static_cast<std::size_t>(J));
  Eigen::Index pos = R[0];
  for (int j = 0; j < J; ++j) {
    for (int k = 0; k < t.num_nodes(j); ++k) {
      const auto len = banks.at(j, k).B.rows() * R[static_cast<std::size_t>(j) + 1];
      coef.d[static_cast<std::size_t>(j)].push_back(flat.segment(pos, len));
      pos += len;
    }
  }
  return coef;
}

Eigen::VectorXd analyze_dense(const Eigen::VectorXd& f, const FrameAtoms& fa) {
  if (f.size() != fa.atoms.cols()) {
    throw InputError("signal has " + std::to_string(f.size()) + " entries, frame acts on R^" +
                     std::to_string(fa.atoms.cols()));
  }
  return fa.atoms * f;
}

Eigen::VectorXd synthesize_dense(const Eigen::VectorXd& coefs, const FrameAtoms& fa) {
  if (coefs.size() != fa.atoms.rows()) {
    throw InputError("coefficient vector has " + std::to_string(coefs.size()) + " entries, frame has " +
                     std::to_string(fa.atoms.rows()) + " atoms");
  }
  return fa.atoms.transpose() * coefs;
}

} // namespace sgf
