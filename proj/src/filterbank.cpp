#include "sgframe/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "sgframe/error.hpp"
#include "sgframe/io_util.hpp"
#include "sgframe/parallel.hpp"

namespace sgf {

namespace {

std::string node_name(int j, int k) {
  return "(" + std::to_string(j) + ", " + std::to_string(k) + ")";
}

} // namespace

std::string to_string(Variant v) {
  switch (v) {
  case Variant::haar: return "haar";
  case Variant::eigen: return "eigen";
  case Variant::tree: return "tree";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "haar") return Variant::haar;
  if (name == "eigen") return Variant::eigen;
  if (name == "tree") return Variant::tree;
  throw InputError("unknown variant '" + name + "' (expected haar, eigen or tree)");
}

int haar_pair_row(int s, int t, int c) {
  // Pairs with first index < s come first: sum_{i<s} (c - 1 - i) rows.
  return s * (2 * c - s - 1) / 2 + (t - s - 1);
}

FilterPair haar_filterbank(int c) {
  if (c < 2) throw InputError("haar filterbank needs a cluster of size >= 2, got " + std::to_string(c));
  const double h = 1.0 / std::sqrt(static_cast<double>(c));
  FilterPair fp;
  fp.variant = Variant::haar;
  fp.A = Eigen::MatrixXd::Constant(1, c, h);
  fp.B = Eigen::MatrixXd::Zero(c * (c - 1) / 2, c);
  for (int s = 0; s < c; ++s) {
    for (int t = s + 1; t < c; ++t) {
      const int row = haar_pair_row(s, t, c);
      fp.B(row, s) = h;
      fp.B(row, t) = -h;
    }
  }
  return fp;
}

FilterPair eigen_filterbank(const Graph& sub, int r, const EigenFilterOptions& options) {
  const int c = sub.num_vertices();
  if (r < 1 || r > c - 1) {
    throw InputError("eigen filterbank: r = " + std::to_string(r) + " outside 1.." +
                     std::to_string(c - 1) + " for a subgraph of " + std::to_string(c) +
                     " vertices");
  }
  if (!options.allow_disconnected && !is_connected(sub)) {
    throw ConnectivityError("eigen filterbank: subgraph is disconnected; use the haar variant or "
                            "allow disconnected subgraphs");
  }
  const auto spec = spectrum(sub);
  FilterPair fp;
  fp.variant = Variant::eigen;
  fp.A = spec.vectors.topRows(r);
  fp.B = spec.vectors.bottomRows(c - r);
  return fp;
}

FilterPair tree_filterbank(const Graph& sub, SpanningTreeKind kind) {
  const int c = sub.num_vertices();
  if (c < 2) throw InputError("tree filterbank needs a subgraph of size >= 2, got " + std::to_string(c));
  if (!is_connected(sub)) throw ConnectivityError("tree filterbank: subgraph is disconnected");
  const auto family = spanning_tree_family(sub, kind);
  const auto N = static_cast<Eigen::Index>(family.members.size());
  FilterPair fp;
  fp.variant = Variant::tree;
  fp.A = Eigen::MatrixXd::Constant(1, c, 1.0 / std::sqrt(static_cast<double>(c)));
  fp.B.resize(N * (c - 1), c);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto spec = spectrum(family.members[static_cast<std::size_t>(i)]);
    fp.B.middleRows(i * (c - 1), c - 1) = scale * spec.vectors.bottomRows(c - 1);
  }
  return fp;
}

UepReport verify_uep(const FilterPair& fp, double tol) {
  UepReport rep;
  const auto c = fp.A.cols();
  if (fp.A.rows() < 1 || c < 1 || (fp.B.rows() > 0 && fp.B.cols() != c)) {
    rep.shape_ok = false;
    rep.passed = false;
    rep.a_orthonormality = rep.orthogonality = rep.complement =
        std::numeric_limits<double>::infinity();
    return rep;
  }
  const Eigen::MatrixXd I_r = Eigen::MatrixXd::Identity(fp.A.rows(), fp.A.rows());
  const Eigen::MatrixXd I_c = Eigen::MatrixXd::Identity(c, c);
  rep.a_orthonormality = (fp.A * fp.A.transpose() - I_r).cwiseAbs().maxCoeff();
  Eigen::MatrixXd btb = Eigen::MatrixXd::Zero(c, c);
  if (fp.B.rows() > 0) {
    rep.orthogonality = (fp.B * fp.A.transpose()).cwiseAbs().maxCoeff();
    btb = fp.B.transpose() * fp.B;
  }
  rep.complement = (btb - (I_c - fp.A.transpose() * fp.A)).cwiseAbs().maxCoeff();
  rep.passed = rep.a_orthonormality <= tol && rep.orthogonality <= tol && rep.complement <= tol;
  return rep;
}

FilterBanks make_filterbanks(const PartitionTree& t, Variant variant,
                             const FilterBankOptions& options) {
  const int J = t.depth();
  FilterBanks banks;
  banks.variant = variant;
  banks.r_schedule.assign(static_cast<std::size_t>(J), 1);
  if (variant == Variant::eigen && !options.r_schedule.empty()) {
    if (options.r_schedule.size() == 1) {
      banks.r_schedule.assign(static_cast<std::size_t>(J), options.r_schedule.front());
    } else if (static_cast<int>(options.r_schedule.size()) == J) {
      banks.r_schedule = options.r_schedule;
    } else {
      throw ConfigError("r schedule has " + std::to_string(options.r_schedule.size()) +
                        " entries for a tree with " + std::to_string(J) + " non-leaf levels");
    }
  }

  for (int j = 0; j < J; ++j) {
    int min_children = std::numeric_limits<int>::max();
    for (const auto& nd : t.levels[static_cast<std::size_t>(j)]) {
      min_children = std::min(min_children, static_cast<int>(nd.children.size()));
    }
    const int r = banks.r_schedule[static_cast<std::size_t>(j)];
    if (r < 1 || r > min_children - 1) {
      throw ConfigError("level " + std::to_string(j) + ": r = " + std::to_string(r) +
                        " must lie in 1.." + std::to_string(min_children - 1) +
                        " (smallest cluster has " + std::to_string(min_children) + " children)");
    }
  }

  banks.pairs.resize(static_cast<std::size_t>(J));
  for (int j = 0; j < J; ++j) {
    const int count = t.num_nodes(j);
    auto& level = banks.pairs[static_cast<std::size_t>(j)];
    level.resize(static_cast<std::size_t>(count));
    const int r = banks.r_schedule[static_cast<std::size_t>(j)];
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      FilterPair fp;
      try {
        switch (variant) {
        case Variant::haar:
          fp = haar_filterbank(static_cast<int>(t.node(j, k).children.size()));
          break;
        case Variant::eigen:
          fp = eigen_filterbank(subgraph_of(t, j, k).subgraph, r,
                                EigenFilterOptions{options.allow_disconnected});
          break;
        case Variant::tree:
          fp = tree_filterbank(subgraph_of(t, j, k).subgraph, options.spanning_tree);
          break;
        }
      } catch (const ConnectivityError& e) {
        throw ConnectivityError("node " + node_name(j, k) + ": " + e.what());
      } catch (const InputError& e) {
        throw ConfigError("node " + node_name(j, k) + ": " + e.what());
      }
      fp.level = j;
      fp.index = k;
      const auto rep = verify_uep(fp, options.uep_tolerance);
      if (!rep.passed) {
        throw NumericalError("node " + node_name(j, k) + ": filter pair fails the UEP check (" +
                             std::to_string(rep.complement) + ")");
      }
      level[kk] = std::move(fp);
    }, 16);
  }
  return banks;
}

std::string format_matrix_market_array(const Eigen::MatrixXd& m) {
  std::string out = "%%MatrixMarket matrix array real general\n";
  out += std::to_string(m.rows()) + ' ' + std::to_string(m.cols()) + '\n';
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out += format_double(m(r, c));
      out += '\n';
    }
  }
  return out;
}

void dump_filterbanks(const FilterBanks& banks, const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create directory '" + directory + "': " + ec.message());
  std::vector<std::pair<std::string, std::string>> files;
  for (std::size_t j = 0; j < banks.pairs.size(); ++j) {
    for (std::size_t k = 0; k < banks.pairs[j].size(); ++k) {
      const std::string suffix = std::to_string(j) + "_" + std::to_string(k) + ".mtx";
      const auto base = std::filesystem::path(directory);
      files.emplace_back((base / ("A_" + suffix)).string(),
                         format_matrix_market_array(banks.pairs[j][k].A));
      files.emplace_back((base / ("B_" + suffix)).string(),
                         format_matrix_market_array(banks.pairs[j][k].B));
    }
  }
  write_files_atomic(files);
}

} // namespace sgf
