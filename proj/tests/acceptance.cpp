// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Details after the verdict explain what was measured.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"

#include "sgframe/bench.hpp"
#include "sgframe/parallel.hpp"
#include "sgframe/transform.hpp"

using namespace sgf;
using fixtures::max_abs;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

std::string sci(double x) { return fmt("%.2e", x); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SuiteEntry {
  Graph graph;
  PartitionTree tree;
};

const std::vector<SuiteEntry>& suite() {
  static const std::vector<SuiteEntry> s = [] {
    std::vector<SuiteEntry> out;
    for (int seed = 1; seed <= 50; ++seed) {
      Graph g = fixtures::suite_graph(seed);
      PartitionTree t = build_partition_tree(g, {2 + seed % 3, true});
      out.push_back({std::move(g), std::move(t)});
    }
    return out;
  }();
  return s;
}

// Trees beyond the random suite: hand fixture, grids, cycles.
std::vector<PartitionTree> extra_fixtures() {
  std::vector<PartitionTree> out{fixtures::four_vertex_tree(),
                                 partition_tree_from_groupings(fixtures::triangle(), {{{0, 1, 2}}})};
  out.push_back(build_partition_tree(grid_graph(8, 9), {2, true}));
  out.push_back(build_partition_tree(grid_graph(5, 5), {4, true}));
  out.push_back(build_partition_tree(cycle_graph(16), {2, true}));
  out.push_back(build_partition_tree(complete_graph(7), {3, true}));
  return out;
}

Eigen::MatrixXd dense(const FrameAtoms& fa) { return Eigen::MatrixXd(fa.atoms); }

// ---------------------------------------------------------------------------

Outcome uep_suite() {
  const auto t0 = Clock::now();
  double comp = 0, orth = 0, arow = 0;
  long pairs = 0, r2_nodes = 0;
  auto account = [&](const FilterPair& fp) {
    const UepReport rep = verify_uep(fp, 1e-8);
    comp = std::max(comp, rep.complement);
    orth = std::max(orth, rep.orthogonality);
    arow = std::max(arow, rep.a_orthonormality);
    ++pairs;
  };
  for (const auto& e : suite()) {
    const auto& t = e.tree;
    for (Variant v : {Variant::haar, Variant::eigen, Variant::tree}) {
      const FilterBanks banks = make_filterbanks(t, v);
      for (const auto& level : banks.pairs) {
        for (const auto& fp : level) account(fp);
      }
    }
    // Eigen with r = 2 on every node large enough, independent of the level schedule.
    for (int j = 0; j < t.depth(); ++j) {
      for (std::size_t k = 0; k < t.levels[static_cast<std::size_t>(j)].size(); ++k) {
        const auto view = subgraph_of(t, j, static_cast<int>(k));
        if (view.subgraph.num_vertices() >= 3) {
          account(eigen_filterbank(view.subgraph, 2));
          ++r2_nodes;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = comp <= 1e-8 && orth <= 1e-10 && arow <= 1e-10 && secs < 60;
  o.detail = std::to_string(pairs) + " filter pairs (" + std::to_string(r2_nodes) + " eigen r=2); max complement " +
             sci(comp) + ", max |B A^T| " + sci(orth) + ", max A-row deviation " + sci(arow) + ", " +
             fmt("%.2f", secs) + " s";
  return o;
}

Outcome tightness() {
  const auto t0 = Clock::now();
  double gram = 0, recon = 0;
  long frames = 0;
  for (const auto& e : suite()) {
    const auto& t = e.tree;
    const int n = t.num_vertices();
    for (const auto& fc : fixtures::frame_cases(t)) {
      const FrameAtoms fa = build_frame(t, fixtures::banks_for(t, fc));
      gram = std::max(gram, verify_tight(fa, 1e-8).gram_deviation);
      for (int s = 0; s < 100; ++s) {
        const Eigen::VectorXd f = fixtures::random_signal(n, 10000 * frames + s);
        const Eigen::VectorXd coef = fa.atoms * f;
        const Eigen::VectorXd back = fa.atoms.transpose() * coef;
        recon = std::max(recon, (back - f).norm() / f.norm());
      }
      ++frames;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = gram <= 1e-8 && recon <= 1e-8 && secs < 300;
  o.detail = std::to_string(frames) + " frames x 100 signals; max |atoms^T atoms - I| " + sci(gram) +
             ", max reconstruction error " + sci(recon) + ", " + fmt("%.2f", secs) + " s";
  return o;
}

Outcome oracle_equivalence() {
  std::vector<PartitionTree> trees;
  for (const auto& e : suite()) trees.push_back(e.tree);
  for (auto& t : extra_fixtures()) trees.push_back(std::move(t));
  double worst_a = 0, worst_s = 0;
  long frames = 0;
  for (const auto& t : trees) {
    for (const auto& fc : fixtures::frame_cases(t)) {
      const FilterBanks banks = fixtures::banks_for(t, fc);
      const FrameAtoms built = build_frame(t, banks);
      const FrameAtoms fa = parse_frame(format_frame_matrix(built), format_frame_index(built));
      for (int s = 0; s < 5; ++s) {
        const Eigen::VectorXd f = fixtures::random_signal(t.num_vertices(), 300 + s);
        const Eigen::VectorXd fast = flatten(analyze(f, t, banks));
        const Eigen::VectorXd slow = fa.atoms * f;
        worst_a = std::max(worst_a, (fast - slow).norm() / slow.norm());
        const Eigen::VectorXd g = fixtures::random_signal(fa.num_atoms(), 900 + s);
        const Eigen::VectorXd fs = synthesize(unflatten(g, t, banks), t, banks);
        const Eigen::VectorXd ss = fa.atoms.transpose() * g;
        worst_s = std::max(worst_s, (fs - ss).norm() / ss.norm());
      }
      ++frames;
    }
  }
  Outcome o;
  o.pass = worst_a <= 1e-10 && worst_s <= 1e-10;
  o.detail = std::to_string(frames) + " exported frames; max relative analyze gap " + sci(worst_a) +
             ", synthesize gap " + sci(worst_s);
  return o;
}

Outcome hand_fixture() {
  const PartitionTree t = fixtures::four_vertex_tree();
  const FilterBanks banks = make_filterbanks(t, Variant::haar);
  const FrameAtoms fa = build_frame(t, banks);
  const double s = 1 / std::sqrt(2.0);
  Eigen::MatrixXd expected(4, 4);
  expected << 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, -0.5, -0.5, s, -s, 0, 0, 0, 0, s, -s;
  const double atom_err = fa.num_atoms() == 4 ? max_abs(dense(fa) - expected) : 1e300;

  const CoefficientTree c = analyze(Eigen::VectorXd::Unit(4, 0), t, banks);
  const double coef_err = std::max({std::abs(c.c[0][0][0] - 0.5), std::abs(c.d[1][0][0] - s),
                                    std::abs(c.d[1][1][0]), std::abs(c.d[0][0][0] - 0.5)});
  Outcome o;
  o.pass = atom_err <= 1e-12 && coef_err <= 1e-12;
  o.detail = "m = " + std::to_string(fa.num_atoms()) + "; max atom error " + sci(atom_err) +
             ", analyze(e_1) error " + sci(coef_err);
  return o;
}

Outcome special_cases() {
  // (a) Haar on all-binary trees.
  bool a_ok = true;
  double a_dev = 0;
  for (int k = 1; k <= 8; ++k) {
    const int n = 1 << k;
    std::vector<std::vector<std::vector<int>>> groupings;
    for (int size = n; size > 1; size /= 2) {
      std::vector<std::vector<int>> level;
      for (int i = 0; i < size; i += 2) level.push_back({i, i + 1});
      groupings.push_back(level);
    }
    const PartitionTree t =
        partition_tree_from_groupings(random_connected_graph(n, 4.0 / n, static_cast<std::uint64_t>(k)), groupings);
    const FrameAtoms fa = build_frame(t, make_filterbanks(t, Variant::haar));
    a_ok = a_ok && fa.num_atoms() == n;
    const Eigen::MatrixXd M = dense(fa);
    a_dev = std::max(a_dev, max_abs(M * M.transpose() - Eigen::MatrixXd::Identity(M.rows(), M.rows())));
  }
  a_ok = a_ok && a_dev <= 1e-8;

  // (b) Eigen with full complements, every legal uniform r.
  bool b_ok = true;
  long b_frames = 0;
  for (const auto& e : suite()) {
    const int rmax = fixtures::max_uniform_r(e.tree);
    for (int r = 1; r <= std::min(rmax, 3); ++r) {
      FilterBankOptions opts;
      opts.r_schedule = {r};
      const FrameAtoms fa = build_frame(e.tree, make_filterbanks(e.tree, Variant::eigen, opts));
      b_ok = b_ok && fa.num_atoms() == e.tree.num_vertices();
      ++b_frames;
    }
  }

  // (c) Two-element clusters agree across variants up to row sign.
  auto same = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (max_abs(x.row(i) - y.row(i)) > 1e-12 && max_abs(x.row(i) + y.row(i)) > 1e-12) return false;
    }
    return true;
  };
  bool c_ok = true;
  long c_nodes = 0;
  for (const auto& e : suite()) {
    const auto& t = e.tree;
    const FilterBanks h = make_filterbanks(t, Variant::haar);
    const FilterBanks g = make_filterbanks(t, Variant::eigen);
    const FilterBanks tr = make_filterbanks(t, Variant::tree);
    for (int j = 0; j < t.depth(); ++j) {
      for (std::size_t k = 0; k < t.levels[static_cast<std::size_t>(j)].size(); ++k) {
        if (t.levels[static_cast<std::size_t>(j)][k].children.size() != 2) continue;
        const auto& a = h.at(j, static_cast<int>(k));
        const auto& b = g.at(j, static_cast<int>(k));
        const auto& c = tr.at(j, static_cast<int>(k));
        c_ok = c_ok && same(a.A, b.A) && same(a.A, c.A) && same(a.B, b.B) && same(a.B, c.B);
        ++c_nodes;
      }
    }
  }
  Outcome o;
  o.pass = a_ok && b_ok && c_ok;
  o.detail = std::string("(a) ") + (a_ok ? "ok" : "FAIL") + ", max |M M^T - I| " + sci(a_dev) + "; (b) " +
             (b_ok ? "ok" : "FAIL") + " over " + std::to_string(b_frames) + " frames; (c) " + (c_ok ? "ok" : "FAIL") +
             " over " + std::to_string(c_nodes) + " two-child nodes";
  return o;
}

Outcome vanishing_moments() {
  double ba = 0;
  double d_finest = 0, d_all = 0, d_balanced = 0;
  int failing_trees = 0, trees = 0, balanced = 0;
  std::string example;
  auto subtree_sizes_uniform = [](const PartitionTree& t) {
    for (int j = 0; j < t.depth(); ++j) {
      for (const auto& nd : t.levels[static_cast<std::size_t>(j)]) {
        std::set<std::size_t> sizes;
        for (int c : nd.children) {
          sizes.insert(t.levels[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(c)].members.size());
        }
        if (sizes.size() > 1) return false;
      }
    }
    return true;
  };
  std::vector<PartitionTree> trees_to_check;
  for (const auto& e : suite()) trees_to_check.push_back(e.tree);
  trees_to_check.push_back(build_partition_tree(cycle_graph(16), {2, true}));
  trees_to_check.push_back(build_partition_tree(cycle_graph(27), {3, true}));
  trees_to_check.push_back(fixtures::four_vertex_tree());
  for (const auto& t : trees_to_check) {
    if (!validate_partition_tree(t, true).passed()) continue;
    ++trees;
    const bool uniform = subtree_sizes_uniform(t);
    balanced += uniform;
    double tree_worst = 0;
    for (const auto& fc : fixtures::frame_cases(t)) {
      const FilterBanks banks = fixtures::banks_for(t, fc);
      for (const auto& level : banks.pairs) {
        for (const auto& fp : level) ba = std::max(ba, max_abs(fp.B * fp.A.transpose()));
      }
      const CoefficientTree coef = analyze(Eigen::VectorXd::Ones(t.num_vertices()), t, banks);
      for (int j = 0; j < t.depth(); ++j) {
        for (const auto& d : coef.d[static_cast<std::size_t>(j)]) {
          const double v = d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
          tree_worst = std::max(tree_worst, v);
          if (j == t.depth() - 1) d_finest = std::max(d_finest, v);
          if (uniform) d_balanced = std::max(d_balanced, v);
          if (v > 1e-10 && example.empty()) {
            example = "first nonzero: " + fc.label + " level " + std::to_string(j) + " of J=" +
                      std::to_string(t.depth()) + ", |d| " + sci(v);
          }
        }
      }
    }
    d_all = std::max(d_all, tree_worst);
    failing_trees += tree_worst > 1e-10;
  }
  Outcome o;
  o.pass = ba <= 1e-10 && d_all <= 1e-10;
  o.detail = "max |B A^T| " + sci(ba) + "; constant signal: max |d| at level J-1 " + sci(d_finest) +
             ", on " + std::to_string(balanced) + " size-balanced trees " + sci(d_balanced) + ", over all levels " +
             sci(d_all) + " (" + std::to_string(failing_trees) + "/" + std::to_string(trees) +
             " trees nonzero; coarse coefficients scale with subtree size)" + (example.empty() ? "" : "; " + example);
  return o;
}

Outcome supports() {
  long atoms = 0, violations = 0, blocks = 0, bad_blocks = 0;
  std::vector<PartitionTree> trees;
  for (const auto& e : suite()) trees.push_back(e.tree);
  for (auto& t : extra_fixtures()) trees.push_back(std::move(t));
  for (const auto& t : trees) {
    for (const auto& fc : fixtures::frame_cases(t)) {
      const FrameAtoms fa = build_frame(t, fixtures::banks_for(t, fc));
      for (const auto& blk : fa.blocks) {
        ++blocks;
        const auto& members = t.levels[static_cast<std::size_t>(blk.level)][static_cast<std::size_t>(blk.node)].members;
        const std::set<int> sup(members.begin(), members.end());
        if (std::set<int>(blk.support.begin(), blk.support.end()) != sup) ++bad_blocks;
        for (int row = blk.first_row; row < blk.first_row + blk.rows; ++row, ++atoms) {
          for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(fa.atoms, row); it; ++it) {
            if (!sup.count(static_cast<int>(it.col()))) ++violations;
          }
        }
      }
    }
  }
  Outcome o;
  o.pass = violations == 0 && bad_blocks == 0;
  o.detail = std::to_string(atoms) + " atoms in " + std::to_string(blocks) + " blocks; " +
             std::to_string(violations) + " stored entries outside the cluster, " + std::to_string(bad_blocks) +
             " blocks with a wrong support list";
  return o;
}

Outcome tree_counting() {
  long graphs = 0, enumerated = 0, mismatches = 0;
  std::vector<Graph> subs;
  for (int seed = 1; seed <= 300; ++seed) {
    const int c = 2 + seed % 9;  // 2..10
    subs.push_back(random_connected_graph(c, 0.15 + 0.1 * (seed % 7), static_cast<std::uint64_t>(seed)));
  }
  for (const auto& e : suite()) {
    for (int j = 0; j < e.tree.depth(); ++j) {
      for (std::size_t k = 0; k < e.tree.levels[static_cast<std::size_t>(j)].size(); ++k) {
        Graph sg = subgraph_of(e.tree, j, static_cast<int>(k)).subgraph;
        if (sg.num_vertices() <= 10) subs.push_back(std::move(sg));
      }
    }
  }
  for (const Graph& g : subs) {
    ++graphs;
    const int c = g.num_vertices();
    const auto fam = spanning_tree_family(g);
    const std::size_t expect = g.is_tree() ? 1 : g.num_edges() - static_cast<std::size_t>(c) + 3;
    bool ok = fam.members.size() == expect;
    const FilterPair fp = tree_filterbank(g);
    ok = ok && fp.B.rows() == static_cast<Eigen::Index>(fam.members.size()) * (c - 1);
    if (c <= 6) {
      ++enumerated;
      const auto all = fixtures::all_spanning_trees(g);
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        if (fam.base && *fam.base == i) continue;
        ok = ok && std::find(all.begin(), all.end(), fam.members[i]) != all.end();
      }
      // Distinct members: the non-base members are distinct spanning trees.
      const std::size_t trees_in_family = fam.members.size() - (fam.base ? 1 : 0);
      ok = ok && trees_in_family <= all.size();
    }
    mismatches += !ok;
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = std::to_string(graphs) + " subgraphs (c <= 10), " + std::to_string(enumerated) +
             " checked against exhaustive enumeration; " + std::to_string(mismatches) + " mismatches";
  return o;
}

Outcome scaling() {
  set_max_threads(1);
  const std::vector<int> sizes{1000, 10000, 100000};
  std::vector<double> times;
  std::string detail;
  for (int n : sizes) {
    const Graph g = random_regular_graph(n, 4, 42);
    const PartitionTree t = build_partition_tree(g, {2, true});
    const FilterBanks banks = make_filterbanks(t, Variant::haar);
    const Eigen::VectorXd f = fixtures::random_signal(n, 5);
    double best = 1e300;
    const int reps = n >= 100000 ? 3 : 7;
    for (int r = 0; r < reps; ++r) {
      const auto t0 = Clock::now();
      const CoefficientTree coef = analyze(f, t, banks);
      best = std::min(best, seconds_since(t0));
      if (coef.c.empty()) best = 1e300;
    }
    times.push_back(best);
    detail += "n=" + std::to_string(n) + " " + fmt("%.4f", best) + " s; ";
  }
  set_max_threads(0);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    mx += std::log(double(sizes[i]));
    my += std::log(times[i]);
  }
  mx /= sizes.size();
  my /= sizes.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double dx = std::log(double(sizes[i])) - mx;
    sxy += dx * (std::log(times[i]) - my);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  Outcome o;
  o.pass = slope <= 1.3 && times.back() < 10.0;
  o.detail = detail + "log-log slope " + fmt("%.3f", slope);
  return o;
}

Outcome bench_sanity() {
  long curves = 0, redundant_curves = 0, orth_curves = 0;
  long redundant_bad = 0, orth_bad = 0;
  double worst_rise = 0, worst_end = 0, worst_oracle = 0;
  long oracle_instances = 0;
  for (const auto& e : suite()) {
    const auto& t = e.tree;
    for (const auto& fc : fixtures::frame_cases(t)) {
      const FrameAtoms fa = build_frame(t, fixtures::banks_for(t, fc));
      std::vector<int> Ks(static_cast<std::size_t>(fa.num_atoms() + 1));
      std::iota(Ks.begin(), Ks.end(), 0);
      const bool redundant = fa.num_atoms() > fa.n;
      for (SignalKind kind : {SignalKind::piecewise_constant, SignalKind::bandlimited, SignalKind::path}) {
        const Eigen::VectorXd f = gen_signal(t, kind, 7);
        const auto curve = nl_approx_curve(f, fa, Ks);
        double rise = 0;
        for (std::size_t i = 1; i < curve.size(); ++i) {
          rise = std::max(rise, curve[i].relative_error - curve[i - 1].relative_error);
        }
        worst_end = std::max(worst_end, curve.back().relative_error);
        ++curves;
        (redundant ? redundant_curves : orth_curves)++;
        if (rise > 1e-12) {
          (redundant ? redundant_bad : orth_bad)++;
          worst_rise = std::max(worst_rise, rise);
        }
      }
    }
  }
  // Small instances against a dense recomputation from the exported matrix.
  for (int seed = 1; seed <= 60; ++seed) {
    const int n = 4 + seed % 9;
    const PartitionTree t =
        build_partition_tree(random_connected_graph(n, 0.4, static_cast<std::uint64_t>(seed)), {2 + seed % 3, true});
    for (const auto& fc : fixtures::frame_cases(t)) {
      const FrameAtoms built = build_frame(t, fixtures::banks_for(t, fc));
      if (built.num_atoms() > 30) continue;
      const FrameAtoms fa = parse_frame(format_frame_matrix(built), format_frame_index(built));
      const Eigen::MatrixXd M = dense(fa);
      const Eigen::VectorXd f = gen_signal(t, SignalKind::path, static_cast<std::uint64_t>(seed));
      const Eigen::VectorXd c = M * f;
      std::vector<int> order(static_cast<std::size_t>(c.size()));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(c[a]) > std::abs(c[b]); });
      for (int K = 0; K <= fa.num_atoms(); ++K) {
        Eigen::VectorXd kept = Eigen::VectorXd::Zero(c.size());
        for (int i = 0; i < K; ++i) kept[order[static_cast<std::size_t>(i)]] = c[order[static_cast<std::size_t>(i)]];
        const double oracle = (f - M.transpose() * kept).norm() / f.norm();
        worst_oracle = std::max(worst_oracle, std::abs(nl_approx(f, built, K).second.relative_error - oracle));
      }
      ++oracle_instances;
    }
  }
  Outcome o;
  o.pass = orth_bad == 0 && redundant_bad == 0 && worst_end <= 1e-8 && worst_oracle <= 1e-12;
  o.detail = std::to_string(curves) + " curves; non-monotone: " + std::to_string(orth_bad) + "/" +
             std::to_string(orth_curves) + " orthonormal, " + std::to_string(redundant_bad) + "/" +
             std::to_string(redundant_curves) + " redundant (max rise " + sci(worst_rise) +
             "; thresholding canonical coefficients of a redundant frame is not monotone); max error at K=m " +
             sci(worst_end) + "; dense oracle gap " + sci(worst_oracle) + " on " + std::to_string(oracle_instances) +
             " small instances";
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "filter pairs satisfy the extension condition", uep_suite},
      {2, "frames are tight and reconstruct", tightness},
      {3, "fast transforms equal exported-matrix products", oracle_equivalence},
      {4, "four-vertex Haar fixture", hand_fixture},
      {5, "special cases (binary Haar, full eigen, c = 2)", special_cases},
      {6, "vanishing moments", vanishing_moments},
      {7, "compact support", supports},
      {8, "spanning tree family size", tree_counting},
      {9, "analysis runtime scaling", scaling},
      {10, "best-K approximation sanity", bench_sanity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %2d: %s  %s -- %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
