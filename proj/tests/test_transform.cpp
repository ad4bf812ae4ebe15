#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"

#include "sgframe/error.hpp"
#include "sgframe/transform.hpp"

using namespace sgf;

namespace {

struct Setup {
  PartitionTree tree;
  fixtures::FrameCase fc;
  FilterBanks banks;
  FrameAtoms frame;
};

std::vector<Setup> random_setups(int count) {
  std::vector<Setup> out;
  for (int seed = 1; seed <= count; ++seed) {
    PartitionTree t = build_partition_tree(fixtures::suite_graph(seed), {2 + seed % 3, true});
    for (const auto& fc : fixtures::frame_cases(t)) {
      FilterBanks banks = fixtures::banks_for(t, fc);
      FrameAtoms fa = build_frame(t, banks);
      out.push_back({t, fc, std::move(banks), std::move(fa)});
    }
  }
  return out;
}

double rel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

} // namespace

TEST_CASE("constant signal on the four-vertex Haar fixture") {
  const PartitionTree t = fixtures::four_vertex_tree();
  const FilterBanks banks = make_filterbanks(t, Variant::haar);
  const CoefficientTree coef = analyze(Eigen::VectorXd::Ones(4), t, banks);
  CHECK(coef.c[0][0].size() == 1);
  CHECK(coef.c[0][0][0] == doctest::Approx(2.0));
  for (const auto& level : coef.d) {
    for (const auto& d : level) CHECK(d.cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("unit impulse on the four-vertex Haar fixture") {
  const PartitionTree t = fixtures::four_vertex_tree();
  const FilterBanks banks = make_filterbanks(t, Variant::haar);
  const CoefficientTree coef = analyze(Eigen::VectorXd::Unit(4, 0), t, banks);
  const double s = 1 / std::sqrt(2.0);
  CHECK(coef.c[0][0][0] == doctest::Approx(0.5));
  CHECK(coef.d[1][0][0] == doctest::Approx(s));
  CHECK(coef.d[1][1][0] == 0.0);
  CHECK(coef.d[0][0][0] == doctest::Approx(0.5));
  CHECK(coef.c[2][0][0] == 1.0);  // leaf coefficients are the signal values

  const Eigen::VectorXd back = synthesize(coef, t, banks);
  CHECK((back - Eigen::VectorXd::Unit(4, 0)).cwiseAbs().maxCoeff() <= 1e-15);

  const CoefficientTree only_top = unflatten(flatten(coef), t, banks);
  CHECK((synthesize(only_top, t, banks) - Eigen::VectorXd::Unit(4, 0)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("fast transforms match the frame matrix") {
  for (const auto& s : random_setups(12)) {
    CAPTURE(s.fc.label);
    const int n = s.tree.num_vertices();
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXd f = fixtures::random_signal(n, 77 + k);
      const CoefficientTree coef = analyze(f, s.tree, s.banks);
      const Eigen::VectorXd flat = flatten(coef);
      const Eigen::VectorXd oracle = analyze_dense(f, s.frame);
      CHECK(rel(flat, oracle) <= 1e-10);

      const Eigen::VectorXd g = fixtures::random_signal(s.frame.num_atoms(), 500 + k);
      const Eigen::VectorXd fast = synthesize(unflatten(g, s.tree, s.banks), s.tree, s.banks);
      CHECK(rel(fast, synthesize_dense(g, s.frame)) <= 1e-10);

      CHECK(rel(synthesize(coef, s.tree, s.banks), f) <= 1e-8);
      CHECK(rel(synthesize_dense(oracle, s.frame), f) <= 1e-8);
      CHECK(std::abs(flat.norm() - f.norm()) <= 1e-8 * f.norm());
    }
  }
}

TEST_CASE("coefficient shapes follow the r schedule") {
  for (const auto& s : random_setups(6)) {
    const CoefficientTree coef = analyze(fixtures::random_signal(s.tree.num_vertices(), 1), s.tree, s.banks);
    const auto& R = s.frame.config.R;
    for (int j = 0; j <= s.tree.depth(); ++j) {
      for (const auto& c : coef.c[static_cast<std::size_t>(j)]) CHECK(c.size() == R[static_cast<std::size_t>(j)]);
    }
    for (int j = 0; j < s.tree.depth(); ++j) {
      for (std::size_t k = 0; k < coef.d[static_cast<std::size_t>(j)].size(); ++k) {
        const auto& fp = s.banks.at(j, static_cast<int>(k));
        CHECK(coef.d[static_cast<std::size_t>(j)][k].size() == fp.B.rows() * R[static_cast<std::size_t>(j + 1)]);
      }
    }
  }
}

TEST_CASE("linearity and zero input") {
  for (const auto& s : random_setups(4)) {
    const int n = s.tree.num_vertices();
    const Eigen::VectorXd f = fixtures::random_signal(n, 1);
    const Eigen::VectorXd g = fixtures::random_signal(n, 2);
    const Eigen::VectorXd lhs = flatten(analyze(2.5 * f - 0.75 * g, s.tree, s.banks));
    const Eigen::VectorXd rhs = 2.5 * flatten(analyze(f, s.tree, s.banks)) - 0.75 * flatten(analyze(g, s.tree, s.banks));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));

    CHECK(flatten(analyze(Eigen::VectorXd::Zero(n), s.tree, s.banks)).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(s.frame.num_atoms());
    CHECK(synthesize(unflatten(zero, s.tree, s.banks), s.tree, s.banks).cwiseAbs().maxCoeff() == 0.0);
    CHECK(analyze_dense(Eigen::VectorXd::Zero(n), s.frame).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("locality of detail coefficients") {
  for (const auto& s : random_setups(5)) {
    const auto& t = s.tree;
    const int n = t.num_vertices();
    const Eigen::VectorXd f = fixtures::random_signal(n, 3);
    const CoefficientTree base = analyze(f, t, s.banks);
    // Perturb inside one cluster at level J-1 and one at level 1.
    for (int j : {t.depth() - 1, std::min(1, t.depth() - 1)}) {
      if (j < 0) continue;
      const auto& members = t.levels[static_cast<std::size_t>(j)][0].members;
      Eigen::VectorXd g = f;
      for (int v : members) g[v] += 1.0 + v;
      const CoefficientTree moved = analyze(g, t, s.banks);
      const std::set<int> touched(members.begin(), members.end());
      for (int jj = 0; jj < t.depth(); ++jj) {
        for (std::size_t k = 0; k < t.levels[static_cast<std::size_t>(jj)].size(); ++k) {
          const auto& mem = t.levels[static_cast<std::size_t>(jj)][k].members;
          bool intersects = false;
          for (int v : mem) intersects = intersects || touched.count(v);
          if (!intersects) CHECK(moved.d[static_cast<std::size_t>(jj)][k] == base.d[static_cast<std::size_t>(jj)][k]);
        }
      }
    }
  }
}

TEST_CASE("constant signals have vanishing detail at the finest level") {
  for (const auto& s : random_setups(10)) {
    const auto& t = s.tree;
    const CoefficientTree coef = analyze(Eigen::VectorXd::Constant(t.num_vertices(), 3.0), t, s.banks);
    if (t.depth() == 0) continue;
    for (const auto& d : coef.d[static_cast<std::size_t>(t.depth() - 1)]) {
      CHECK(d.cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("transforms reject mismatched lengths") {
  const PartitionTree t = fixtures::four_vertex_tree();
  const FilterBanks banks = make_filterbanks(t, Variant::haar);
  const FrameAtoms fa = build_frame(t, banks);
  CHECK_THROWS_AS(analyze(Eigen::VectorXd::Zero(3), t, banks), InputError);
  CHECK_THROWS_AS(analyze_dense(Eigen::VectorXd::Zero(5), fa), InputError);
  CHECK_THROWS_AS(synthesize_dense(Eigen::VectorXd::Zero(3), fa), InputError);
  CHECK_THROWS_AS(unflatten(Eigen::VectorXd::Zero(5), t, banks), InputError);
  CoefficientTree bad = analyze(Eigen::VectorXd::Ones(4), t, banks);
  bad.d[0][0] = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(synthesize(bad, t, banks), InputError);
}

TEST_CASE("coefficient files") {
  for (const auto& s : random_setups(3)) {
    const CoefficientTree coef = analyze(fixtures::random_signal(s.tree.num_vertices(), 4), s.tree, s.banks);
    const Eigen::VectorXd flat = flatten(coef);

    const CoefficientTree back = parse_coefficients_json(format_coefficients_json(coef), s.tree, s.banks);
    CHECK(flatten(back) == flat);

    const std::string bin = format_coefficients_binary(flat);
    CHECK(bin.size() == 16 + 8 * static_cast<std::size_t>(flat.size()));
    CHECK(bin.substr(0, 4) == "SGFC");
    CHECK(parse_coefficients_binary(bin) == flat);
    CHECK_THROWS_AS(parse_coefficients_binary(bin.substr(0, bin.size() - 3)), ParseError);
    CHECK_THROWS_AS(parse_coefficients_binary("XXXX" + bin.substr(4)), ParseError);
  }
  const PartitionTree t = fixtures::four_vertex_tree();
  const FilterBanks banks = make_filterbanks(t, Variant::haar);
  CHECK_THROWS_AS(parse_coefficients_json(R"({"c0":[1],"d":{"0:0":[1]}})", t, banks), ParseError);
  CHECK_THROWS_AS(parse_coefficients_json(R"({"c0":[1,2],"d":{"0:0":[1],"1:0":[1],"1:1":[1]}})", t, banks),
                  ParseError);
  CHECK_THROWS_AS(
      parse_coefficients_json(R"({"c0":[1],"d":{"0:0":[1],"1:0":[1],"1:1":[1],"2:0":[1]}})", t, banks),
      ParseError);
  CHECK_NOTHROW(parse_coefficients_json(R"({"c0":[1],"d":{"0:0":[1],"1:0":[1],"1:1":[1]}})", t, banks));
}
