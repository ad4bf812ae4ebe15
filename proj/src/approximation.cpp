#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "sgframe/bench.hpp"
#include "sgframe/error.hpp"
#include "sgframe/transform.hpp"

namespace sgf {

namespace {

bool ranks_before(const Eigen::VectorXd& coefs, int a, int b) {
  const double x = std::abs(coefs[a]);
  const double y = std::abs(coefs[b]);
  return x != y ? x > y : a < b;
}

double relative_error(const Eigen::VectorXd& f, const Eigen::VectorXd& approx) {
  const double norm = f.norm();
  return norm == 0.0 ? (approx - f).norm() : (f - approx).norm() / norm;
}

} // namespace

std::vector<int> select_largest(const Eigen::VectorXd& coefs, int K) {
  if (K < 0 || K > coefs.size()) {
    throw InputError("K = " + std::to_string(K) + " outside 0.." + std::to_string(coefs.size()));
  }
  std::vector<int> order(static_cast<std::size_t>(coefs.size()));
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + K, order.end(),
                    [&](int a, int b) { return ranks_before(coefs, a, b); });
  order.resize(static_cast<std::size_t>(K));
  return order;
}

std::pair<Eigen::VectorXd, ApproxResult> nl_approx(const Eigen::VectorXd& f, const FrameAtoms& fa,
                                                   int K) {
  const auto start = std::chrono::steady_clock::now();
  const int m = fa.num_atoms();
  if (K < 0 || K > m) {
    throw InputError("K = " + std::to_string(K) + " outside 0.." + std::to_string(m));
  }
  const Eigen::VectorXd coefs = analyze_dense(f, fa);
  Eigen::VectorXd kept = Eigen::VectorXd::Zero(m);
  for (int i : select_largest(coefs, K)) kept[i] = coefs[i];
  Eigen::VectorXd approx = synthesize_dense(kept, fa);
  ApproxResult res;
  res.K = K;
  res.relative_error = relative_error(f, approx);
  res.variant = fa.config.variant;
  res.m = m;
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {std::move(approx), res};
}

std::vector<ApproxResult> nl_approx_curve(const Eigen::VectorXd& f, const FrameAtoms& fa,
                                          std::span<const int> Ks) {
  const auto start = std::chrono::steady_clock::now();
  const int m = fa.num_atoms();
  for (int K : Ks) {
    if (K < 0 || K > m) throw InputError("K = " + std::to_string(K) + " outside 0.." + std::to_string(m));
  }
  const Eigen::VectorXd coefs = analyze_dense(f, fa);
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ranks_before(coefs, a, b); });

  std::vector<int> by_k(Ks.size());
  std::iota(by_k.begin(), by_k.end(), 0);
  std::sort(by_k.begin(), by_k.end(), [&](int a, int b) {
    return Ks[static_cast<std::size_t>(a)] < Ks[static_cast<std::size_t>(b)];
  });

  std::vector<ApproxResult> results(Ks.size());
  Eigen::VectorXd approx = Eigen::VectorXd::Zero(f.size());
  int used = 0;
  for (int slot : by_k) {
    const int K = Ks[static_cast<std::size_t>(slot)];
    for (; used < K; ++used) {
      const int row = order[static_cast<std::size_t>(used)];
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(fa.atoms, row); it; ++it) {
        approx[it.col()] += coefs[row] * it.value();
      }
    }
    auto& res = results[static_cast<std::size_t>(slot)];
    res.K = K;
    res.relative_error = relative_error(f, approx);
    res.variant = fa.config.variant;
    res.m = m;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : results) r.wall_ms = ms;
  return results;
}

} // namespace sgf
