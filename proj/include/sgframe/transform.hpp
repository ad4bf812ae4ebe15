#ifndef SGFRAME_TRANSFORM_HPP
#define SGFRAME_TRANSFORM_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sgframe/filterbank.hpp"
#include "sgframe/frame.hpp"
#include "sgframe/partition_tree.hpp"

namespace sgf {

/// Coefficients of every node: c[j][k] has R_j entries (j = 0..J),
/// d[j][k] has m_{j,k} R_{j+1} entries (j = 0..J-1).
struct CoefficientTree {
  std::vector<std::vector<Eigen::VectorXd>> c;
  std::vector<std::vector<Eigen::VectorXd>> d;
};

/// Fast analysis. For each node the children's c-vectors form the rows of a
/// |C| x R_{j+1} matrix X; c = VEC(A X) and d = VEC(B X), VEC reading the
/// product row by row.
CoefficientTree analyze(const Eigen::VectorXd& f, const PartitionTree& t,
                        const FilterBanks& banks);

/// Adjoint sweep from c[0][0] and the d-vectors down to the leaves.
/// Intermediate c-vectors of `coef` are not read.
Eigen::VectorXd synthesize(const CoefficientTree& coef, const PartitionTree& t,
                           const FilterBanks& banks);

/// c[0][0] followed by every d-vector, in FrameAtoms row order.
Eigen::VectorXd flatten(const CoefficientTree& coef);

/// Inverse of flatten for the shapes implied by t and banks. The returned
/// tree carries only c[0][0] and the d-vectors (other c-vectors are empty).
CoefficientTree unflatten(const Eigen::VectorXd& flat, const PartitionTree& t,
                          const FilterBanks& banks);

Eigen::VectorXd analyze_dense(const Eigen::VectorXd& f, const FrameAtoms& fa);
Eigen::VectorXd synthesize_dense(const Eigen::VectorXd& coefs, const FrameAtoms& fa);

// Coefficient files. JSON: {"c0": [...], "d": {"j:k": [...]}}.
// Binary: magic "SGFC", uint32 version 1, uint64 m, then m little-endian
// float64 values in FrameAtoms order.
std::string format_coefficients_json(const CoefficientTree& coef);
CoefficientTree parse_coefficients_json(const std::string& text, const PartitionTree& t,
                                        const FilterBanks& banks);
std::string format_coefficients_binary(const Eigen::VectorXd& flat);
Eigen::VectorXd parse_coefficients_binary(const std::string& bytes);

} // namespace sgf

#endif // SGFRAME_TRANSFORM_HPP
