#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace dlc {

// Applies a symmetric linear operator to each column of `in`, writing `out`
// (already sized like `in`).
using BlockOperator = std::function<void(const Eigen::MatrixXd& in, Eigen::MatrixXd& out)>;

struct KrylovOptions {
  std::size_t block = 8;
  std::size_t max_basis = 900;
  std::uint64_t seed = 1;
  // Converged when every wanted residual is below tolerance * |theta|_max.
  double tolerance = 1e-11;
};

struct RitzPairs {
  Eigen::VectorXd values;     // descending
  Eigen::MatrixXd vectors;    // orthonormal columns matching values
  Eigen::VectorXd residuals;  // ||op v - theta v|| per pair
};

// Largest `want` eigenpairs of a symmetric operator on R^n restricted to the
// orthogonal complement of the orthonormal columns of `deflate` (may have
// zero columns). Block Krylov expansion with full reorthogonalization and
// explicit Rayleigh-Ritz; eigenvalues of multiplicity up to the block size
// are resolved. When the basis spans the whole complement the result is exact.
RitzPairs largest_eigenpairs(const BlockOperator& op, std::size_t n, std::size_t want,
                             const Eigen::MatrixXd& deflate, const KrylovOptions& options);

}  // namespace dlc
