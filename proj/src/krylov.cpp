#include "dlc/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dlc/error.hpp"

namespace dlc {
namespace {

class BlockBasis {
 public:
  BlockBasis(std::size_t n, std::size_t capacity, const Eigen::MatrixXd& deflate)
      : q_(n, capacity), aq_(n, capacity), h_(capacity, capacity), deflate_(deflate) {}

  std::size_t size() const { return cols_; }
  std::size_t capacity() const { return static_cast<std::size_t>(q_.cols()); }
  auto basis() const { return q_.leftCols(static_cast<Eigen::Index>(cols_)); }
  auto image() const { return aq_.leftCols(static_cast<Eigen::Index>(cols_)); }
  auto projected() const {
    return h_.topLeftCorner(static_cast<Eigen::Index>(cols_), static_cast<Eigen::Index>(cols_));
  }

  // Orthogonalizes x against the deflation space, the current basis, and its
  // own earlier columns (two classical Gram-Schmidt passes). Columns that
  // collapse numerically are dropped.
  Eigen::MatrixXd orthogonalize(Eigen::MatrixXd x) const {
    const Eigen::VectorXd original = x.colwise().norm();
    for (int pass = 0; pass < 2; ++pass) {
      if (deflate_.cols() > 0) x.noalias() -= deflate_ * (deflate_.transpose() * x);
      if (cols_ > 0) x.noalias() -= basis() * (basis().transpose() * x);
    }
    Eigen::MatrixXd kept(x.rows(), x.cols());
    Eigen::Index count = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Eigen::VectorXd v = x.col(j);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < count; ++i) v -= kept.col(i).dot(v) * kept.col(i);
      }
      const double norm = v.norm();
      if (norm <= 1e-10 * std::max(original(j), 1e-300)) continue;
      kept.col(count++) = v / norm;
    }
    return kept.leftCols(count);
  }

  void append(const Eigen::MatrixXd& block, const BlockOperator& op) {
    const auto c = static_cast<Eigen::Index>(cols_);
    const auto k = block.cols();
    q_.middleCols(c, k) = block;
    Eigen::MatrixXd out(block.rows(), k);
    op(block, out);
    aq_.middleCols(c, k) = out;
    cols_ += static_cast<std::size_t>(k);
    const auto total = static_cast<Eigen::Index>(cols_);
    // new columns of Q^T (A Q), mirrored so the projection stays exactly symmetric
    Eigen::MatrixXd cross = q_.leftCols(total).transpose() * out;
    h_.block(0, c, total, k) = cross;
    h_.block(c, 0, k, total) = cross.transpose();
    h_.block(c, c, k, k) = 0.5 * (cross.bottomRows(k) + cross.bottomRows(k).transpose());
  }

  Eigen::MatrixXd last_image(Eigen::Index k) const {
    return aq_.middleCols(static_cast<Eigen::Index>(cols_) - k, k);
  }

 private:
  Eigen::MatrixXd q_;
  Eigen::MatrixXd aq_;
  Eigen::MatrixXd h_;
  const Eigen::MatrixXd& deflate_;
  std::size_t cols_ = 0;
};

Eigen::MatrixXd random_block(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  Eigen::MatrixXd x(n, k);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      // uniform in [-1, 1) from the top 53 bits
      x(i, j) = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    }
  }
  return x;
}

}  // namespace

RitzPairs largest_eigenpairs(const BlockOperator& op, std::size_t n, std::size_t want,
                             const Eigen::MatrixXd& deflate, const KrylovOptions& options) {
  const auto deflated = static_cast<std::size_t>(deflate.cols());
  if (deflated > n || want == 0 || want > n - deflated) {
    throw InputError("largest_eigenpairs: requested " + std::to_string(want) +
                     " pairs from a space of dimension " + std::to_string(n - deflated));
  }
  const std::size_t available = n - deflated;
  const std::size_t block = std::max<std::size_t>(1, options.block);
  const std::size_t capacity =
      std::min(available, std::max(options.max_basis, want + 3 * block));

  std::mt19937_64 rng(options.seed);
  BlockBasis basis(n, capacity, deflate);
  Eigen::MatrixXd next = random_block(n, std::min(block, available), rng);
  std::size_t next_check = want + block;

  while (true) {
    Eigen::MatrixXd fresh = basis.orthogonalize(std::move(next));
    const std::size_t room = capacity - basis.size();
    if (fresh.cols() == 0) {
      // invariant subspace reached; restart the expansion from new random directions
      next = random_block(n, std::min(block, room), rng);
      continue;
    }
    if (static_cast<std::size_t>(fresh.cols()) > room) {
      fresh.conservativeResize(Eigen::NoChange, static_cast<Eigen::Index>(room));
    }
    basis.append(fresh, op);
    const bool full = basis.size() == capacity;

    if (basis.size() >= next_check || full) {
      next_check = basis.size() + std::max(2 * block, basis.size() / 5);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(basis.projected());
      if (ritz.info() != Eigen::Success) {
        throw NumericError("Rayleigh-Ritz eigensolver failed at basis size " +
                           std::to_string(basis.size()));
      }
      const auto m = static_cast<Eigen::Index>(basis.size());
      const auto w = static_cast<Eigen::Index>(std::min<std::size_t>(want, basis.size()));
      if (w == static_cast<Eigen::Index>(want)) {
        Eigen::VectorXd theta = ritz.eigenvalues().tail(w).reverse();
        Eigen::MatrixXd y = ritz.eigenvectors().rightCols(w).rowwise().reverse();
        Eigen::MatrixXd v = basis.basis() * y;
        Eigen::MatrixXd r = basis.image() * y - v * theta.asDiagonal();
        Eigen::VectorXd res = r.colwise().norm();
        const double scale =
            std::max(std::abs(ritz.eigenvalues()(0)), std::abs(ritz.eigenvalues()(m - 1)));
        const bool exact = basis.size() == available;
        if (exact || res.maxCoeff() <= options.tolerance * std::max(scale, 1e-300)) {
          return RitzPairs{std::move(theta), std::move(v), std::move(res)};
        }
      }
      if (full) {
        throw NumericError("block Krylov solver did not converge within basis size " +
                           std::to_string(capacity) + " (order " + std::to_string(n) + ")");
      }
    }
    next = basis.last_image(fresh.cols());
  }
}

}  // namespace dlc
