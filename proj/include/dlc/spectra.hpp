#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dlc/graph.hpp"

namespace dlc {

enum class LaplacianKind { combinatorial, normalized };

const char* to_string(LaplacianKind kind);

// Dense symmetric matrix. Entries are written pairwise, so (i,j) == (j,i) bit for bit.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : m_(Eigen::MatrixXd::Zero(n, n)) {}

  std::size_t order() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double value) {
    m_(i, j) = value;
    m_(j, i) = value;
  }
  const Eigen::MatrixXd& dense() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

// L = D - A.
SymmetricMatrix combinatorial_laplacian(const Graph& g);
// I - D^{-1/2} A D^{-1/2}; rows and columns of isolated vertices are zero.
SymmetricMatrix normalized_laplacian(const Graph& g);
SymmetricMatrix laplacian(const Graph& g, LaplacianKind kind);
Eigen::SparseMatrix<double> sparse_laplacian(const Graph& g, LaplacianKind kind);

// A contiguous run of spectrum positions sharing one eigenvalue (within the
// grouping tolerance). Positions are 0-based over the full spectrum.
struct Eigenspace {
  std::size_t first = 0;
  std::size_t dim = 0;
  double value = 0.0;
  // False when the run touches the edge of a partial decomposition, so
  // further members may exist outside the computed range.
  bool complete = true;

  std::size_t last() const { return first + dim - 1; }
  bool contains(std::size_t pos) const { return pos >= first && pos < first + dim; }
};

// Ascending eigenpairs of a symmetric matrix, possibly only a contiguous
// window [first_position, first_position + computed) of the full spectrum.
class EigenSystem {
 public:
  EigenSystem() = default;
  // `vectors` holds one column per value. If null_dim is empty it is taken
  // from the size of the leading eigenspace at zero, which requires the
  // window to start at position 0.
  EigenSystem(Eigen::VectorXd values, Eigen::MatrixXd vectors, std::size_t first_position,
              std::size_t order, double grouping_tolerance,
              std::optional<std::size_t> null_dim = std::nullopt);

  std::size_t order() const { return order_; }
  std::size_t first_position() const { return first_; }
  std::size_t computed() const { return static_cast<std::size_t>(values_.size()); }
  bool complete() const { return first_ == 0 && computed() == order_; }
  bool has(std::size_t pos) const { return pos >= first_ && pos < first_ + computed(); }

  double value(std::size_t pos) const;
  Eigen::MatrixXd::ConstColXpr vector(std::size_t pos) const;
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }

  std::size_t null_dim() const { return null_dim_; }
  double grouping_tolerance() const { return tolerance_; }
  const std::vector<Eigenspace>& spaces() const { return spaces_; }
  const Eigenspace& space_of(std::size_t pos) const;

  // Same system with `vectors` replaced (e.g. a rotated basis).
  EigenSystem with_vectors(Eigen::MatrixXd vectors) const;

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  std::size_t first_ = 0;
  std::size_t order_ = 0;
  double tolerance_ = 0.0;
  std::size_t null_dim_ = 0;
  std::vector<Eigenspace> spaces_;
  std::vector<std::size_t> space_index_;  // local position -> index into spaces_
};

// 1e-8 * max(1, |lambda_max|).
double grouping_tolerance(double spectral_radius);
// 1e-9 * n.
double solver_tolerance(std::size_t n);

// Full dense decomposition (self-adjoint QR). Throws NumericError on
// non-convergence.
EigenSystem eigendecompose(const SymmetricMatrix& m);

enum class SpectrumEnd { bottom, top };

struct ExtremalOptions {
  std::size_t block = 8;
  std::size_t max_basis = 900;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  // Shift used for the inverted operator when solving for the bottom end.
  double shift = 1e-3;
};

// Eigenpairs at one end of the Laplacian spectrum of g, computed with a
// sparse block Krylov method. For the bottom end the `count` pairs are the
// nontrivial ones directly above the null space (positions t .. t+count-1);
// for the top end they are positions n-count .. n-1. The window is widened
// until the eigenspace at the inner boundary is complete. Small graphs, and
// windows whose residuals miss the solver tolerance, use the dense path.
EigenSystem extremal_eigensystem(const Graph& g, LaplacianKind kind, SpectrumEnd end,
                                 std::size_t count, const ExtremalOptions& options = {});

// Dense full decomposition of the chosen Laplacian, with null_dim fixed to
// the number of connected components.
EigenSystem laplacian_eigensystem(const Graph& g, LaplacianKind kind);

// Largest residual max_i ||M v_i - lambda_i v_i|| / (1 + |lambda_i|).
double max_relative_residual(const Eigen::SparseMatrix<double>& m, const EigenSystem& es);
// Largest |<v_i, v_j> - delta_ij| over the computed vectors.
double orthonormality_defect(const EigenSystem& es);

// sum_i lambda_i(L)^2 = trace(L^2) = sum_v (d_v^2 + d_v).
double laplacian_energy(const Graph& g);
// sum_i lambda_i(normalized L)^2 = trace(normalized L^2)
//   = #non-isolated vertices + sum_{uv in E} 2 / (d_u d_v).
double normalized_laplacian_energy(const Graph& g);

// Minimum over nonempty proper subsets X of e(X, X^c) / min(vol X, vol X^c).
// Exhaustive; limited to connected graphs with at most 20 vertices.
double cheeger_constant_bruteforce(const Graph& g);

}  // namespace dlc
