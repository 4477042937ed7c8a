#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dlc/graph.hpp"
#include "dlc/ranking.hpp"
#include "dlc/spectra.hpp"

namespace dlc {

// Which eigenvalues a directional centrality sums over.
class IndexSet {
 public:
  enum class Kind { ranks, bottom, top, nontrivial };

  // 1-based ranks into the ascending spectrum.
  static IndexSet ranks(std::vector<std::size_t> ranks);
  // The k smallest nontrivial eigenvalues (just above the null space).
  static IndexSet bottom(std::size_t k);
  // The k largest eigenvalues.
  static IndexSet top(std::size_t k);
  // Every eigenvalue above the null space.
  static IndexSet nontrivial();

  Kind kind() const { return kind_; }
  std::size_t k() const { return k_; }
  const std::vector<std::size_t>& explicit_ranks() const { return ranks_; }

  // 0-based ascending positions for a spectrum of size n with null dimension t.
  std::vector<std::size_t> resolve(std::size_t n, std::size_t t) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::top;
  std::size_t k_ = 5;
  std::vector<std::size_t> ranks_;
};

enum class SolverPolicy { automatic, dense, sparse };

// Derivative of one eigenvalue of L (resp. the normalized Laplacian) when the
// edges at each vertex are up-weighted, for all vertices at once.
Eigen::VectorXd dlc_vertex_derivatives(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& v);
Eigen::VectorXd ndlc_vertex_derivatives(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& v,
                                        double lambda);

// Single-vertex forms; `position` is the 0-based ascending eigen position.
double dlc_eigvec_derivative(const EigenSystem& es, const Graph& g, std::size_t position, Vertex x);
double ndlc_eigvec_derivative(const EigenSystem& es, const Graph& g, std::size_t position, Vertex x);

// Mean of the per-vector derivatives over the stored basis of `space`.
double eigenspace_derivative(const EigenSystem& es, const Graph& g, const Eigenspace& space,
                             Vertex x, LaplacianKind kind);

// Sum over positions of the eigenspace-averaged derivative, for every vertex.
// Positions inside a shared eigenspace each contribute that space's average.
Eigen::VectorXd directional_scores(const Graph& g, const EigenSystem& es, LaplacianKind kind,
                                   std::span<const std::size_t> positions);

// Directional Laplacian centrality of a connected graph.
ScoreTable directional_centrality(const Graph& g, LaplacianKind kind, const IndexSet& sel,
                                  SolverPolicy policy = SolverPolicy::automatic);
ScoreTable s_dlc(const Graph& g, const IndexSet& sel, SolverPolicy policy = SolverPolicy::automatic);
ScoreTable s_ndlc(const Graph& g, const IndexSet& sel, SolverPolicy policy = SolverPolicy::automatic);

}  // namespace dlc
