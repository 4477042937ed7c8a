#include "dlc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SparseCholesky>

#include "dlc/error.hpp"
#include "dlc/krylov.hpp"

namespace dlc {

const char* to_string(LaplacianKind kind) {
  return kind == LaplacianKind::combinatorial ? "combinatorial" : "normalized";
}

SymmetricMatrix combinatorial_laplacian(const Graph& g) {
  SymmetricMatrix m(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    m.set(u, u, static_cast<double>(g.degree(u)));
    for (Vertex v : g.neighbors(u)) {
      if (u < v) m.set(u, v, -1.0);
    }
  }
  return m;
}

SymmetricMatrix normalized_laplacian(const Graph& g) {
  SymmetricMatrix m(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    if (g.degree(u) == 0) continue;
    m.set(u, u, 1.0);
    for (Vertex v : g.neighbors(u)) {
      if (u < v) {
        m.set(u, v, -1.0 / std::sqrt(static_cast<double>(g.degree(u)) *
                                     static_cast<double>(g.degree(v))));
      }
    }
  }
  return m;
}

SymmetricMatrix laplacian(const Graph& g, LaplacianKind kind) {
  return kind == LaplacianKind::combinatorial ? combinatorial_laplacian(g)
                                              : normalized_laplacian(g);
}

Eigen::SparseMatrix<double> sparse_laplacian(const Graph& g, LaplacianKind kind) {
  const auto n = static_cast<Eigen::Index>(g.order());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(g.order() + 2 * g.edge_count());
  for (Vertex u = 0; u < g.order(); ++u) {
    const double du = static_cast<double>(g.degree(u));
    if (du == 0.0) continue;
    entries.emplace_back(u, u, kind == LaplacianKind::combinatorial ? du : 1.0);
    for (Vertex v : g.neighbors(u)) {
      const double w = kind == LaplacianKind::combinatorial
                           ? -1.0
                           : -1.0 / std::sqrt(du * static_cast<double>(g.degree(v)));
      entries.emplace_back(u, v, w);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

double grouping_tolerance(double spectral_radius) {
  return 1e-8 * std::max(1.0, std::abs(spectral_radius));
}

double solver_tolerance(std::size_t n) { return 1e-9 * static_cast<double>(std::max<std::size_t>(n, 1)); }

// ---------------------------------------------------------------------------
// EigenSystem

EigenSystem::EigenSystem(Eigen::VectorXd values, Eigen::MatrixXd vectors,
                         std::size_t first_position, std::size_t order,
                         double grouping_tolerance, std::optional<std::size_t> null_dim)
    : values_(std::move(values)),
      vectors_(std::move(vectors)),
      first_(first_position),
      order_(order),
      tolerance_(grouping_tolerance) {
  const auto count = static_cast<std::size_t>(values_.size());
  if (static_cast<std::size_t>(vectors_.cols()) != count ||
      (count > 0 && static_cast<std::size_t>(vectors_.rows()) != order_) ||
      first_ + count > order_) {
    throw InputError("EigenSystem: inconsistent shapes");
  }
  for (std::size_t i = 1; i < count; ++i) {
    if (values_(static_cast<Eigen::Index>(i)) < values_(static_cast<Eigen::Index>(i - 1))) {
      throw InputError("EigenSystem: eigenvalues must be ascending");
    }
  }

  if (null_dim) {
    null_dim_ = *null_dim;
  } else {
    if (first_ != 0) throw InputError("EigenSystem: null dimension unknown for a partial window");
    null_dim_ = 0;
    while (null_dim_ < count &&
           std::abs(values_(static_cast<Eigen::Index>(null_dim_))) < tolerance_) {
      ++null_dim_;
    }
  }

  // Group consecutive values chained from the first member of each run; the
  // null space boundary always splits a run.
  space_index_.resize(count);
  std::size_t start = 0;
  for (std::size_t i = 1; i <= count; ++i) {
    const std::size_t pos = first_ + i;
    const bool split =
        i == count || pos == null_dim_ ||
        values_(static_cast<Eigen::Index>(i)) - values_(static_cast<Eigen::Index>(start)) >=
            tolerance_;
    if (!split) continue;
    Eigenspace space;
    space.first = first_ + start;
    space.dim = i - start;
    double sum = 0.0;
    for (std::size_t j = start; j < i; ++j) sum += values_(static_cast<Eigen::Index>(j));
    space.value = sum / static_cast<double>(space.dim);
    const bool open_below = start == 0 && first_ != 0 && first_ != null_dim_;
    const bool open_above = i == count && first_ + count != order_ && first_ + count != null_dim_;
    space.complete = !open_below && !open_above;
    for (std::size_t j = start; j < i; ++j) space_index_[j] = spaces_.size();
    spaces_.push_back(space);
    start = i;
  }
}

double EigenSystem::value(std::size_t pos) const {
  if (!has(pos)) throw InputError("eigen position " + std::to_string(pos) + " not computed");
  return values_(static_cast<Eigen::Index>(pos - first_));
}

Eigen::MatrixXd::ConstColXpr EigenSystem::vector(std::size_t pos) const {
  if (!has(pos)) throw InputError("eigen position " + std::to_string(pos) + " not computed");
  return vectors_.col(static_cast<Eigen::Index>(pos - first_));
}

const Eigenspace& EigenSystem::space_of(std::size_t pos) const {
  if (!has(pos)) throw InputError("eigen position " + std::to_string(pos) + " not computed");
  return spaces_[space_index_[pos - first_]];
}

EigenSystem EigenSystem::with_vectors(Eigen::MatrixXd vectors) const {
  if (vectors.rows() != vectors_.rows() || vectors.cols() != vectors_.cols()) {
    throw InputError("EigenSystem::with_vectors: shape mismatch");
  }
  EigenSystem copy = *this;
  copy.vectors_ = std::move(vectors);
  return copy;
}

// ---------------------------------------------------------------------------
// Dense path

EigenSystem eigendecompose(const SymmetricMatrix& m) {
  const std::size_t n = m.order();
  if (n == 0) return EigenSystem(Eigen::VectorXd(), Eigen::MatrixXd(), 0, 0, grouping_tolerance(0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense());
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigensolver did not converge for matrix of order " + std::to_string(n));
  }
  const double top = solver.eigenvalues()(static_cast<Eigen::Index>(n - 1));
  return EigenSystem(solver.eigenvalues(), solver.eigenvectors(), 0, n, grouping_tolerance(top));
}

EigenSystem laplacian_eigensystem(const Graph& g, LaplacianKind kind) {
  const std::size_t n = g.order();
  if (n == 0) return eigendecompose(SymmetricMatrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g, kind).dense());
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigensolver did not converge for matrix of order " + std::to_string(n));
  }
  const double top = solver.eigenvalues()(static_cast<Eigen::Index>(n - 1));
  return EigenSystem(solver.eigenvalues(), solver.eigenvectors(), 0, n, grouping_tolerance(top),
                     connected_components(g).count());
}

// ---------------------------------------------------------------------------
// Sparse extremal path

namespace {

// Orthonormal basis of the Laplacian null space: one vector per component
// (constant for L, sqrt(degree) for the normalized Laplacian, a unit vector
// for isolated vertices).
Eigen::MatrixXd null_basis(const Graph& g, LaplacianKind kind, const ComponentPartition& parts) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(parts.count()));
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto c = static_cast<Eigen::Index>(parts.component_of[v]);
    const double d = static_cast<double>(g.degree(v));
    basis(v, c) = (kind == LaplacianKind::combinatorial || parts.sizes[c] == 1) ? 1.0 : std::sqrt(d);
  }
  basis.colwise().normalize();
  return basis;
}

double spectral_radius_estimate(const Eigen::SparseMatrix<double>& m, const ExtremalOptions& options) {
  const BlockOperator op = [&](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) { out = m * in; };
  KrylovOptions k;
  k.block = 2;
  k.max_basis = 120;
  k.seed = options.seed ^ 0xa5a5a5a5ULL;
  k.tolerance = 1e-4;
  const auto n = static_cast<std::size_t>(m.rows());
  return largest_eigenpairs(op, n, 1, Eigen::MatrixXd(n, 0), k).values(0);
}

}  // namespace

EigenSystem extremal_eigensystem(const Graph& g, LaplacianKind kind, SpectrumEnd end,
                                 std::size_t count, const ExtremalOptions& options) {
  const std::size_t n = g.order();
  const auto parts = connected_components(g);
  const std::size_t t = parts.count();
  if (count == 0) throw InputError("index set is empty");
  if (count > n - t) throw InputError("index set exceeds nontrivial spectrum");

  const std::size_t nontrivial = n - t;
  auto dense_fallback = [&] { return laplacian_eigensystem(g, kind); };
  if (n <= 64 || count + options.block + 1 >= nontrivial / 2) return dense_fallback();

  const Eigen::SparseMatrix<double> m = sparse_laplacian(g, kind);
  const Eigen::MatrixXd nulls = null_basis(g, kind, parts);

  KrylovOptions krylov;
  krylov.block = options.block;
  krylov.max_basis = options.max_basis;
  krylov.seed = options.seed;

  std::optional<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> shifted;
  if (end == SpectrumEnd::bottom) {
    Eigen::SparseMatrix<double> identity(m.rows(), m.cols());
    identity.setIdentity();
    shifted.emplace(m + options.shift * identity);
    if (shifted->info() != Eigen::Success) {
      throw NumericError("shifted Laplacian factorization failed (order " + std::to_string(n) + ")");
    }
  }

  // one extra pair beyond the request so the inner boundary gap is visible
  std::size_t want = count + 1;
  double radius_estimate = 0.0;
  while (true) try {
    want = std::min(want, nontrivial);
    if (want + options.block >= nontrivial / 2) return dense_fallback();

    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    std::size_t first = 0;
    double radius = 0.0;
    if (end == SpectrumEnd::top) {
      const BlockOperator op = [&](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) { out = m * in; };
      RitzPairs pairs = largest_eigenpairs(op, n, want, Eigen::MatrixXd(n, 0), krylov);
      values = pairs.values.reverse();
      vectors = pairs.vectors.rowwise().reverse();
      first = n - want;
      radius = values(values.size() - 1);
    } else {
      const BlockOperator op = [&](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
        out = shifted->solve(in);
        out.noalias() -= nulls * (nulls.transpose() * out);
      };
      RitzPairs pairs = largest_eigenpairs(op, n, want, nulls, krylov);
      // Rayleigh-Ritz with the Laplacian itself on the converged subspace
      Eigen::MatrixXd projected = pairs.vectors.transpose() * (m * pairs.vectors);
      projected = 0.5 * (projected + projected.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(projected);
      if (small.info() != Eigen::Success) {
        throw NumericError("Rayleigh-Ritz refinement failed (order " + std::to_string(n) + ")");
      }
      values = small.eigenvalues();
      vectors = pairs.vectors * small.eigenvectors();
      first = t;
      if (radius_estimate == 0.0) radius_estimate = spectral_radius_estimate(m, options);
      radius = radius_estimate;
    }

    EigenSystem es(std::move(values), std::move(vectors), first, n, grouping_tolerance(radius), t);
    const std::size_t inner = end == SpectrumEnd::top ? n - count : t + count - 1;
    if (es.space_of(inner).complete) {
      // clustered spectra can stall the Krylov expansion; the dense path is always exact
      if (max_relative_residual(m, es) > solver_tolerance(n)) return dense_fallback();
      return es;
    }
    want += options.block;
  } catch (const NumericError&) {
    return dense_fallback();
  }
}

double max_relative_residual(const Eigen::SparseMatrix<double>& m, const EigenSystem& es) {
  double worst = 0.0;
  for (std::size_t i = 0; i < es.computed(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const double lambda = es.values()(col);
    const double r = (m * es.vectors().col(col) - lambda * es.vectors().col(col)).norm();
    worst = std::max(worst, r / (1.0 + std::abs(lambda)));
  }
  return worst;
}

double orthonormality_defect(const EigenSystem& es) {
  const Eigen::MatrixXd gram = es.vectors().transpose() * es.vectors();
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Energies and Cheeger

double laplacian_energy(const Graph& g) {
  double total = 0.0;
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto d = static_cast<double>(g.degree(v));
    total += d * d + d;
  }
  return total;
}

double normalized_laplacian_energy(const Graph& g) {
  double total = 0.0;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (g.degree(u) == 0) continue;
    total += 1.0;
    const auto du = static_cast<double>(g.degree(u));
    for (Vertex v : g.neighbors(u)) {
      // each edge seen twice, each visit contributes 1/(d_u d_v)
      total += 1.0 / (du * static_cast<double>(g.degree(v)));
    }
  }
  return total;
}

double cheeger_constant_bruteforce(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 20) throw InputError("oracle limited to small graphs");
  if (n < 2) throw InputError("cheeger constant needs at least two vertices");
  if (!is_connected(g)) throw InputError("cheeger constant requires a connected graph");

  const auto edges = g.edge_list();
  std::vector<double> degree(n);
  double volume = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = static_cast<double>(g.degree(v));
    volume += degree[v];
  }
  double best = std::numeric_limits<double>::infinity();
  // X and its complement give the same ratio; fix the top vertex outside X
  const std::uint32_t limit = 1u << (n - 1);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    double vol = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask & (1u << v)) vol += degree[v];
    }
    std::size_t cut = 0;
    for (auto [u, v] : edges) {
      cut += static_cast<std::size_t>(((mask >> u) ^ (mask >> v)) & 1u);
    }
    best = std::min(best, static_cast<double>(cut) / std::min(vol, volume - vol));
  }
  return best;
}

}  // namespace dlc
