#include "doctest.h"

#include <cmath>

#include "dlc/centrality.hpp"
#include "dlc/error.hpp"
#include "oracles.hpp"

using namespace dlc;
using doctest::Approx;

namespace {

constexpr LaplacianKind kinds[] = {LaplacianKind::combinatorial, LaplacianKind::normalized};

std::vector<Graph> connected_corpus() {
  std::vector<Graph> out;
  for (const Graph& g : oracle::random_corpus()) {
    const Graph giant = giant_component(g).graph;
    if (giant.order() >= 3) out.push_back(giant);
  }
  return out;
}

double score_sum(const ScoreTable& t) {
  double s = 0.0;
  for (double x : t.scores()) s += x;
  return s;
}

double abs_sum(const ScoreTable& t) {
  double s = 0.0;
  for (double x : t.scores()) s += std::abs(x);
  return s;
}

// Rotates every degenerate eigenspace basis by a random orthogonal matrix.
EigenSystem rotate_spaces(const EigenSystem& es, std::uint64_t seed) {
  Eigen::MatrixXd vectors = es.vectors();
  for (const auto& space : es.spaces()) {
    if (space.dim < 2) continue;
    const auto first = static_cast<Eigen::Index>(space.first);
    const auto dim = static_cast<Eigen::Index>(space.dim);
    vectors.middleCols(first, dim) = es.vectors().middleCols(first, dim) * oracle::random_orthogonal(space.dim, seed++);
  }
  return es.with_vectors(vectors);
}

}  // namespace

TEST_CASE("index sets") {
  CHECK(IndexSet::bottom(2).resolve(6, 1) == std::vector<std::size_t>{1, 2});
  CHECK(IndexSet::top(2).resolve(6, 1) == std::vector<std::size_t>{4, 5});
  CHECK(IndexSet::nontrivial().resolve(4, 2) == std::vector<std::size_t>{2, 3});
  CHECK(IndexSet::ranks({3, 1, 3}).resolve(3, 1) == std::vector<std::size_t>{0, 2});
  CHECK_THROWS_WITH_AS(IndexSet::top(6).resolve(6, 1), "index set exceeds nontrivial spectrum", InputError);
  CHECK_THROWS_AS(IndexSet::ranks({7}).resolve(6, 1), InputError);
  CHECK_THROWS_AS(IndexSet::top(0), InputError);
  CHECK(IndexSet::top(5).describe() == "top-5");
}

TEST_CASE("hand-evaluated derivatives") {
  const Graph p3 = oracle::path(3);
  const auto es = laplacian_eigensystem(p3, LaplacianKind::combinatorial);
  CHECK(dlc_eigvec_derivative(es, p3, 2, 1) == Approx(3.0));
  CHECK(dlc_eigvec_derivative(es, p3, 2, 0) == Approx(1.5));
  CHECK(std::abs(dlc_eigvec_derivative(es, p3, 0, 0)) < 1e-12);

  const Graph k2 = oracle::complete(2);
  const auto nk2 = laplacian_eigensystem(k2, LaplacianKind::normalized);
  CHECK(ndlc_eigvec_derivative(nk2, k2, 1, 0) == Approx(0.0).scale(1.0));
  CHECK(ndlc_eigvec_derivative(nk2, k2, 0, 1) == Approx(0.0).scale(1.0));

  // explicit basis of the 3/2 eigenspace of the normalized K3 Laplacian
  const Graph k3 = oracle::complete(3);
  Eigen::MatrixXd basis(3, 3);
  basis.col(0) = Eigen::Vector3d(1, 1, 1) / std::sqrt(3.0);
  basis.col(1) = Eigen::Vector3d(1, -1, 0) / std::sqrt(2.0);
  basis.col(2) = Eigen::Vector3d(1, 1, -2) / std::sqrt(6.0);
  const EigenSystem nk3(Eigen::Vector3d(0, 1.5, 1.5), basis, 0, 3, grouping_tolerance(1.5), 1);
  CHECK(ndlc_eigvec_derivative(nk3, k3, 1, 2) == Approx(-0.25));
  CHECK(ndlc_eigvec_derivative(nk3, k3, 0, 0) == Approx(0.0).scale(1.0));
  CHECK(eigenspace_derivative(nk3, k3, nk3.space_of(1), 2, LaplacianKind::normalized) ==
        Approx(0.0).scale(1.0));

  const auto lk3 = laplacian_eigensystem(k3, LaplacianKind::combinatorial);
  for (Vertex x = 0; x < 3; ++x) {
    CHECK(eigenspace_derivative(lk3, k3, lk3.space_of(2), x, LaplacianKind::combinatorial) == Approx(2.0));
  }
  const auto rotated = rotate_spaces(lk3, 77);
  CHECK(eigenspace_derivative(rotated, k3, rotated.space_of(1), 0, LaplacianKind::combinatorial) ==
        Approx(2.0).epsilon(1e-9));

  const Graph iso = Graph::from_edges(3, std::vector<std::pair<Vertex, Vertex>>{{0, 1}});
  const auto niso = laplacian_eigensystem(iso, LaplacianKind::normalized);
  CHECK_THROWS_WITH_AS(ndlc_eigvec_derivative(niso, iso, 2, 2), "isolated vertex in nDLC", InputError);
}

TEST_CASE("simple eigenspaces reduce to the single-vector derivative") {
  const Graph p3 = oracle::path(3);
  const auto es = laplacian_eigensystem(p3, LaplacianKind::combinatorial);
  for (Vertex x = 0; x < 3; ++x) {
    CHECK(eigenspace_derivative(es, p3, es.space_of(1), x, LaplacianKind::combinatorial) ==
          Approx(dlc_eigvec_derivative(es, p3, 1, x)));
  }
}

TEST_CASE("score tables from the definitions") {
  const auto p3 = s_dlc(oracle::path(3), IndexSet::ranks({3}));
  CHECK(p3.score(0) == Approx(1.5));
  CHECK(p3.score(1) == Approx(3.0));
  CHECK(p3.score(2) == Approx(1.5));

  const auto k2 = s_ndlc(oracle::complete(2), IndexSet::ranks({2}));
  CHECK(k2.score(0) == Approx(0.0).scale(1.0));
  CHECK(k2.score(1) == Approx(0.0).scale(1.0));

  const auto k3 = s_ndlc(oracle::complete(3), IndexSet::ranks({2, 3}));
  CHECK(k3.score(0) == Approx(k3.score(1)).scale(1.0));
  CHECK(k3.score(1) == Approx(k3.score(2)).scale(1.0));

  CHECK_THROWS_WITH_AS(s_dlc(oracle::path(3), IndexSet::top(3)), "index set exceeds nontrivial spectrum",
                       InputError);
  const Graph split = Graph::from_edges(4, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}});
  CHECK_THROWS_AS(s_dlc(split, IndexSet::top(1)), InputError);
}

TEST_CASE("analytic derivatives match finite differences") {
  for (const Graph& g : oracle::random_corpus()) {
    for (auto kind : kinds) {
      const auto es = laplacian_eigensystem(g, kind);
      for (const auto& space : es.spaces()) {
        if (space.dim != 1) continue;
        const std::size_t p = space.first;
        const Eigen::VectorXd analytic = dlc_vertex_derivatives(g, es.vector(p));
        for (Vertex x = 0; x < g.order(); ++x) {
          if (kind == LaplacianKind::normalized && g.degree(x) == 0) continue;
          const double a = kind == LaplacianKind::combinatorial ? analytic(x) : ndlc_eigvec_derivative(es, g, p, x);
          const double fd = oracle::eigenvalue_slope(g, kind, p, x);
          CHECK(std::abs(a - fd) <= 1e-6 * (1.0 + std::abs(a)));
        }
      }
    }
  }
}

TEST_CASE("sum rules") {
  for (const Graph& g : connected_corpus()) {
    const std::size_t n = g.order();
    std::vector<IndexSet> sets{IndexSet::nontrivial()};
    if (n - 1 >= 5) {
      sets.push_back(IndexSet::bottom(5));
      sets.push_back(IndexSet::top(5));
    }
    for (const auto& sel : sets) {
      const auto es = laplacian_eigensystem(g, LaplacianKind::combinatorial);
      double lambdas = 0.0;
      for (std::size_t p : sel.resolve(n, 1)) lambdas += es.space_of(p).value;
      CHECK(score_sum(s_dlc(g, sel)) == Approx(2.0 * lambdas).epsilon(1e-9));
      const auto nd = s_ndlc(g, sel);
      CHECK(std::abs(score_sum(nd)) <= 1e-8 * abs_sum(nd) + 1e-12);
    }
  }
}

TEST_CASE("null space selections score zero") {
  const Graph g = oracle::petersen();
  {
    const auto table = s_dlc(g, IndexSet::ranks({1}));
    for (double s : table.scores()) CHECK(std::abs(s) < 1e-12);
  }
  {
    const auto table = s_ndlc(g, IndexSet::ranks({1}));
    for (double s : table.scores()) CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("basis rotation and sign flips leave scores unchanged") {
  const std::vector<Graph> graphs{oracle::cycle(4), oracle::complete(3), oracle::complete(4), oracle::petersen()};
  std::uint64_t seed = 1;
  for (const Graph& g : graphs) {
    for (auto kind : kinds) {
      const auto es = laplacian_eigensystem(g, kind);
      const auto positions = IndexSet::nontrivial().resolve(g.order(), 1);
      for (std::size_t p : positions) {
        const std::vector<std::size_t> one{p};
        const Eigen::VectorXd base = directional_scores(g, es, kind, one);
        for (int trial = 0; trial < 5; ++trial) {
          const Eigen::VectorXd turned = directional_scores(g, rotate_spaces(es, seed += 10), kind, one);
          CHECK((turned - base).cwiseAbs().maxCoeff() <= 1e-9);
        }
        Eigen::MatrixXd flipped = es.vectors();
        flipped.col(static_cast<Eigen::Index>(p)) *= -1.0;
        CHECK((directional_scores(g, es.with_vectors(flipped), kind, one) - base).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}

TEST_CASE("full nontrivial selections from either end agree") {
  for (const Graph& g : connected_corpus()) {
    const std::size_t k = g.order() - 1;
    for (auto kind : kinds) {
      const auto low = directional_centrality(g, kind, IndexSet::bottom(k), SolverPolicy::dense);
      const auto high = directional_centrality(g, kind, IndexSet::top(k), SolverPolicy::dense);
      for (Vertex v = 0; v < g.order(); ++v) CHECK(low.score(v) == Approx(high.score(v)).scale(1.0));
    }
  }
}

TEST_CASE("trace of L squared moves with the weighted derivative sum") {
  for (const Graph& g : oracle::random_corpus()) {
    const auto es = laplacian_eigensystem(g, LaplacianKind::combinatorial);
    Eigen::VectorXd total = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.order()));
    for (std::size_t p = 0; p < g.order(); ++p) {
      total += 2.0 * es.value(p) * dlc_vertex_derivatives(g, es.vector(p));
    }
    for (Vertex x = 0; x < g.order(); ++x) {
      CHECK(total(x) == Approx(oracle::trace_square_slope(g, x)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("sparse and dense solvers give the same scores") {
  const Graph g = giant_component(oracle::erdos_renyi(400, 0.012, 3)).graph;
  for (auto kind : kinds) {
    for (const auto& sel : {IndexSet::top(5), IndexSet::bottom(5)}) {
      const auto dense = directional_centrality(g, kind, sel, SolverPolicy::dense);
      const auto sparse = directional_centrality(g, kind, sel, SolverPolicy::sparse);
      for (Vertex v = 0; v < g.order(); ++v) {
        CHECK(sparse.score(v) == Approx(dense.score(v)).epsilon(1e-6).scale(1e-6));
      }
    }
  }
}
