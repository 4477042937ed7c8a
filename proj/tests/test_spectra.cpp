#include "doctest.h"

#include <cmath>

#include "dlc/error.hpp"
#include "dlc/spectra.hpp"
#include "oracles.hpp"

using namespace dlc;
using doctest::Approx;

TEST_CASE("laplacian entries") {
  const auto k2 = combinatorial_laplacian(oracle::complete(2)).dense();
  CHECK(k2(0, 0) == 1.0);
  CHECK(k2(0, 1) == -1.0);
  const auto p3 = combinatorial_laplacian(oracle::path(3)).dense();
  CHECK(p3.diagonal() == Eigen::Vector3d(1, 2, 1));
  CHECK(p3(0, 2) == 0.0);
  CHECK(combinatorial_laplacian(Graph(2)).dense().isZero());

  const auto n2 = normalized_laplacian(oracle::complete(2)).dense();
  CHECK(n2(0, 1) == Approx(-1.0));
  const auto n3 = normalized_laplacian(oracle::complete(3)).dense();
  CHECK(n3(0, 0) == 1.0);
  CHECK(n3(1, 2) == Approx(-0.5));
  const Graph iso = Graph::from_edges(3, std::vector<std::pair<Vertex, Vertex>>{{0, 1}});
  CHECK(normalized_laplacian(iso).dense().row(2).isZero());
  CHECK(normalized_laplacian(iso).dense().col(2).isZero());

  for (const Graph& g : oracle::random_corpus()) {
    for (auto kind : {LaplacianKind::combinatorial, LaplacianKind::normalized}) {
      const Eigen::MatrixXd d = laplacian(g, kind).dense();
      CHECK(d == d.transpose());
      CHECK((Eigen::MatrixXd(sparse_laplacian(g, kind)) - d).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("small spectra") {
  const auto p3 = eigendecompose(combinatorial_laplacian(oracle::path(3)));
  CHECK(p3.value(0) == Approx(0.0).epsilon(1e-12));
  CHECK(p3.value(1) == Approx(1.0));
  CHECK(p3.value(2) == Approx(3.0));
  CHECK(p3.null_dim() == 1);
  CHECK(p3.spaces().size() == 3);

  const auto k3 = eigendecompose(combinatorial_laplacian(oracle::complete(3)));
  CHECK(k3.value(1) == Approx(3.0));
  CHECK(k3.value(2) == Approx(3.0));
  REQUIRE(k3.spaces().size() == 2);
  CHECK(k3.spaces()[1].dim == 2);
  CHECK(k3.space_of(2).first == 1);

  const auto nk2 = eigendecompose(normalized_laplacian(oracle::complete(2)));
  CHECK(nk2.value(0) == Approx(0.0));
  CHECK(nk2.value(1) == Approx(2.0));
}

TEST_CASE("eigensystem invariants on the corpus") {
  for (const Graph& g : oracle::random_corpus()) {
    const std::size_t n = g.order();
    const std::size_t comps = connected_components(g).count();
    for (auto kind : {LaplacianKind::combinatorial, LaplacianKind::normalized}) {
      const auto es = eigendecompose(laplacian(g, kind));
      CHECK(es.null_dim() == comps);
      CHECK(laplacian_eigensystem(g, kind).null_dim() == comps);
      CHECK(max_relative_residual(sparse_laplacian(g, kind), es) <= solver_tolerance(n));
      CHECK(orthonormality_defect(es) <= solver_tolerance(n));
      CHECK(es.values().minCoeff() >= -solver_tolerance(n));
      if (kind == LaplacianKind::normalized) CHECK(es.values().maxCoeff() <= 2.0 + solver_tolerance(n));
    }
  }
}

TEST_CASE("energies") {
  CHECK(laplacian_energy(oracle::complete(3)) == 18.0);
  CHECK(laplacian_energy(oracle::star(3)) == 18.0);
  CHECK(laplacian_energy(Graph()) == 0.0);
  CHECK(normalized_laplacian_energy(oracle::complete(2)) == Approx(4.0));
  CHECK(normalized_laplacian_energy(oracle::complete(3)) == Approx(4.5));
  CHECK(normalized_laplacian_energy(Graph()) == 0.0);
  for (const Graph& g : oracle::random_corpus()) {
    CHECK(laplacian_energy(g) == Approx(oracle::eigen_energy(g, LaplacianKind::combinatorial)).epsilon(1e-9));
    CHECK(normalized_laplacian_energy(g) ==
          Approx(oracle::eigen_energy(g, LaplacianKind::normalized)).epsilon(1e-9));
  }
}

TEST_CASE("cheeger constant") {
  CHECK(cheeger_constant_bruteforce(oracle::complete(2)) == Approx(1.0));
  CHECK(cheeger_constant_bruteforce(oracle::cycle(4)) == Approx(0.5));
  CHECK(cheeger_constant_bruteforce(oracle::complete(4)) == Approx(4.0 / 6.0));
  CHECK_THROWS_WITH_AS(cheeger_constant_bruteforce(oracle::path(21)), "oracle limited to small graphs",
                       InputError);
  CHECK_THROWS_AS(cheeger_constant_bruteforce(Graph(3)), InputError);

  for (const Graph& g : oracle::random_corpus()) {
    if (g.order() > 16 || !is_connected(g)) continue;
    const double phi = cheeger_constant_bruteforce(g);
    const double l2 = laplacian_eigensystem(g, LaplacianKind::normalized).value(1);
    CHECK(2.0 * phi >= l2 - 1e-12);
    CHECK(l2 >= phi * phi / 2.0 - 1e-12);
  }
}

TEST_CASE("extremal solver agrees with the dense spectrum") {
  // two moderately sized random graphs, one with several components
  for (std::uint64_t seed : {11u, 12u}) {
    const Graph g = oracle::erdos_renyi(300, seed == 11 ? 0.02 : 0.008, seed);
    const std::size_t t = connected_components(g).count();
    for (auto kind : {LaplacianKind::combinatorial, LaplacianKind::normalized}) {
      const auto dense = laplacian_eigensystem(g, kind);
      for (auto end : {SpectrumEnd::top, SpectrumEnd::bottom}) {
        const auto es = extremal_eigensystem(g, kind, end, 5);
        CHECK(es.null_dim() == t);
        const std::size_t first = end == SpectrumEnd::top ? g.order() - 5 : t;
        for (std::size_t p = first; p < first + 5; ++p) {
          REQUIRE(es.has(p));
          CHECK(es.value(p) == Approx(dense.value(p)).epsilon(1e-9).scale(1.0));
          CHECK(es.space_of(p).complete);
          CHECK(es.space_of(p).dim == dense.space_of(p).dim);
        }
        CHECK(orthonormality_defect(es) < 1e-8);
      }
    }
  }
}

TEST_CASE("extremal solver rejects oversized requests") {
  CHECK_THROWS_WITH_AS(extremal_eigensystem(oracle::path(4), LaplacianKind::combinatorial,
                                            SpectrumEnd::top, 4),
                       "index set exceeds nontrivial spectrum", InputError);
}
