#include "oracles.hpp"

#include <cmath>
#include <random>

namespace oracle {

using dlc::Graph;
using dlc::Vertex;

namespace {

Graph build(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build(n, e);
}

Graph cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return build(n, e);
}

Graph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return build(n, e);
}

Graph star(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return build(leaves + 1, e);
}

Graph petersen() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return build(10, e);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (u(rng) < p) e.emplace_back(i, j);
  return build(n, e);
}

const std::vector<Graph>& random_corpus() {
  static const std::vector<Graph> corpus = [] {
    std::vector<Graph> out;
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> size(5, 40);
    std::uniform_real_distribution<double> mean_degree(1.5, 6.0);
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = size(rng);
      const double p = std::min(1.0, mean_degree(rng) / static_cast<double>(n - 1));
      out.push_back(erdos_renyi(n, p, rng()));
    }
    return out;
  }();
  return corpus;
}

Eigen::MatrixXd weighted_laplacian(const Graph& g, dlc::LaplacianKind kind, Vertex x, double t) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edge_list()) {
    const double w = (u == x || v == x) ? 1.0 + t : 1.0;
    a(u, v) = w;
    a(v, u) = w;
  }
  const Eigen::VectorXd d = a.rowwise().sum();
  Eigen::MatrixXd l = Eigen::MatrixXd(d.asDiagonal()) - a;
  if (kind == dlc::LaplacianKind::combinatorial) return l;
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = d(i) > 0 ? 1.0 / std::sqrt(d(i)) : 0.0;
  return s.asDiagonal() * l * s.asDiagonal();
}

double eigenvalue_slope(const Graph& g, dlc::LaplacianKind kind, std::size_t i, Vertex x,
                        double h) {
  auto value = [&](double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(weighted_laplacian(g, kind, x, t),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues()(static_cast<Eigen::Index>(i));
  };
  return (value(h) - value(-h)) / (2.0 * h);
}

double trace_square_slope(const Graph& g, Vertex x, double h) {
  auto value = [&](double t) {
    const Eigen::MatrixXd l = weighted_laplacian(g, dlc::LaplacianKind::combinatorial, x, t);
    return (l * l).trace();
  };
  return (value(h) - value(-h)) / (2.0 * h);
}

double eigen_energy(const Graph& g, dlc::LaplacianKind kind) {
  if (g.order() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dlc::laplacian(g, kind).dense(),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().squaredNorm();
}

Eigen::MatrixXd random_orthogonal(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ();
}

std::string data_path(const std::string& name) { return std::string(DLC_DATA_DIR) + "/" + name; }

}  // namespace oracle
