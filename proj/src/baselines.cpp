#include "dlc/baselines.hpp"

#include <cmath>
#include <queue>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "dlc/error.hpp"
#include "dlc/krylov.hpp"
#include "dlc/spectra.hpp"

namespace dlc {
namespace {

ScoreTable table(const Graph& g, std::vector<double> scores) {
  return ScoreTable(std::move(scores), g.shared_labels());
}

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  constexpr auto unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.order(), unreached);
  std::queue<Vertex> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == unreached) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

}  // namespace

ScoreTable qi_laplacian_centrality(const Graph& g) {
  const double energy = laplacian_energy(g);
  if (energy == 0.0) throw InputError("zero energy");
  std::vector<double> scores(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto d = static_cast<double>(g.degree(v));
    double around = 0.0;
    for (Vertex y : g.neighbors(v)) around += static_cast<double>(g.degree(y));
    scores[v] = (d * d + d + 2.0 * around) / energy;
  }
  return table(g, std::move(scores));
}

ScoreTable qi_normalized_laplacian_centrality(const Graph& g) {
  const double energy = normalized_laplacian_energy(g);
  if (energy == 0.0) throw InputError("zero energy");
  std::vector<char> adjacent(g.order(), 0);
  std::vector<double> scores(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) {
      scores[v] = 0.0;
      continue;
    }
    for (Vertex y : nbrs) adjacent[y] = 1;
    auto degree_after = [&](Vertex u) { return static_cast<double>(g.degree(u) - adjacent[u]); };
    const auto dv = static_cast<double>(nbrs.size());
    double drop = 1.0;
    for (Vertex y : nbrs) {
      const auto dy = static_cast<double>(g.degree(y));
      drop += 2.0 / (dv * dy);
      if (g.degree(y) == 1) drop += 1.0;
      for (Vertex z : g.neighbors(y)) {
        if (z == v || (adjacent[z] && z < y)) continue;
        const auto dz = static_cast<double>(g.degree(z));
        drop += 2.0 / (dy * dz) - 2.0 / (degree_after(y) * degree_after(z));
      }
    }
    for (Vertex y : nbrs) adjacent[y] = 0;
    scores[v] = drop / energy;
  }
  return table(g, std::move(scores));
}

ScoreTable pagerank(const Graph& g, double damping) {
  const std::size_t n = g.order();
  if (n == 0) return table(g, {});
  if (damping < 0.0 || damping > 1.0) throw InputError("damping must lie in [0, 1]");
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, uniform), next(n);
  for (int sweep = 0; sweep < 1000; ++sweep) {
    double dangling = 0.0;
    for (Vertex u = 0; u < n; ++u) {
      if (g.degree(u) == 0) dangling += x[u];
    }
    const double base = (1.0 - damping) * uniform + damping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (Vertex u = 0; u < n; ++u) {
      if (g.degree(u) == 0) continue;
      const double share = damping * x[u] / static_cast<double>(g.degree(u));
      for (Vertex w : g.neighbors(u)) next[w] += share;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - x[i]);
    x.swap(next);
    if (change < 1e-10) break;
  }
  return table(g, std::move(x));
}

double adjacency_spectral_radius(const Graph& g) {
  const std::size_t n = g.order();
  if (g.edge_count() == 0) return 0.0;
  std::vector<Eigen::Triplet<double>> entries;
  for (auto [u, v] : g.edge_list()) {
    entries.emplace_back(u, v, 1.0);
    entries.emplace_back(v, u, 1.0);
  }
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  a.setFromTriplets(entries.begin(), entries.end());
  if (n <= 200) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }
  // Perron root: the largest algebraic eigenvalue of a nonnegative matrix
  const BlockOperator op = [&](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) { out = a * in; };
  KrylovOptions options;
  options.block = 2;
  options.tolerance = 1e-12;
  return largest_eigenpairs(op, n, 1, Eigen::MatrixXd(n, 0), options).values(0);
}

ScoreTable katz(const Graph& g, std::optional<double> attenuation) {
  const std::size_t n = g.order();
  const double radius = adjacency_spectral_radius(g);
  const double alpha = attenuation ? *attenuation : (radius > 0.0 ? 0.5 / radius : 0.0);
  if (alpha < 0.0) throw InputError("katz attenuation must be non-negative");
  if (radius > 0.0 && alpha * radius >= 1.0) {
    throw InputError("katz attenuation " + std::to_string(alpha) + " is not below 1/lambda_max = " +
                     std::to_string(1.0 / radius));
  }
  std::vector<Eigen::Triplet<double>> entries;
  for (Vertex u = 0; u < n; ++u) {
    entries.emplace_back(u, u, 1.0);
    for (Vertex w : g.neighbors(u)) entries.emplace_back(u, w, -alpha);
  }
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(m);
  if (solver.info() != Eigen::Success) throw NumericError("katz system factorization failed");
  const Eigen::VectorXd x = solver.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)));
  return table(g, std::vector<double>(x.data(), x.data() + x.size()));
}

ScoreTable closeness(const Graph& g) {
  if (!is_connected(g)) throw InputError("closeness requires a connected graph");
  const std::size_t n = g.order();
  std::vector<double> scores(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t total = 0;
    for (std::size_t d : bfs_distances(g, v)) total += d;
    if (total > 0) scores[v] = static_cast<double>(n - 1) / static_cast<double>(total);
  }
  return table(g, std::move(scores));
}

ScoreTable betweenness(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<double> score(n, 0.0);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<std::vector<Vertex>> preds(n);
  std::vector<Vertex> stack;
  std::queue<Vertex> frontier;
  for (Vertex s = 0; s < n; ++s) {
    stack.clear();
    for (std::size_t i = 0; i < n; ++i) {
      preds[i].clear();
      sigma[i] = 0.0;
      delta[i] = 0.0;
      dist[i] = -1;
    }
    sigma[s] = 1.0;
    dist[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const Vertex u = frontier.front();
      frontier.pop();
      stack.push_back(u);
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[u] + 1) {
          sigma[w] += sigma[u];
          preds[w].push_back(u);
        }
      }
    }
    while (!stack.empty()) {
      const Vertex w = stack.back();
      stack.pop_back();
      for (Vertex u : preds[w]) delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
      if (w != s) score[w] += delta[w];
    }
  }
  for (double& s : score) s *= 0.5;
  return table(g, std::move(score));
}

}  // namespace dlc
