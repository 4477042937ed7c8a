#pragma once

#include <optional>

#include "dlc/graph.hpp"
#include "dlc/ranking.hpp"

namespace dlc {

// Fractional drop of the Laplacian energy when each vertex is deleted,
// via (d_v^2 + d_v + 2 sum_{y~v} d_y) / E. Throws on an edgeless graph.
ScoreTable qi_laplacian_centrality(const Graph& g);
// Same for the normalized Laplacian energy; updates only the edges around
// the deleted vertex.
ScoreTable qi_normalized_laplacian_centrality(const Graph& g);

// Power iteration until the L1 change drops below 1e-10 (at most 1000
// sweeps). Mass at isolated vertices is spread uniformly.
ScoreTable pagerank(const Graph& g, double damping = 0.85);
// Solution of (I - a A) x = 1. The default attenuation is 1 / (2 lambda_max(A));
// an attenuation at or beyond 1 / lambda_max is rejected.
ScoreTable katz(const Graph& g, std::optional<double> attenuation = std::nullopt);
double adjacency_spectral_radius(const Graph& g);
// (n - 1) / sum of distances. Requires a connected graph.
ScoreTable closeness(const Graph& g);
// Brandes pair dependencies, unordered pairs, endpoints excluded.
ScoreTable betweenness(const Graph& g);

}  // namespace dlc
